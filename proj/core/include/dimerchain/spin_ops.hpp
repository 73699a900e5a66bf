#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dimerchain {

/// Matrices of a single spin s in the basis ordered by descending s^z,
/// so index 0 is m = +s and index 2s is m = -s (the local "down" state).
struct SpinMatrices {
    explicit SpinMatrices(double s);

    double s;
    int dim;
    Eigen::VectorXd mz;      ///< m value per basis index
    Eigen::MatrixXd sz;      ///< diagonal
    Eigen::MatrixXd sp;      ///< raising operator s^+
    Eigen::MatrixXd sm;      ///< lowering operator s^-
    Eigen::MatrixXd sx;
    Eigen::MatrixXd isy;     ///< i s^y = (s^+ - s^-)/2, real antisymmetric

    /// exp(theta * i s^y), the real rotation taking |m=-s> to the tilted state.
    Eigen::MatrixXd rotation_y(double theta) const;

    /// Local state exp(i theta s^y) |m=-s>.
    Eigen::VectorXd tilted_down(double theta) const;
};

/// Mixed-radix index bookkeeping for a product basis; site 1 is the most
/// significant factor, so the fully "down" product state is the last index.
struct ProductBasis {
    explicit ProductBasis(std::vector<int> site_dims);

    std::vector<int> dims;
    std::vector<long> strides;
    long total_dim;

    int digit(long index, int site_1based) const {
        return static_cast<int>((index / strides[site_1based - 1]) % dims[site_1based - 1]);
    }
    long with_digit(long index, int site_1based, int digit_value) const {
        long s = strides[site_1based - 1];
        int old = digit(index, site_1based);
        return index + (digit_value - old) * s;
    }
};

} // namespace dimerchain
