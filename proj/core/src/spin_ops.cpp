#include "dimerchain/spin_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace dimerchain {

SpinMatrices::SpinMatrices(double s_) : s(s_) {
    double twice = 2.0 * s;
    if (s <= 0 || std::abs(twice - std::round(twice)) > 1e-12)
        throw std::invalid_argument("spin must be a positive half-integer");
    dim = static_cast<int>(std::lround(twice)) + 1;

    mz.resize(dim);
    for (int a = 0; a < dim; ++a) mz(a) = s - a;

    sz = mz.asDiagonal();
    sp = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 1; a < dim; ++a) {
        double m = mz(a); // s^+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
        sp(a - 1, a) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    sm = sp.transpose();
    sx = 0.5 * (sp + sm);
    isy = 0.5 * (sp - sm);
}

Eigen::MatrixXd SpinMatrices::rotation_y(double theta) const {
    return (theta * isy).exp();
}

Eigen::VectorXd SpinMatrices::tilted_down(double theta) const {
    return rotation_y(theta).col(dim - 1);
}

ProductBasis::ProductBasis(std::vector<int> site_dims) : dims(std::move(site_dims)) {
    if (dims.empty()) throw std::invalid_argument("product basis needs at least one site");
    strides.assign(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * dims[i + 1];
    total_dim = strides[0] * dims[0];
}

} // namespace dimerchain
