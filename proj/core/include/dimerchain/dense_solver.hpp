#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/spin_ops.hpp"

namespace dimerchain {

/// Default cap on the Hilbert dimension accepted by the brute-force routines.
inline constexpr long kDenseDimensionCap = 1L << 14;

/// Brute-force representation of a chain Hamiltonian in the product s^z
/// basis (site 1 most significant, descending m within a site).  Real
/// symmetric by construction; kept sparse, densified on demand.
struct DenseOperator {
    Eigen::SparseMatrix<double> matrix;
    ProductBasis basis;
    long dimension() const { return basis.total_dim; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// Hamiltonian of the spec; throws when the Hilbert dimension exceeds the cap.
DenseOperator dense_hamiltonian(const ChainSpec& spec, long dim_cap = kDenseDimensionCap);

/// Diagonal of the global S_z parity P_z = exp[i pi sum_i (s^z_i + s_i)],
/// entries are +-1 in the product basis.
Eigen::VectorXd parity_diagonal(const ChainSpec& spec, long dim_cap = kDenseDimensionCap);

/// Product state |Theta> = prod_i exp(i theta_i s^y_i) |down_i>.
Eigen::VectorXd product_state(const ChainSpec& spec, const std::vector<double>& angles);

/// || H|psi> - E|psi> || for E = <psi|H|psi>.
double eigen_residual(const DenseOperator& H, const Eigen::VectorXd& psi);

/// Lowest eigenpair per parity sector of the given operator.
struct SectorEigen {
    double energy_plus;                 ///< lowest energy, P_z = +1 sector
    double energy_minus;                ///< lowest energy, P_z = -1 sector
    Eigen::VectorXd state_plus;         ///< full-dimension eigenvector
    Eigen::VectorXd state_minus;
};

/// Dense diagonalization restricted to each parity sector (sector blocks are
/// extracted and solved with a symmetric eigensolver).
SectorEigen sector_ground_states_dense(const ChainSpec& spec, long dim_cap = kDenseDimensionCap);

/// Full sorted spectrum (small dimensions only).
Eigen::VectorXd full_spectrum(const DenseOperator& H);

/// Lowest eigenvalue by a Lanczos iteration with full reorthogonalization;
/// suited to dimensions where a full dense solve is wasteful.
double lowest_eigenvalue(const Eigen::SparseMatrix<double>& H, int max_iter = 300,
                         double tol = 1e-12, unsigned seed = 7);

/// Two-site reduced density matrix of |psi| over sites (i, j), row-major in
/// the (m_i, m_j) product basis ordered like the global basis.
Eigen::MatrixXd two_site_rdm(const Eigen::VectorXd& psi, const ProductBasis& basis,
                             int i, int j);

/// Single-site reduced density matrix.
Eigen::MatrixXd one_site_rdm(const Eigen::VectorXd& psi, const ProductBasis& basis, int i);

/// GS-style spin observables of a pure state, spin-1/2 sites only.
struct PairCorrelators {
    double mz_i = 0, mz_j = 0;   ///< <s^z_i>, <s^z_j>
    double zz = 0;               ///< <s^z_i s^z_j>
    double xx = 0;               ///< <s^x_i s^x_j>
    double yy = 0;               ///< <s^y_i s^y_j>
};
PairCorrelators pair_correlators_dense(const Eigen::VectorXd& psi, const ProductBasis& basis,
                                       int i, int j);

/// <s^z_i> for arbitrary spin.
double magnetization_dense(const Eigen::VectorXd& psi, const ProductBasis& basis, int i,
                           const ChainSpec& spec);

} // namespace dimerchain
