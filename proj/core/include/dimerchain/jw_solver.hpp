#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/entanglement.hpp"

namespace dimerchain {

/// Coefficients of the parity-projected fermionized dimer XY chain
///   H^p = sum_j [ b^{s_j}(c+_j c_j - 1/2)
///                 - eta^p_j (v_+^{s_j} c+_j c_{j+1} + v_-^{s_j} c+_j c+_{j+1} + h.c.) ]
/// with n+1 = 1, v^s_+- = (v^s_x +- v^s_y)/4, eta^-_j = 1 and eta^+_j = 1 - 2 delta_{jn}.
struct QuadraticForm {
    int n = 0;                 ///< sites; m = n/2 two-site cells
    int parity = +1;           ///< fermion-number parity sector p
    double b_odd = 0, b_even = 0;
    double v_plus_odd = 0, v_minus_odd = 0;
    double v_plus_even = 0, v_minus_even = 0;

    int m() const { return n / 2; }
    double omega() const;                  ///< 4 pi / n
    std::vector<double> momenta() const;   ///< k_+ = {1/2,...,m-1/2}, k_- = {0,...,m-1}
    int boundary_sign(int site_1based) const {
        return (parity > 0 && site_1based == n) ? -1 : +1;
    }
};

/// Checks the preconditions (spin-1/2, cyclic, nearest-neighbor dimer
/// couplings, v_z = 0, two-periodic field) and extracts the coefficients.
QuadraticForm fermionize(const ChainSpec& spec, int parity);
bool fermionizable(const ChainSpec& spec);

/// One 4x4 Bogoliubov-de Gennes block in the Nambu basis
/// (c_{k,o}, c_{k,e}, c+_{-k,o}, c+_{-k,e}), so that H^p = 1/2 sum_k A+_k H_k A_k:
///
///   H_k = [  b^o    -v_+^k    0      -v_-^k
///           -cv_+^k  b^e      cv_-^k  0
///            0       v_-^k   -b^o     v_+^k
///           -cv_-^k  0        cv_+^k -b^e   ]
///
/// with v_+^k = v_+^o + v_+^e e^{-i w k}, v_-^k = v_-^o - v_-^e e^{-i w k}
/// (cv = complex conjugate).  Eigenvalues come in pairs +-lambda^+, +-lambda^-.
///
/// Conventions pinning the eigenvector gauge:
///  * only canonical momenta (k <= -k mod m) are diagonalized numerically;
///  * the -k block is the complex conjugate of the k block (H_{-k} = conj H_k),
///    so its particles are conj(w), giving exact time-reversal pairing;
///  * hole columns are X w with X the particle-hole swap, never re-solved.
struct MomentumBlock {
    double k = 0;
    int index = 0;             ///< position in the sector momentum list
    int partner = 0;           ///< index of the -k block (mod m); self when self-conjugate
    Eigen::Matrix4cd H;
    double lambda_plus = 0;    ///< closed-form quasiparticle energies, lambda_+ >= lambda_-
    double lambda_minus = 0;
    /// Columns nu = (lambda_+, lambda_-): positive-eigenvalue eigenvectors,
    /// rows 0,1 = conj(U^nu_{k,sigma}), rows 2,3 = V^nu_{-k,sigma}.
    Eigen::Matrix<std::complex<double>, 4, 2> w_pos;
    /// Hole columns X w_pos (eigenvalue -lambda^nu), representing a+_{-k,nu}.
    Eigen::Matrix<std::complex<double>, 4, 2> w_neg;
    double snap_error = 0;     ///< |numerical - closed-form| eigenvalue mismatch

    /// Bogoliubov amplitude blocks U(sigma, nu), V(sigma, nu) of the transform
    /// c'+_{k,s} = sum_nu U^nu_{k,s} a+_{k,nu} + V^nu_{k,s} a_{-k,nu}.
    Eigen::Matrix2cd U() const { return w_pos.topRows<2>().conjugate(); }
    Eigen::Matrix2cd V() const { return w_neg.topRows<2>().conjugate(); }
};

std::vector<MomentumBlock> momentum_blocks(const QuadraticForm& qf);

/// Closed-form lambda_k^{+-} from
///   (lambda^+-)^2 = D +- sqrt(D^2 - |b^o b^e - (v_+^k + v_-^k)(cv_+^k - cv_-^k)|^2),
///   D = ((b^o)^2 + (b^e)^2)/2 + |v_+^k|^2 + |v_-^k|^2.
std::pair<double, double> closed_form_lambdas(const QuadraticForm& qf, double k);

/// Basic fermionic contractions f_ij = <c+_i c_j> - delta_ij/2, g_ij = <c+_i c+_j>
/// of one Gaussian eigenstate of the sector Hamiltonian.
struct ContractionTable {
    int n = 0;
    int parity = +1;
    double energy = 0;
    bool repaired = false;         ///< a quasiparticle flip restored the parity
    double min_lambda = 0;         ///< cheapest quasiparticle of the sector
    Eigen::MatrixXd f;             ///< real symmetric
    Eigen::MatrixXd g;             ///< real antisymmetric
};

/// Lowest parity-p eigenstate(s).  When the parity repair lands on a +-k
/// momentum pair (or on a degenerate self-conjugate doublet) the sector
/// minimum is two-fold degenerate; both time-reversal-symmetric members are
/// returned and observables are averaged over them, matching the subspace
/// average of a brute-force diagonalization.
struct SectorSolution {
    int parity = +1;
    double energy = 0;
    bool repaired = false;
    bool degenerate = false;
    double min_lambda = 0;
    std::vector<ContractionTable> tables;   ///< one, or two when degenerate

    /// Averaged correlators over the degenerate multiplet.
    double magnetization(int i) const;
    PairCorrelatorSet pair(int i, int j) const;
};

SectorSolution solve_sector(const QuadraticForm& qf);
SectorSolution solve_sector(const ChainSpec& spec, int parity);

/// Sector minimum without assembling contractions (transition bisection).
double sector_energy(const QuadraticForm& qf);

/// Fills all negative-energy quasiparticle modes, then repairs the vacuum
/// fermion parity (if it disagrees with the sector) by occupying the cheapest
/// quasiparticle.  The per-group vacuum parity is certified by an exact
/// diagonalization of the 2- or 4-mode many-body group Hamiltonian.  Returns
/// the first (representative) Gaussian state; use solve_sector where the
/// degenerate average matters.
ContractionTable sector_ground_state(const QuadraticForm& qf);
ContractionTable sector_ground_state(const ChainSpec& spec, int parity);

/// Spin correlators of sites i < j via Wick's theorem:
///   <s^z_i>        = f_ii
///   <s^z_i s^z_j>  = f_ii f_jj - f_ij^2 + g_ij^2
///   <s^x_i s^x_j>  = det(A^+)/4,  <s^y_i s^y_j> = det(A^-)/4,
/// where A^+ (A^-) is the d x d matrix, d = j-i, of string contractions
/// 2(f+g) with rows i..j-1 and columns i+1..j (rows i+1..j, columns i..j-1).
struct SpinCorrelators {
    double mz_i = 0, mz_j = 0;
    double zz = 0, xx = 0, yy = 0;
    double splus_sminus = 0;   ///< <s^+_i s^-_j> = (det A^+ + det A^-)/4
    double splus_splus = 0;    ///< <s^+_i s^+_j> = (det A^+ - det A^-)/4
};
SpinCorrelators spin_correlators(const ContractionTable& t, int i, int j);

/// Convenience: the correlator set consumed by the entanglement module.
PairCorrelatorSet pair_correlators(const ContractionTable& t, int i, int j);

} // namespace dimerchain
