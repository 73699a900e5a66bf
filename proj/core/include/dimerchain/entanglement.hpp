#pragma once

#include <Eigen/Dense>

namespace dimerchain {

/// z magnetizations and diagonal spin-spin correlators of a two-site
/// spin-1/2 subsystem in a definite-parity state.
struct PairCorrelatorSet {
    double mz_i = 0, mz_j = 0;
    double zz = 0, xx = 0, yy = 0;
};

enum class PairAlignment { separable, parallel, antiparallel };

/// Two-spin reduced state in the parity-block form plus derived measures.
struct PairState {
    Eigen::Matrix4d rho;          ///< basis uu, ud, du, dd
    double concurrence = 0.0;
    double c_parallel = 0.0;      ///< the C^+ branch (can be negative)
    double c_antiparallel = 0.0;  ///< the C^- branch
    PairAlignment alignment = PairAlignment::separable;
    double formation_entropy = 0.0;
};

/// rho_ij = 1/4 + <s^z_i> s^z_i + <s^z_j> s^z_j + 4 sum_mu <s^mu s^mu> s^mu s^mu.
/// Throws when the reconstructed matrix has an eigenvalue below -1e-9 (a
/// corrupted correlator set upstream).
PairState pair_rdm(const PairCorrelatorSet& c);

/// Wootters concurrence of a parity-block two-qubit state from the explicit
/// branch formulas; alignment is parallel when C^+ > 0, antiparallel when
/// C^- > 0 (at most one branch can be positive).
void wootters(PairState& state);

/// Concurrence through the R-matrix eigenvalue route 2 lambda_max - tr R,
/// R^2 similar to (4 s^y s^y) rho (4 s^y s^y) rho*; kept as a test oracle.
double wootters_eigenvalue_route(const Eigen::Matrix4d& rho);

/// Entanglement of formation from a concurrence.
double formation_entropy(double concurrence);

/// One-vs-rest measures of a spin-1/2 site in a definite-parity state:
/// C_i = sqrt(1 - 4 <s^z_i>^2) and its entropy.
struct SingleSite {
    double concurrence = 0.0;
    double entropy = 0.0;
};
SingleSite single_site(double mz);

} // namespace dimerchain
