#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/entanglement.hpp"

namespace dimerchain {

/// State of the constant-full-range pair model restricted to the maximal
/// multiplet S_o = m s_o, S_e = m s_e (m = n/2 sites per subchain), stored as
/// amplitudes over |M_o, M_e> with fixed parity of M_o + M_e + S_o + S_e.
struct CollectiveState {
    int n = 0;
    double spin_site_odd = 0.5, spin_site_even = 0.5;
    double S_o = 0, S_e = 0;       ///< collective spins
    int parity = +1;
    double energy = 0;
    Eigen::MatrixXd amplitudes;    ///< (2S_o+1) x (2S_e+1), rows M_o descending
};

/// Lowest eigenpair of H_p in each parity sector of the maximal multiplet.
struct CollectivePair {
    CollectiveState plus;
    CollectiveState minus;
    double gap() const { return minus.energy - plus.energy; }
    const CollectiveState& ground(double tol = 0.0) const {
        return (minus.energy < plus.energy - tol) ? minus : plus;
    }
};

/// Diagonalizes b^o S^z_o + b^e S^z_e - (2/n) sum_mu v_mu S^mu_o S^mu_e in the
/// two parity blocks.  The 2/n pair coupling matches the per-pair table entry
/// 2 v / n of build_collective_pair.  Throws past the dimension cap.
CollectivePair collective_ground_states(int n, double s_o, double s_e, AxisTriple v,
                                        double b_odd, double b_even,
                                        long dim_cap = 1'000'000);

/// Collective one- and two-site moments of a CollectiveState.
struct CollectiveMoments {
    double sz_o = 0, sz_e = 0;           ///< <S^z_sigma>
    double szsz_oo = 0, szsz_ee = 0, szsz_oe = 0;
    double sxsx_oo = 0, sxsx_ee = 0, sxsx_oe = 0;
    double sysy_oo = 0, sysy_ee = 0, sysy_oe = 0;
};
CollectiveMoments collective_moments(const CollectiveState& st);

/// Pairwise observables reconstructed from the permutation-symmetric moments
/// (spin-1/2 sites): within a subchain <s^mu_i s^mu_j> = (<(S^mu)^2> - m/4)/(m(m-1)),
/// across <s^mu_i s^mu_j> = <S^mu_o S^mu_e>/m^2, magnetizations <S^z_sigma>/m.
struct CollectiveObservables {
    double m_o = 0, m_e = 0;                    ///< site magnetizations
    PairCorrelatorSet oo, ee, oe;               ///< effective two-site correlators
    double c_oo = 0, c_ee = 0, c_oe = 0;        ///< Wootters concurrences
    PairAlignment align_oo{}, align_ee{}, align_oe{};
    double c_site_o = 0, c_site_e = 0;          ///< one-vs-rest concurrences
};
CollectiveObservables collective_pair_concurrences(const CollectiveState& st);

} // namespace dimerchain
