#pragma once

#include <vector>

namespace dimerchain {

/// Closed-form entanglement side limits in the definite-parity combinations
/// |Theta+-> of a separable eigenstate and its parity partner.
///
/// The pair concurrences depend only on the per-sublattice cos^2 angles
/// (chi_o, chi_e), the spins and the chain length; in particular they are
/// independent of coupling magnitudes, range and separation.
struct SideLimits {
    double c_oo_minus = 0, c_oo_plus = 0;
    double c_ee_minus = 0, c_ee_plus = 0;
    double c_oe_minus = 0, c_oe_plus = 0;
    double c_o_minus = 0, c_o_plus = 0;   ///< one-vs-rest concurrences
    double c_e_minus = 0, c_e_plus = 0;
    double c0_oo = 0, c0_ee = 0, c0_oe = 0;   ///< equal-mixture attenuated values
    double c0_o = 0, c0_e = 0;
    double dm_o = 0, dm_e = 0;            ///< magnetization steps per sublattice
    double chi_o = 0, chi_e = 0;          ///< inputs recorded
    double big_s_o = 0, big_s_e = 0;      ///< S_sigma = n s_sigma / 2
};

/// C^+-_{ij} between two specific spins from arbitrary per-site angles,
/// sqrt((1-cos^{4 s_i})(1-cos^{4 s_j})) <complementary overlap> / (1 +- <overlap>),
/// parity = +1 or -1.  Sign patterns do not matter (even in every angle).
double pair_limit(const std::vector<double>& angles, const std::vector<double>& spins,
                  int i, int j, int parity);

/// One-vs-rest concurrence C^+-_i of site i.
double one_vs_rest_limit(const std::vector<double>& angles, const std::vector<double>& spins,
                         int i, int parity);

/// Binary entropy companion of a spin-1/2 concurrence (used when s_i = 1/2).
double entropy_from_concurrence(double c);

/// Uniform separable state: chi_o = chi_e = chi, C^+-_{ss} =
/// (1-chi^{2s})chi^{S-2s}/(1 +- chi^S); the chi -> 1 degeneracy is evaluated
/// through the documented 2 s_sigma / S limit once 1-chi^S < 1e-10.
SideLimits uniform_limits(int n, double s_o, double s_e, double chi);

/// Alternating separable state with per-sublattice chi_s = cos^2 theta_s.
SideLimits alternating_limits(int n, double s_o, double s_e, double chi_o, double chi_e);

/// Attenuated concurrence of the equal mixture of |Theta+> and |Theta->:
/// C^0 = C^- <ov> / (1 + <ov>).
double mixture_limit(double c_minus, double overlap);

/// Magnetization step Delta M_i = sin^2 theta_i <comp_i> / (1 - <ov>^2)
/// across the factorizing field.
double magnetization_step(const std::vector<double>& angles, const std::vector<double>& spins,
                          int i);

} // namespace dimerchain
