#pragma once

#include <array>
#include <optional>

#include "dimerchain/field_ray.hpp"

namespace dimerchain {

/// Closed-form solution of the two-site spin-1/2 problem
///   H = b^o s^z_1 + b^e s^z_2 - (v_x s^x s^x + v_y s^y s^y + v_z s^z s^z).
///
/// Negative-parity doublet (span of ud, du):
///   E^-_pm = v_z/4 -+ sqrt(b_-^2 + v_+^2)
/// positive-parity doublet (span of uu, dd):
///   E^+_pm = -v_z/4 -+ sqrt(b_+^2 + v_-^2)
/// with v_pm = (v_x +- v_y)/4 and b_pm = (b^o +- b^e)/2.
struct PairSpectrum {
    double vx, vy, vz, b_odd, b_even;
    double v_plus, v_minus;      ///< v_+ , v_-
    double b_plus, b_minus;      ///< b_+ , b_-

    double e_minus_lower, e_minus_upper;   ///< E^-_+ , E^-_-
    double e_plus_lower, e_plus_upper;     ///< E^+_+ , E^+_-

    /// Amplitudes (alpha^nu_-, alpha^nu_+) of the lower state of parity nu on
    /// the ordered doublet basis: (ud, du) for nu=-1, (uu, dd) for nu=+1.
    std::array<double, 2> amplitudes_lower(int nu) const;
    /// Same for the upper state.
    std::array<double, 2> amplitudes_upper(int nu) const;

    double ground_energy() const { return std::min(e_minus_lower, e_plus_lower); }
    /// -1, +1 or 0 when the two lower levels are degenerate within tol.
    int ground_parity(double tol = 1e-12) const;
};

PairSpectrum pair_spectrum(double vx, double vy, double vz, double b_odd, double b_even);

/// Concurrence of the parity-nu eigenstates: C^nu_12 = |v_{-nu}| / sqrt(b_nu^2 + v_{-nu}^2)
/// (the same for the lower and upper state of the doublet).
double pair_concurrence(const PairSpectrum& ps, int parity);

/// Site magnetizations (<s^z_1>, <s^z_2>) in the lower state of parity nu.
std::array<double, 2> pair_magnetization(const PairSpectrum& ps, int parity);

/// Field where E^-_+ = E^+_+ along the ray; for v_z = 0 the crossing obeys
/// b^o b^e = chi v_x^2 / 4.  Throws when the ray misses the crossing.
double pair_crossing(double vx, double vy, double vz, const FieldRay& ray,
                     double t_max_hint = 0.0);

/// Angles (theta_1, theta_2) of the projected product states at the crossing,
/// from tan^2(theta/2) ratios of the doublet amplitudes.
std::array<double, 2> pair_projected_angles(const PairSpectrum& ps);

} // namespace dimerchain
