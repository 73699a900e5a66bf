#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dimerchain/chain_spec.hpp"

namespace dimerchain {

/// Common anisotropy ratio chi = (v_y - v_z)/(v_x - v_z) over all coupled
/// pairs, after normalizing the coupling signs and, when chi > 1, swapping
/// the x and y couplings (a global pi/2 rotation about z maps chi -> 1/chi).
struct AnisotropyRatio {
    double chi = 0.0;
    bool valid = false;       ///< constant across every coupled pair
    bool rotated = false;     ///< x and y couplings were swapped
    bool xx_case = false;     ///< chi = 1 (XX/XXZ): |0> is exact for any field
};

AnisotropyRatio anisotropy_ratio(const ChainSpec& spec, double rel_tol = 1e-10);

/// An exactly separable eigenstate |Theta> = prod_i exp(i theta_i s^y_i)|0_i>
/// together with the fields that make it exact.
struct FactorizedState {
    std::vector<double> angles;     ///< theta_i, radians
    FieldProfile fields;            ///< the b^i making |Theta> exact
    double energy = 0.0;            ///< E_Theta
    double overlap = 0.0;           ///< <-Theta|Theta> = prod_i cos^{2 s_i} theta_i
    std::vector<int> sign_pattern;  ///< eps_i from the sign mapping
    double chi = 0.0;               ///< normalized anisotropy (cos^2 theta uniform case)
    bool rotated = false;           ///< solution lives in the pi/2-rotated frame
    bool xx_case = false;
    /// Spec on which (angles, fields) satisfy the separability conditions:
    /// the sign-mapped and possibly xy-swapped chain, with `fields` installed.
    ChainSpec canonical_spec;
};

/// Residuals of the two separability conditions at (spec.fields, angles):
/// pair condition v_y^{ij} = v_x^{ij} c_i c_j + v_z^{ij} s_i s_j and the
/// one-site stationarity condition; both vanish iff |Theta> is exact.
struct SeparabilityResidual {
    double pair_condition = 0.0;
    double field_condition = 0.0;
    double max() const { return std::max(pair_condition, field_condition); }
};
SeparabilityResidual check_separable(const ChainSpec& spec, const std::vector<double>& angles);

/// Uniform separable eigenstate theta_i = eps_i * arccos(sqrt(chi)) with the
/// fields b^i = sqrt(chi) sum_j (v_x^{ij} - v_z^{ij}) s_j.
/// Set negate_fields to flip the overall field sign (the mirrored solution).
FactorizedState uniform_solution(const ChainSpec& spec, bool negate_fields = false);

/// Per-site field profile making the uniform state exact on an open chain:
/// bulk values with halved border fields; recomputed from the one-site
/// condition so longer-range couplings are covered as well.
FieldProfile border_corrections(const ChainSpec& spec, const FactorizedState& state);

/// Which field is prescribed when walking the alternating separability curve.
enum class GivenField { odd, even };

/// Alternating separable eigenstate of an XY chain (v_z = 0): the free field
/// follows from b^o b^e = chi (v^{oe})^2 s_o s_e and the angles from
/// cos^2 theta_s = (chi^2 + btilde_s^2)/(1 + btilde_s^2).
FactorizedState alternating_solution(const ChainSpec& spec, GivenField which, double value);

/// E_Theta of an arbitrary product state of tilted spins.
double separable_energy(const ChainSpec& spec, const std::vector<double>& angles);

/// Zero-temperature RPA matrix about the mean-field product state; B^- = 0
/// certifies that the state is an exact eigenstate.
struct RpaMatrix {
    Eigen::MatrixXd A;        ///< lambda_i delta_ij + B^+_ij
    Eigen::MatrixXd Bminus;   ///< B^-_ij
    Eigen::VectorXd lambda;   ///< local mean-field gaps
    double max_b_minus = 0.0;
};
RpaMatrix rpa_certificate(const ChainSpec& spec, const FactorizedState& state);
RpaMatrix rpa_certificate(const ChainSpec& spec, const std::vector<double>& angles);

} // namespace dimerchain
