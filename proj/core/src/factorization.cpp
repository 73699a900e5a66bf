#include "dimerchain/factorization.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerchain {

namespace {

ChainSpec swap_xy(const ChainSpec& spec) {
    ChainSpec out = spec;
    CouplingTable t;
    for (int l : spec.couplings.separations())
        for (Sublattice s : {Sublattice::odd, Sublattice::even}) {
            AxisTriple v = spec.couplings.at(s, l);
            if (!v.is_zero()) t.set(s, l, {v.y, v.x, v.z});
        }
    out.couplings = t;
    return out;
}

double overlap_of(const ChainSpec& spec, const std::vector<double>& angles) {
    double ov = 1.0;
    for (int i = 1; i <= spec.n; ++i)
        ov *= std::pow(std::cos(angles[i - 1]), 2.0 * spec.spin_at(i));
    return ov;
}

// one-site stationarity RHS: sum_j s_j (v_x^{ij} cos t_i sin t_j - v_z^{ij} sin t_i cos t_j)
double field_rhs(const ChainSpec& spec, const std::vector<double>& angles, int i) {
    double rhs = 0.0;
    for (int j = 1; j <= spec.n; ++j) {
        if (j == i) continue;
        AxisTriple v = spec.coupling(i, j);
        if (v.is_zero()) continue;
        rhs += spec.spin_at(j) * (v.x * std::cos(angles[i - 1]) * std::sin(angles[j - 1]) -
                                  v.z * std::sin(angles[i - 1]) * std::cos(angles[j - 1]));
    }
    return rhs;
}

FieldProfile compress_profile(const ChainSpec& spec, const std::vector<double>& pervals) {
    bool uniform = true, alternating = true;
    for (int i = 1; i <= spec.n; ++i) {
        if (pervals[i - 1] != pervals[0]) uniform = false;
        double want = (i % 2 == 1) ? pervals[0] : pervals[1 % spec.n];
        if (pervals[i - 1] != want) alternating = false;
    }
    if (uniform) return FieldProfile::uniform(pervals[0]);
    if (alternating && spec.n >= 2) return FieldProfile::alternating(pervals[0], pervals[1]);
    return FieldProfile::per_site(pervals);
}

} // namespace

AnisotropyRatio anisotropy_ratio(const ChainSpec& spec, double rel_tol) {
    AnisotropyRatio out;
    SignMapping sm = map_sign_convention(spec);
    auto bonds = sm.spec.bonds();
    if (bonds.empty()) return out;

    bool first = true;
    double chi = 0.0;
    bool all_xx = true;
    for (auto [i, j] : bonds) {
        AxisTriple v = sm.spec.coupling(i, j);
        double den = v.x - v.z;
        double num = v.y - v.z;
        if (std::abs(num - den) > rel_tol * std::max({std::abs(num), std::abs(den), 1.0}))
            all_xx = false;
        if (den == 0.0) {
            if (num == 0.0) continue; // XXZ bond: consistent with chi = 1
            return out;               // infinite ratio: no uniform real solution
        }
        double c = num / den;
        if (first) {
            chi = c;
            first = false;
        } else if (std::abs(c - chi) > rel_tol * std::max(1.0, std::abs(chi))) {
            return out;
        }
    }
    if (first) { // only XXZ bonds
        out.chi = 1.0;
        out.valid = true;
        out.xx_case = true;
        return out;
    }
    if (all_xx || std::abs(chi - 1.0) <= rel_tol) {
        out.chi = 1.0;
        out.valid = true;
        out.xx_case = true;
        return out;
    }
    if (chi > 1.0) {
        out.rotated = true;
        chi = 1.0 / chi;
    }
    out.chi = chi;
    out.valid = true;
    return out;
}

SeparabilityResidual check_separable(const ChainSpec& spec, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != spec.n)
        throw std::invalid_argument("angles length must equal n");
    SeparabilityResidual r;
    for (auto [i, j] : spec.bonds()) {
        AxisTriple v = spec.coupling(i, j);
        double res = v.y - v.x * std::cos(angles[i - 1]) * std::cos(angles[j - 1]) -
                     v.z * std::sin(angles[i - 1]) * std::sin(angles[j - 1]);
        r.pair_condition = std::max(r.pair_condition, std::abs(res));
    }
    for (int i = 1; i <= spec.n; ++i) {
        double res = spec.field_at(i) * std::sin(angles[i - 1]) - field_rhs(spec, angles, i);
        r.field_condition = std::max(r.field_condition, std::abs(res));
    }
    return r;
}

FactorizedState uniform_solution(const ChainSpec& spec, bool negate_fields) {
    spec.validate();
    SignMapping sm = map_sign_convention(spec);
    AnisotropyRatio ar = anisotropy_ratio(spec);
    if (!ar.valid)
        throw std::domain_error("anisotropy ratio is not constant across coupled pairs");
    if (ar.chi < 0.0)
        throw std::domain_error("negative anisotropy ratio admits no real uniform solution");

    FactorizedState out;
    out.chi = ar.chi;
    out.rotated = ar.rotated;
    out.xx_case = ar.xx_case;
    out.sign_pattern = sm.sign;
    // the sign-mapped frame is internal; the patterned angles below satisfy
    // the separability conditions on the original couplings (xy-swapped when
    // the chi > 1 rotation applies)
    out.canonical_spec = ar.rotated ? swap_xy(spec) : spec;

    if (ar.xx_case) {
        // |0> is an exact eigenstate for any field; report theta = 0 and keep
        // the input profile
        out.angles.assign(spec.n, 0.0);
        out.fields = spec.field;
        out.canonical_spec.field = out.fields;
        out.overlap = 1.0;
        out.energy = separable_energy(out.canonical_spec, out.angles);
        return out;
    }

    double theta = std::acos(std::sqrt(ar.chi)); // branch (0, pi/2]
    out.angles.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) out.angles[i] = sm.sign[i] * theta;

    // b^i = sqrt(chi) sum_j (v_x^{ij} - v_z^{ij}) s_j in the sign-mapped frame
    ChainSpec mapped = ar.rotated ? swap_xy(sm.spec) : sm.spec;
    std::vector<double> b(spec.n, 0.0);
    double root = std::sqrt(ar.chi);
    for (int i = 1; i <= spec.n; ++i) {
        double acc = 0.0;
        for (int j = 1; j <= spec.n; ++j) {
            if (j == i) continue;
            AxisTriple v = mapped.coupling(i, j);
            acc += (v.x - v.z) * spec.spin_at(j);
        }
        b[i - 1] = (negate_fields ? -1.0 : 1.0) * root * acc;
    }
    out.fields = compress_profile(spec, b);
    out.canonical_spec.field = out.fields;

    // the mirrored solution: b^i -> -b^i with theta_i -> pi - theta_i (the
    // global pi rotation about x)
    if (negate_fields)
        for (auto& a : out.angles) a = M_PI - a;

    out.overlap = overlap_of(spec, out.angles);
    out.energy = separable_energy(out.canonical_spec, out.angles);
    return out;
}

FieldProfile border_corrections(const ChainSpec& spec, const FactorizedState& state) {
    if (spec.boundary != Boundary::open)
        throw std::domain_error("border corrections apply to open chains only");
    const ChainSpec& canon = state.canonical_spec;
    std::vector<double> b(spec.n, 0.0);
    for (int i = 1; i <= spec.n; ++i) {
        double si = std::sin(state.angles[i - 1]);
        if (std::abs(si) < 1e-14) {
            b[i - 1] = canon.field_at(i); // theta = 0: the field is unconstrained
            continue;
        }
        b[i - 1] = field_rhs(canon, state.angles, i) / si;
    }
    return compress_profile(spec, b);
}

FactorizedState alternating_solution(const ChainSpec& spec, GivenField which, double value) {
    spec.validate();
    SignMapping sm = map_sign_convention(spec);

    // XY couplings only, common ratio chi = v_y / v_x on every bond
    double chi = 0.0;
    bool first = true;
    for (int l : sm.spec.couplings.separations()) {
        if (l % 2 == 0) {
            AxisTriple vo = sm.spec.couplings.at(Sublattice::odd, l);
            AxisTriple ve = sm.spec.couplings.at(Sublattice::even, l);
            if (!vo.is_zero() || !ve.is_zero())
                throw std::domain_error(
                    "alternating solution needs two subchains with no internal couplings");
            continue;
        }
        for (Sublattice s : {Sublattice::odd, Sublattice::even}) {
            AxisTriple v = sm.spec.couplings.at(s, l);
            if (v.is_zero()) continue;
            if (v.z != 0.0)
                throw std::domain_error("alternating solution requires XY couplings (v_z = 0)");
            double c = v.y / v.x;
            if (first) {
                chi = c;
                first = false;
            } else if (std::abs(c - chi) > 1e-10 * std::max(1.0, std::abs(chi))) {
                throw std::domain_error("anisotropy ratio is not constant across coupled pairs");
            }
        }
    }
    if (first) throw std::domain_error("chain has no transverse couplings");

    FactorizedState out;
    out.rotated = false;
    ChainSpec mapped = sm.spec;
    if (chi > 1.0) {
        out.rotated = true;
        chi = 1.0 / chi;
        mapped = swap_xy(sm.spec);
    }
    if (chi < 0.0)
        throw std::domain_error("negative anisotropy ratio admits no real alternating solution");

    // v^{oe} = sum over odd separations of v_x, accumulated per site so both
    // the +l and -l neighbors count once; an interior site sees the full set
    double voe = 0.0;
    {
        int ref = (spec.boundary == Boundary::open && spec.n >= 4) ? 3 : 1;
        for (int j = 1; j <= spec.n; ++j) {
            if (j == ref) continue;
            voe += mapped.coupling(ref, j).x * spec.spin_at(j);
        }
        voe /= spec.spin_even; // reference site is odd
    }

    double so = spec.spin_odd, se = spec.spin_even;
    double product = chi * voe * voe * so * se; // b^o b^e on the separability curve
    if (value == 0.0 && chi != 0.0)
        throw std::domain_error("a zero given field lies off the separability curve");

    double bo, be;
    if (which == GivenField::odd) {
        bo = value;
        be = (chi == 0.0) ? 0.0 : product / bo;
    } else {
        be = value;
        bo = (chi == 0.0) ? 0.0 : product / be;
    }

    auto angle_of = [&](double b_sigma, double s_bar) {
        double btil = b_sigma / (voe * s_bar);
        double c2 = (chi * chi + btil * btil) / (1.0 + btil * btil);
        c2 = std::min(1.0, std::max(0.0, c2));
        return std::acos(std::sqrt(c2));
    };
    double theta_o = angle_of(bo, se);
    double theta_e = angle_of(be, so);
    // cos(theta_o) cos(theta_e) = chi requires matching signs of the product;
    // with chi >= 0 both angles take the principal branch
    if (bo < 0 || be < 0)
        throw std::domain_error("alternating solution expects nonnegative fields");

    out.chi = chi;
    out.sign_pattern = sm.sign;
    out.angles.resize(spec.n);
    for (int i = 1; i <= spec.n; ++i)
        out.angles[i - 1] =
            sm.sign[i - 1] * (site_sublattice(i) == Sublattice::odd ? theta_o : theta_e);
    out.fields = FieldProfile::alternating(bo, be);
    out.canonical_spec = out.rotated ? swap_xy(spec) : spec;
    out.canonical_spec.field = out.fields;
    if (spec.boundary == Boundary::open)
        out.canonical_spec.field = border_corrections(spec, out);
    out.overlap = overlap_of(spec, out.angles);
    out.energy = separable_energy(out.canonical_spec, out.angles);
    out.fields = out.canonical_spec.field;
    return out;
}

double separable_energy(const ChainSpec& spec, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != spec.n)
        throw std::invalid_argument("angles length must equal n");
    double e = 0.0;
    for (int i = 1; i <= spec.n; ++i) {
        double si = spec.spin_at(i);
        double inner = spec.field_at(i) * std::cos(angles[i - 1]);
        for (int j = 1; j <= spec.n; ++j) {
            if (j == i) continue;
            AxisTriple v = spec.coupling(i, j);
            if (v.is_zero()) continue;
            inner += 0.5 * spec.spin_at(j) *
                     (v.x * std::sin(angles[i - 1]) * std::sin(angles[j - 1]) +
                      v.z * std::cos(angles[i - 1]) * std::cos(angles[j - 1]));
        }
        e -= si * inner;
    }
    return e;
}

RpaMatrix rpa_certificate(const ChainSpec& spec, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != spec.n)
        throw std::invalid_argument("angles length must equal n");
    RpaMatrix out;
    out.A = Eigen::MatrixXd::Zero(spec.n, spec.n);
    out.Bminus = Eigen::MatrixXd::Zero(spec.n, spec.n);
    out.lambda = Eigen::VectorXd::Zero(spec.n);

    for (int i = 1; i <= spec.n; ++i) {
        // local mean field: (b^i + sum_j v_z^{ij} s_j cos t_j) s^z
        //                   - (sum_j v_x^{ij} s_j sin t_j) s^x
        double hz = spec.field_at(i);
        double hx = 0.0;
        for (int j = 1; j <= spec.n; ++j) {
            if (j == i) continue;
            AxisTriple v = spec.coupling(i, j);
            hz += v.z * spec.spin_at(j) * std::cos(angles[j - 1]);
            hx -= v.x * spec.spin_at(j) * std::sin(angles[j - 1]);
        }
        out.lambda(i - 1) = std::hypot(hz, hx);
        out.A(i - 1, i - 1) = out.lambda(i - 1);
    }

    for (auto [i, j] : spec.bonds()) {
        AxisTriple v = spec.coupling(i, j);
        double root = std::sqrt(spec.spin_at(i) * spec.spin_at(j));
        double common = v.x * std::cos(angles[i - 1]) * std::cos(angles[j - 1]) +
                        v.z * std::sin(angles[i - 1]) * std::sin(angles[j - 1]);
        double bp = -0.5 * root * (common + v.y);
        double bm = -0.5 * root * (common - v.y);
        out.A(i - 1, j - 1) += bp;
        out.A(j - 1, i - 1) += bp;
        out.Bminus(i - 1, j - 1) = bm;
        out.Bminus(j - 1, i - 1) = bm;
        out.max_b_minus = std::max(out.max_b_minus, std::abs(bm));
    }
    return out;
}

RpaMatrix rpa_certificate(const ChainSpec&, const FactorizedState& state) {
    // evaluated on the frame where the state is exact (canonical couplings)
    return rpa_certificate(state.canonical_spec, state.angles);
}

} // namespace dimerchain
