#include "dimerchain/pair_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerchain {

namespace {

// normalized lower eigenvector of [[d, -w], [-w, -d]]
std::array<double, 2> doublet_lower(double d, double w) {
    double r = std::hypot(d, w);
    if (r == 0.0) return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    // eigenvalue -r; components solve (d + r) a = w b
    double a = w;
    double b = d + r;
    double norm = std::hypot(a, b);
    if (norm < 1e-300) { // w = 0, d < 0: lower state is the first basis vector
        return {1.0, 0.0};
    }
    return {a / norm, b / norm};
}

} // namespace

PairSpectrum pair_spectrum(double vx, double vy, double vz, double b_odd, double b_even) {
    PairSpectrum ps;
    ps.vx = vx;
    ps.vy = vy;
    ps.vz = vz;
    ps.b_odd = b_odd;
    ps.b_even = b_even;
    ps.v_plus = 0.25 * (vx + vy);
    ps.v_minus = 0.25 * (vx - vy);
    ps.b_plus = 0.5 * (b_odd + b_even);
    ps.b_minus = 0.5 * (b_odd - b_even);

    double r_minus = std::hypot(ps.b_minus, ps.v_plus);
    double r_plus = std::hypot(ps.b_plus, ps.v_minus);
    ps.e_minus_lower = 0.25 * vz - r_minus;
    ps.e_minus_upper = 0.25 * vz + r_minus;
    ps.e_plus_lower = -0.25 * vz - r_plus;
    ps.e_plus_upper = -0.25 * vz + r_plus;
    return ps;
}

std::array<double, 2> PairSpectrum::amplitudes_lower(int nu) const {
    // doublet Hamiltonian: [[b_nu + c, -v_{-nu}], [-b_nu + c, ...]] with the
    // constant c dropped; lower eigenvector of [[b_nu, -v], [-v, -b_nu]]
    double b = (nu > 0) ? b_plus : b_minus;
    double v = (nu > 0) ? v_minus : v_plus;
    return doublet_lower(b, v);
}

std::array<double, 2> PairSpectrum::amplitudes_upper(int nu) const {
    auto low = amplitudes_lower(nu);
    return {-low[1], low[0]};
}

int PairSpectrum::ground_parity(double tol) const {
    double gap = e_minus_lower - e_plus_lower;
    if (std::abs(gap) <= tol) return 0;
    return gap < 0 ? -1 : +1;
}

double pair_concurrence(const PairSpectrum& ps, int parity) {
    double b = (parity > 0) ? ps.b_plus : ps.b_minus;
    double v = (parity > 0) ? ps.v_minus : ps.v_plus;
    double r = std::hypot(b, v);
    if (r == 0.0) return 1.0; // doublet fully degenerate, Bell combinations
    return std::abs(v) / r;
}

std::array<double, 2> pair_magnetization(const PairSpectrum& ps, int parity) {
    double b = (parity > 0) ? ps.b_plus : ps.b_minus;
    double v = (parity > 0) ? ps.v_minus : ps.v_plus;
    double r = std::hypot(b, v);
    double m = (r == 0.0) ? 0.0 : -0.5 * b / r;
    return {m, parity > 0 ? m : -m};
}

double pair_crossing(double vx, double vy, double vz, const FieldRay& ray, double t_max_hint) {
    auto gap = [&](double t) {
        auto [bo, be] = ray.fields(t);
        PairSpectrum ps = pair_spectrum(vx, vy, vz, bo, be);
        return ps.e_minus_lower - ps.e_plus_lower;
    };

    double scale = std::max({std::abs(vx), std::abs(vy), std::abs(vz), 1e-12});
    double t_hi = t_max_hint > 0 ? t_max_hint : 4.0 * scale;

    double g0 = gap(0.0);
    if (g0 == 0.0) return 0.0;
    // scan for a bracket, then bisect
    const int kScan = 4096;
    double prev_t = 0.0, prev_g = g0;
    for (int i = 1; i <= kScan; ++i) {
        double t = t_hi * i / kScan;
        double g = gap(t);
        if (g == 0.0) return t;
        if ((g < 0) != (prev_g < 0)) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double gm = gap(mid);
                if (gm == 0.0) return mid;
                if ((gm < 0) == (prev_g < 0))
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_g = g;
    }
    throw std::domain_error("no parity crossing on the given field ray");
}

std::array<double, 2> pair_projected_angles(const PairSpectrum& ps) {
    auto ap = ps.amplitudes_lower(+1); // (alpha^+_-, alpha^+_+)
    auto am = ps.amplitudes_lower(-1); // (alpha^-_-, alpha^-_+)
    double t1 = (ap[0] * am[0]) / (ap[1] * am[1]);
    double t2 = (ap[0] * am[1]) / (ap[1] * am[0]);
    if (t1 < 0 || t2 < 0)
        throw std::domain_error("projected-state reconstruction needs same-sign amplitudes");
    return {2.0 * std::atan(std::sqrt(t1)), 2.0 * std::atan(std::sqrt(t2))};
}

} // namespace dimerchain
