#include "dimerchain/analytic_limits.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dimerchain {

namespace {

constexpr double kDegenerateWindow = 1e-10;

// chi^e with the 0^0 = 1 convention; e >= 0 expected
double powz(double chi, double e) {
    if (e == 0.0) return 1.0;
    if (chi == 0.0) return 0.0;
    return std::exp(e * std::log(chi));
}

// 1 - chi^e, stable near chi = 1
double one_minus_pow(double chi, double e) {
    if (e == 0.0) return 0.0;
    if (chi == 0.0) return 1.0;
    return -std::expm1(e * std::log(chi));
}

void check_sites(const std::vector<double>& angles, const std::vector<double>& spins) {
    if (angles.size() != spins.size() || angles.empty())
        throw std::invalid_argument("angles and spins must have equal nonzero length");
}

// prod_k cos^{2 s_k} theta_k over sites not in {skip_a, skip_b} (1-based)
double partial_overlap(const std::vector<double>& angles, const std::vector<double>& spins,
                       int skip_a = -1, int skip_b = -1) {
    double ov = 1.0;
    for (size_t k = 0; k < angles.size(); ++k) {
        int idx = static_cast<int>(k) + 1;
        if (idx == skip_a || idx == skip_b) continue;
        ov *= std::pow(std::cos(angles[k]), 2.0 * spins[k]);
    }
    return ov;
}

// 1 - prod_k cos^{4 s_k} theta_k, stable when every angle is tiny
double one_minus_square_overlap(const std::vector<double>& angles,
                                const std::vector<double>& spins, int skip_a = -1,
                                int skip_b = -1) {
    double acc = 0.0;
    for (size_t k = 0; k < angles.size(); ++k) {
        int idx = static_cast<int>(k) + 1;
        if (idx == skip_a || idx == skip_b) continue;
        double c = std::abs(std::cos(angles[k]));
        if (c == 0.0) return 1.0;
        acc += 4.0 * spins[k] * std::log(c);
    }
    return -std::expm1(acc);
}

} // namespace

double pair_limit(const std::vector<double>& angles, const std::vector<double>& spins,
                  int i, int j, int parity) {
    check_sites(angles, spins);
    if (i == j) throw std::invalid_argument("pair limit needs two distinct sites");

    auto one_minus_site = [&](int site) {
        double c = std::abs(std::cos(angles[site - 1]));
        if (c == 0.0) return 1.0;
        return -std::expm1(4.0 * spins[site - 1] * std::log(c));
    };
    double num = std::sqrt(one_minus_site(i) * one_minus_site(j));
    double comp = partial_overlap(angles, spins, i, j);
    double ov = partial_overlap(angles, spins);

    if (parity > 0) return std::abs(num * comp) / (1.0 + ov);

    double den = (ov < 0) ? 1.0 - ov : one_minus_square_overlap(angles, spins) /
                                           (1.0 + std::abs(ov)); // 1-ov = (1-ov^2)/(1+ov)
    if (den < kDegenerateWindow) {
        // overlap -> 1 means every angle is tiny: numerator and denominator
        // are both quadratic in the angles
        double quad = 0.0;
        for (size_t k = 0; k < spins.size(); ++k) quad += spins[k] * angles[k] * angles[k];
        if (quad == 0.0) return 0.0; // exact product state
        double s_i = spins[i - 1], s_j = spins[j - 1];
        return 2.0 * std::sqrt(s_i * s_j) * std::abs(angles[i - 1] * angles[j - 1]) / quad;
    }
    return std::abs(num * comp) / den;
}

double one_vs_rest_limit(const std::vector<double>& angles, const std::vector<double>& spins,
                         int i, int parity) {
    check_sites(angles, spins);
    auto one_minus_site = [&] {
        double c = std::abs(std::cos(angles[i - 1]));
        if (c == 0.0) return 1.0;
        return -std::expm1(4.0 * spins[i - 1] * std::log(c));
    };
    double one_minus_rest = one_minus_square_overlap(angles, spins, i);
    double num = std::sqrt(one_minus_site() * one_minus_rest);
    double ov = partial_overlap(angles, spins);

    if (parity > 0) return num / (1.0 + ov);

    double den = (ov < 0) ? 1.0 - ov
                          : one_minus_square_overlap(angles, spins) / (1.0 + std::abs(ov));
    if (den < kDegenerateWindow) {
        double quad = 0.0;
        for (size_t k = 0; k < spins.size(); ++k) quad += spins[k] * angles[k] * angles[k];
        if (quad == 0.0) return 0.0;
        double s_i = spins[i - 1];
        double ti = angles[i - 1];
        double rest = quad - s_i * ti * ti;
        return 2.0 * std::sqrt(s_i * ti * ti * rest) / quad;
    }
    return num / den;
}

double entropy_from_concurrence(double c) {
    if (c < 0.0 || c > 1.0 + 1e-12) throw std::invalid_argument("concurrence outside [0,1]");
    c = std::min(c, 1.0);
    double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    double p = 0.5 * (1.0 + root);
    double q = 0.5 * (1.0 - root);
    double s = 0.0;
    if (p > 0) s -= p * std::log2(p);
    if (q > 0) s -= q * std::log2(q);
    return s;
}

SideLimits alternating_limits(int n, double s_o, double s_e, double chi_o, double chi_e) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even");
    if (chi_o < 0 || chi_o > 1 || chi_e < 0 || chi_e > 1)
        throw std::invalid_argument("chi_sigma = cos^2 theta_sigma must lie in [0,1]");

    SideLimits out;
    out.chi_o = chi_o;
    out.chi_e = chi_e;
    double S_o = 0.5 * n * s_o;
    double S_e = 0.5 * n * s_e;
    out.big_s_o = S_o;
    out.big_s_e = S_e;
    double S_tot = S_o + S_e;

    double ov = powz(chi_o, S_o) * powz(chi_e, S_e);
    // 1 - ov through the stable complements: 1 - a b = (1-a) + a (1-b)
    double den_minus =
        one_minus_pow(chi_o, S_o) + powz(chi_o, S_o) * one_minus_pow(chi_e, S_e);
    double den_plus = 1.0 + ov;
    bool deg_minus = den_minus < kDegenerateWindow;

    // C^-_{ss}: (1 - chi_s^{2 s_s}) chi_s^{S_s - 2 s_s} chi_b^{S_b} / (1 - ov),
    // with the chi -> 1 limit 2 s_s / S; same-sublattice pairs need n >= 4
    auto pair_cc = [&](double chi_s, double s_s, double S_s, double chi_b, double S_b,
                       double den, bool degenerate) {
        if (n < 4) return 0.0;
        if (degenerate) return 2.0 * s_s / S_tot;
        return one_minus_pow(chi_s, 2.0 * s_s) * powz(chi_s, S_s - 2.0 * s_s) *
               powz(chi_b, S_b) / den;
    };
    out.c_oo_minus = pair_cc(chi_o, s_o, S_o, chi_e, S_e, den_minus, deg_minus);
    out.c_ee_minus = pair_cc(chi_e, s_e, S_e, chi_o, S_o, den_minus, deg_minus);
    out.c_oo_plus = pair_cc(chi_o, s_o, S_o, chi_e, S_e, den_plus, false);
    out.c_ee_plus = pair_cc(chi_e, s_e, S_e, chi_o, S_o, den_plus, false);

    // odd-even concurrence evaluated with combined exponents (safe at n = 2,
    // where the geometric-mean identity is formal only)
    auto cross_cc = [&](double den, bool degenerate) {
        if (degenerate) return 2.0 * std::sqrt(s_o * s_e) / S_tot;
        double num = std::sqrt(one_minus_pow(chi_o, 2.0 * s_o) * one_minus_pow(chi_e, 2.0 * s_e));
        return num * powz(chi_o, S_o - s_o) * powz(chi_e, S_e - s_e) / den;
    };
    out.c_oe_minus = cross_cc(den_minus, deg_minus);
    out.c_oe_plus = cross_cc(den_plus, false);

    // one-vs-rest: C_s = sqrt((1 - chi_s^{2 s_s})(1 - chi_s^{2(S_s - s_s)} chi_b^{2 S_b})) / den
    auto site_c = [&](double chi_s, double s_s, double S_s, double chi_b, double S_b,
                      double den, bool degenerate) {
        if (degenerate) return 2.0 * std::sqrt(s_s * (S_tot - s_s)) / S_tot;
        double one_minus_rest = one_minus_pow(chi_s, 2.0 * (S_s - s_s)) +
                                powz(chi_s, 2.0 * (S_s - s_s)) * one_minus_pow(chi_b, 2.0 * S_b);
        return std::sqrt(one_minus_pow(chi_s, 2.0 * s_s) * one_minus_rest) / den;
    };
    out.c_o_minus = site_c(chi_o, s_o, S_o, chi_e, S_e, den_minus, deg_minus);
    out.c_e_minus = site_c(chi_e, s_e, S_e, chi_o, S_o, den_minus, deg_minus);
    out.c_o_plus = site_c(chi_o, s_o, S_o, chi_e, S_e, den_plus, false);
    out.c_e_plus = site_c(chi_e, s_e, S_e, chi_o, S_o, den_plus, false);

    if (!deg_minus && ov < 1.0) {
        out.c0_oo = mixture_limit(out.c_oo_minus, ov);
        out.c0_ee = mixture_limit(out.c_ee_minus, ov);
        out.c0_oe = mixture_limit(out.c_oe_minus, ov);
        out.c0_o = mixture_limit(out.c_o_minus, ov);
        out.c0_e = mixture_limit(out.c_e_minus, ov);

        // Delta M_s = sin^2 theta_s chi_s^{S_s - s_s} chi_b^{S_b} / (1 - ov^2)
        double den_sq = den_minus * den_plus;
        out.dm_o = (1.0 - chi_o) * powz(chi_o, S_o - s_o) * powz(chi_e, S_e) / den_sq;
        out.dm_e = (1.0 - chi_e) * powz(chi_e, S_e - s_e) * powz(chi_o, S_o) / den_sq;
    }
    return out;
}

SideLimits uniform_limits(int n, double s_o, double s_e, double chi) {
    return alternating_limits(n, s_o, s_e, chi, chi);
}

double mixture_limit(double c_minus, double overlap) {
    if (overlap <= -1.0 || overlap >= 1.0)
        throw std::invalid_argument("mixture limit needs |overlap| < 1");
    return c_minus * overlap / (1.0 + overlap);
}

double magnetization_step(const std::vector<double>& angles, const std::vector<double>& spins,
                          int i) {
    check_sites(angles, spins);
    double ov = partial_overlap(angles, spins);
    if (std::abs(ov) >= 1.0 - 1e-15)
        throw std::domain_error("magnetization step undefined at |overlap| = 1");
    double comp = partial_overlap(angles, spins, i);
    double s = std::sin(angles[i - 1]);
    return s * s * comp / (1.0 - ov * ov);
}

} // namespace dimerchain
