#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimerchain/analytic_limits.hpp"
#include "dimerchain/factorization.hpp"
#include "dimerchain/pair_solver.hpp"
#include "oracle_utils.hpp"

using namespace dimerchain;

TEST_CASE("uniform side limits: frozen values") {
    SideLimits l20 = uniform_limits(20, 0.5, 0.5, 0.9);
    CHECK(l20.c_oo_minus == doctest::Approx(0.059482214754181056).epsilon(1e-13));
    CHECK(l20.c_oo_plus == doctest::Approx(0.028725934772952554).epsilon(1e-13));
    CHECK(l20.c_ee_minus == doctest::Approx(l20.c_oo_minus).epsilon(1e-14));
    CHECK(l20.c_oe_minus == doctest::Approx(l20.c_oo_minus).epsilon(1e-14));

    SideLimits l6 = uniform_limits(6, 0.5, 0.5, 0.9);
    CHECK(l6.c_oo_minus == doctest::Approx(0.29889298892988936).epsilon(1e-13));
    CHECK(l6.c_oo_plus == doctest::Approx(0.0468478889531521).epsilon(1e-13));
}

TEST_CASE("mixture values: the red dot at the factorizing field") {
    SideLimits l20 = uniform_limits(20, 0.5, 0.5, 0.9);
    CHECK(l20.c0_oo == doctest::Approx(0.015378139990614253).epsilon(1e-13));
    CHECK(l20.c0_oo <= l20.c_oo_minus);
    CHECK(mixture_limit(0.5, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(mixture_limit(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("Ising limits vanish for pairs, saturate for one-vs-rest") {
    SideLimits l = uniform_limits(8, 0.5, 0.5, 0.0);
    CHECK(l.c_oo_minus == doctest::Approx(0.0));
    CHECK(l.c_oe_plus == doctest::Approx(0.0));
    CHECK(l.c_o_minus == doctest::Approx(1.0));
    CHECK(l.c_o_plus == doctest::Approx(1.0));

    std::vector<double> angles(6, M_PI / 2), spins(6, 0.5);
    CHECK(pair_limit(angles, spins, 1, 4, -1) == doctest::Approx(0.0));
    CHECK(one_vs_rest_limit(angles, spins, 3, +1) == doctest::Approx(1.0));
}

TEST_CASE("XX limit: C^- approaches 2 s / S") {
    SideLimits l = uniform_limits(20, 0.5, 0.5, 1.0 - 1e-13);
    CHECK(l.c_oo_minus == doctest::Approx(2.0 / 20).epsilon(1e-6));
    SideLimits exact = uniform_limits(20, 0.5, 0.5, 1.0);
    CHECK(exact.c_oo_minus == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(exact.c_oo_plus == doctest::Approx(0.0).epsilon(1e-12));
    // spin-1 sublattices: 2 s_sigma / S
    SideLimits s1 = uniform_limits(10, 1.0, 1.0, 1.0);
    CHECK(s1.c_oo_minus == doctest::Approx(2.0 / 10.0).epsilon(1e-12));
}

TEST_CASE("same spins make all three pair limits equal") {
    SideLimits l = uniform_limits(12, 1.0, 1.0, 0.7);
    CHECK(l.c_oo_minus == doctest::Approx(l.c_ee_minus).epsilon(1e-14));
    CHECK(l.c_oe_minus == doctest::Approx(l.c_oo_minus).epsilon(1e-14));
}

TEST_CASE("geometric-mean identity for random parameters") {
    oracle::Rng rng(71);
    for (int draw = 0; draw < 100; ++draw) {
        int n = 2 * rng.pick(2, 8);
        double s_o = 0.5 * rng.pick(1, 4);
        double s_e = 0.5 * rng.pick(1, 4);
        SideLimits l = alternating_limits(n, s_o, s_e, rng.uniform(0, 1), rng.uniform(0, 1));
        CHECK(std::abs(l.c_oe_minus - std::sqrt(l.c_oo_minus * l.c_ee_minus)) < 1e-14);
        CHECK(std::abs(l.c_oe_plus - std::sqrt(l.c_oo_plus * l.c_ee_plus)) < 1e-14);
    }
}

TEST_CASE("alternating limits: eta ordering and extremes") {
    double chi = 0.9, eta = 3.0;
    double chi_o = (chi * chi + eta * chi) / (1 + eta * chi);
    double chi_e = (chi * chi + chi / eta) / (1 + chi / eta);
    SideLimits l = alternating_limits(20, 0.5, 0.5, chi_o, chi_e);
    CHECK(l.c_oo_minus == doctest::Approx(0.02897851488024208).epsilon(1e-12));
    CHECK(l.c_ee_minus == doctest::Approx(0.09163476326995457).epsilon(1e-12));
    CHECK(l.c_ee_minus / l.c_oo_minus ==
          doctest::Approx((chi + eta) / (chi + 1 / eta)).epsilon(1e-12));
    // C_oo < C_oe < C_ee for eta > 1 at equal spins
    CHECK(l.c_oo_minus < l.c_oe_minus);
    CHECK(l.c_oe_minus < l.c_ee_minus);

    // eta = 1 reduces to the uniform limits
    SideLimits sym = alternating_limits(20, 0.5, 0.5, 0.9, 0.9);
    SideLimits uni = uniform_limits(20, 0.5, 0.5, 0.9);
    CHECK(sym.c_oo_minus == doctest::Approx(uni.c_oo_minus).epsilon(1e-14));

    // eta -> infinity: cos t_o -> 1, cos t_e -> chi: C_ee finite, others vanish
    SideLimits far = alternating_limits(20, 0.5, 0.5, 1.0, chi * chi);
    CHECK(std::abs(far.c_oo_minus) < 1e-14);
    CHECK(std::abs(far.c_oe_minus) < 1e-14);
    CHECK(far.c_ee_minus > 0.1);
    SideLimits near_far = alternating_limits(20, 0.5, 0.5, 1.0 - 1e-8, chi * chi);
    CHECK(near_far.c_oo_minus < 0.006);
    CHECK(near_far.c_ee_minus > 0.1);
    CHECK(near_far.c_oe_minus < 0.05);
}

TEST_CASE("pair limit cross-checked against dense side values at factorization") {
    double chi = 0.9, alpha = 0.25;
    ChainSpec spec = oracle::xy_dimer(6, chi, alpha, FieldProfile::uniform(0.0));
    FactorizedState fs = uniform_solution(spec);
    ChainSpec at = fs.canonical_spec;

    oracle::DenseSector minus = oracle::dense_sector(at, -1);
    oracle::DenseSector plus = oracle::dense_sector(at, +1);
    std::vector<double> spins(6, 0.5);
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 4}, {1, 6}}) {
        double c_minus = pair_limit(fs.angles, spins, i, j, -1);
        double c_plus = pair_limit(fs.angles, spins, i, j, +1);
        PairState dm = pair_rdm(oracle::dense_pair(minus, i, j));
        PairState dp = pair_rdm(oracle::dense_pair(plus, i, j));
        CHECK(std::abs(c_minus - dm.concurrence) < 1e-8);
        CHECK(std::abs(c_plus - dp.concurrence) < 1e-8);
        CHECK(dm.alignment == PairAlignment::antiparallel);
        CHECK(dp.alignment == PairAlignment::parallel);
    }
}

TEST_CASE("one-vs-rest limit against the dense reduced state") {
    double chi = 0.9;
    ChainSpec spec = oracle::xy_dimer(6, chi, 0.25, FieldProfile::uniform(0.0));
    FactorizedState fs = uniform_solution(spec);
    ChainSpec at = fs.canonical_spec;
    std::vector<double> spins(6, 0.5);

    // frozen closed-form value for n = 6, chi = 0.9
    CHECK(one_vs_rest_limit(fs.angles, spins, 1, -1) ==
          doctest::Approx(0.7467289087249148).epsilon(1e-12));

    for (int parity : {+1, -1}) {
        oracle::DenseSector sec = oracle::dense_sector(at, parity);
        for (int i : {1, 2}) {
            Eigen::MatrixXd rho = one_site_rdm(sec.state, sec.basis, i);
            double c_dense = std::sqrt(std::max(0.0, 2.0 * (1.0 - (rho * rho).trace())));
            CHECK(std::abs(one_vs_rest_limit(fs.angles, spins, i, parity) - c_dense) < 1e-8);
        }
    }
}

TEST_CASE("theta = 0 guards to zero") {
    std::vector<double> angles(4, 0.0), spins(4, 0.5);
    CHECK(one_vs_rest_limit(angles, spins, 1, -1) == doctest::Approx(0.0));
    CHECK(pair_limit(angles, spins, 1, 2, -1) == doctest::Approx(0.0));
}

TEST_CASE("monogamy bound at the separable side limits") {
    oracle::Rng rng(83);
    for (int draw = 0; draw < 40; ++draw) {
        int n = 2 * rng.pick(2, 6);
        std::vector<double> angles, spins;
        double theta = rng.uniform(0.1, 1.4);
        for (int i = 0; i < n; ++i) {
            angles.push_back((i % 2 == 0 ? 1 : -1) * theta);
            spins.push_back(0.5);
        }
        for (int parity : {+1, -1}) {
            for (int i = 1; i <= n; ++i) {
                double ci = one_vs_rest_limit(angles, spins, i, parity);
                double sum = 0;
                for (int j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    double cij = pair_limit(angles, spins, std::min(i, j), std::max(i, j),
                                            parity);
                    sum += cij * cij;
                }
                CHECK(ci * ci + 1e-12 >= sum);
            }
        }
    }
}

TEST_CASE("magnetization step: frozen pair value and dense jump") {
    // n = 2 uniform chain at the crossing: Delta M = sqrt(chi)/(1+chi)
    double chi = 0.9;
    std::vector<double> angles(2, std::acos(std::sqrt(chi))), spins(2, 0.5);
    CHECK(magnetization_step(angles, spins, 1) ==
          doctest::Approx(std::sqrt(chi) / (1 + chi)).epsilon(1e-12));

    // consistency with the pair-solver magnetizations at the crossing
    double vx = 1.0;
    double b = pair_crossing(vx, chi * vx, 0.0, FieldRay::uniform());
    PairSpectrum ps = pair_spectrum(vx, chi * vx, 0.0, b, b);
    double dm = pair_magnetization(ps, -1)[0] - pair_magnetization(ps, +1)[0];
    CHECK(magnetization_step(angles, spins, 1) == doctest::Approx(dm).epsilon(1e-10));

    // n = 6 dense jump across the factorizing point
    ChainSpec spec = oracle::xy_dimer(6, chi, 0.25, FieldProfile::uniform(0.0));
    FactorizedState fs = uniform_solution(spec);
    ChainSpec at = fs.canonical_spec;
    oracle::DenseSector minus = oracle::dense_sector(at, -1);
    oracle::DenseSector plus = oracle::dense_sector(at, +1);
    std::vector<double> spins6(6, 0.5);
    for (int i : {1, 2}) {
        double dense_step = magnetization_dense(minus.state, minus.basis, i, at) -
                            magnetization_dense(plus.state, plus.basis, i, at);
        CHECK(std::abs(magnetization_step(fs.angles, spins6, i) - dense_step) < 1e-8);
    }

    std::vector<double> flat(2, 0.0), s2(2, 0.5);
    CHECK_THROWS_AS(magnetization_step(flat, s2, 1), std::domain_error);
}

TEST_CASE("definite-parity states have Schmidt rank 2 across any bipartition") {
    double chi = 0.8;
    ChainSpec spec = oracle::xy_dimer(6, chi, 0.5, FieldProfile::uniform(0.0));
    FactorizedState fs = uniform_solution(spec);
    ChainSpec at = fs.canonical_spec;
    DenseOperator H = dense_hamiltonian(at);
    Eigen::VectorXd par = parity_diagonal(at);
    Eigen::VectorXd theta = product_state(at, fs.angles);
    Eigen::VectorXd mirror = par.cwiseProduct(theta); // P_z |Theta> = |-Theta>
    for (int sign : {+1, -1}) {
        Eigen::VectorXd psi = theta + sign * mirror;
        psi.normalize();
        // bipartition (1..L | L+1..6): singular values of the amplitude matrix
        for (int L : {1, 2, 3}) {
            int dl = 1 << L;
            int dr = 1 << (6 - L);
            Eigen::MatrixXd M = Eigen::Map<Eigen::MatrixXd>(psi.data(), dr, dl); // col-major
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
            int rank = 0;
            for (int s = 0; s < svd.singularValues().size(); ++s)
                if (svd.singularValues()(s) > 1e-10) ++rank;
            CHECK(rank <= 2);
        }
    }
}
