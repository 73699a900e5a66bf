#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimerchain/analytic_limits.hpp"
#include "dimerchain/collective.hpp"
#include "dimerchain/pair_solver.hpp"
#include "oracle_utils.hpp"

using namespace dimerchain;

TEST_CASE("n = 2 collective model matches the pair closed forms") {
    oracle::Rng rng(7);
    for (int draw = 0; draw < 50; ++draw) {
        double vx = rng.uniform(0.3, 2.0);
        double vy = rng.uniform(-1.0, 1.0) * vx;
        double vz = rng.uniform(-0.5, 0.5);
        double bo = rng.uniform(0, 1.5), be = rng.uniform(0, 1.5);
        CollectivePair cp = collective_ground_states(2, 0.5, 0.5, {vx, vy, vz}, bo, be);
        PairSpectrum ps = pair_spectrum(vx, vy, vz, bo, be);
        CHECK(cp.plus.energy == doctest::Approx(ps.e_plus_lower).epsilon(1e-12));
        CHECK(cp.minus.energy == doctest::Approx(ps.e_minus_lower).epsilon(1e-12));
    }
}

TEST_CASE("collective energies and correlators match dense ED") {
    oracle::Rng rng(19);
    int done = 0;
    while (done < 10) {
        int n = 2 * rng.pick(2, 4); // 4, 6, 8
        double vx = rng.uniform(0.5, 2.0);
        AxisTriple v{vx, rng.uniform(0.0, 0.95) * vx, 0.0};
        double bo = rng.uniform(0.05, vx), be = rng.uniform(0.05, vx);
        ChainSpec spec = build_collective_pair(n, 0.5, 0.5, v, bo, be);
        if (oracle::sector_spectral_gap(spec) < 1e-6) continue;
        ++done;

        CollectivePair cp = collective_ground_states(n, 0.5, 0.5, v, bo, be);
        for (int parity : {+1, -1}) {
            oracle::DenseSector sec = oracle::dense_sector(spec, parity);
            const CollectiveState& st = parity > 0 ? cp.plus : cp.minus;
            CHECK(std::abs(st.energy - sec.energy) < 1e-10);

            CollectiveObservables obs = collective_pair_concurrences(st);
            PairCorrelatorSet oo = oracle::dense_pair(sec, 1, 3);
            PairCorrelatorSet ee = oracle::dense_pair(sec, 2, 4);
            PairCorrelatorSet oe = oracle::dense_pair(sec, 1, 2);
            CHECK(std::abs(obs.oo.xx - oo.xx) < 1e-10);
            CHECK(std::abs(obs.oo.yy - oo.yy) < 1e-10);
            CHECK(std::abs(obs.oo.zz - oo.zz) < 1e-10);
            CHECK(std::abs(obs.ee.xx - ee.xx) < 1e-10);
            CHECK(std::abs(obs.oe.xx - oe.xx) < 1e-10);
            CHECK(std::abs(obs.oe.yy - oe.yy) < 1e-10);
            CHECK(std::abs(obs.oe.zz - oe.zz) < 1e-10);
            CHECK(std::abs(obs.m_o - oo.mz_i) < 1e-10);
            CHECK(std::abs(obs.m_e - ee.mz_i) < 1e-10);
        }
    }
}

TEST_CASE("strong field polarizes the collective ground state") {
    CollectivePair cp = collective_ground_states(12, 0.5, 0.5, {1.0, 0.9, 0.0}, 40.0, 40.0);
    const CollectiveState& gs = cp.ground();
    CollectiveMoments mom = collective_moments(gs);
    CHECK(mom.sz_o == doctest::Approx(-3.0).epsilon(1e-3)); // -S_o
    CHECK(mom.sz_e == doctest::Approx(-3.0).epsilon(1e-3));
    CHECK(gs.parity == +1);
}

TEST_CASE("crossing sequence ends at the collective factorizing field") {
    int n = 20;
    double chi = 0.9, vx = 1.0, eta = 3.0;
    double bso = 0.5 * vx * std::sqrt(eta * chi);
    int flips = 0;
    int prev = 0;
    double last_flip = 0;
    for (int step = 1; step <= 800; ++step) {
        double bo = 1.05 * bso * step / 800.0;
        CollectivePair cp =
            collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, bo, bo / eta);
        int parity = cp.gap() < 0 ? -1 : +1;
        if (prev != 0 && parity != prev) {
            ++flips;
            last_flip = bo;
        }
        prev = parity;
    }
    CHECK(flips == n / 2);
    CHECK(last_flip == doctest::Approx(bso).epsilon(2e-3));
}

TEST_CASE("collective side limits match the closed forms") {
    // the limits depend only on chi and eta, equal to the dimer-chain ones
    int n = 20;
    double chi = 0.9, vx = 1.0;
    double bs = 0.5 * vx * std::sqrt(chi);
    double delta = 1e-8;
    SideLimits lims = uniform_limits(n, 0.5, 0.5, chi);

    CollectivePair below =
        collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, bs - delta, bs - delta);
    CollectiveObservables obs_b = collective_pair_concurrences(below.ground());
    CHECK(obs_b.c_oo == doctest::Approx(lims.c_oo_minus).epsilon(1e-5));
    CHECK(obs_b.align_oo == PairAlignment::antiparallel);

    CollectivePair above =
        collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, bs + delta, bs + delta);
    CollectiveObservables obs_a = collective_pair_concurrences(above.ground());
    CHECK(obs_a.c_oo == doctest::Approx(lims.c_oo_plus).epsilon(1e-5));
    CHECK(obs_a.align_oo == PairAlignment::parallel);
}

TEST_CASE("even-even exceeds odd-even near the alternating factorizing field") {
    int n = 20;
    double chi = 0.9, vx = 1.0, eta = 3.0;
    double bso = 0.5 * vx * std::sqrt(eta * chi);
    for (double bo : {bso - 1e-3, bso + 1e-3}) {
        CollectivePair cp =
            collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, bo, bo / eta);
        CollectiveObservables obs = collective_pair_concurrences(cp.ground());
        CHECK(obs.c_ee > obs.c_oe);
        CHECK(obs.c_oe > obs.c_oo);
    }
}

TEST_CASE("concurrence maxima sit at the factorizing field (uniform ray)") {
    int n = 20;
    double chi = 0.9, vx = 1.0;
    double bs = 0.5 * vx * std::sqrt(chi);
    int points = 300;
    double best_b = 0, best_c = -1;
    for (int step = 1; step <= points; ++step) {
        double b = 1.4 * bs * step / points;
        CollectivePair cp = collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, b, b);
        CollectiveObservables obs = collective_pair_concurrences(cp.ground());
        if (obs.c_oo > best_c) {
            best_c = obs.c_oo;
            best_b = b;
        }
    }
    CHECK(std::abs(best_b - bs) <= 1.5 * 1.4 * bs / points);
}

TEST_CASE("n-scaling: n * C stays bounded (monogamy)") {
    double chi = 0.9, vx = 1.0;
    double prev = 0;
    for (int n : {8, 12, 16, 20}) {
        double worst = 0;
        for (int step = 1; step <= 120; ++step) {
            double b = 0.8 * step / 120.0;
            CollectivePair cp =
                collective_ground_states(n, 0.5, 0.5, {vx, chi * vx, 0.0}, b, b);
            CollectiveObservables obs = collective_pair_concurrences(cp.ground());
            worst = std::max({worst, obs.c_oo, obs.c_ee, obs.c_oe});
        }
        double scaled = n * worst;
        CHECK(scaled < 4.0);
        if (prev > 0) CHECK(scaled < prev * 1.25);
        prev = scaled;
    }
}

TEST_CASE("dimension cap") {
    CHECK_THROWS_AS(collective_ground_states(4000, 0.5, 0.5, {1, 0.5, 0}, 0.1, 0.1),
                    std::domain_error);
}
