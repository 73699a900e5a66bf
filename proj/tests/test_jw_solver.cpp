#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dimerchain/jw_solver.hpp"
#include "oracle_utils.hpp"

using namespace dimerchain;

TEST_CASE("fermionize extracts coefficients and boundary signs") {
    ChainSpec spec = oracle::xy_dimer(8, 0.9, 0.25, FieldProfile::alternating(0.4, 0.2));
    QuadraticForm qp = fermionize(spec, +1);
    CHECK(qp.b_odd == doctest::Approx(0.4));
    CHECK(qp.b_even == doctest::Approx(0.2));
    CHECK(qp.v_plus_odd == doctest::Approx(0.25 * 1.9));
    CHECK(qp.v_minus_odd == doctest::Approx(0.25 * 0.1));
    CHECK(qp.v_plus_even == doctest::Approx(0.25 * 0.25 * 1.9));
    // antiperiodic bond only in the even-parity sector, only at the wrap bond
    CHECK(qp.boundary_sign(8) == -1);
    CHECK(qp.boundary_sign(4) == +1);
    QuadraticForm qm = fermionize(spec, -1);
    CHECK(qm.boundary_sign(8) == +1);

    // momenta: k_+ half-integers, k_- integers
    CHECK(qp.momenta() == std::vector<double>{0.5, 1.5, 2.5, 3.5});
    CHECK(qm.momenta() == std::vector<double>{0, 1, 2, 3});
}

TEST_CASE("fermionize rejects unsupported specs") {
    CHECK_THROWS_AS(fermionize(oracle::xy_dimer(6, 0.9, 0.25, FieldProfile::uniform(0), 1.0,
                                                Boundary::open),
                               +1),
                    std::domain_error);
    AxisTriple with_z{1.0, 0.9, 0.2};
    ChainSpec vz = build_dimer_chain(6, 0.5, 0.5, with_z, with_z.scaled(0.5),
                                     FieldProfile::uniform(0));
    CHECK_THROWS_AS(fermionize(vz, +1), std::domain_error);
    ChainSpec spin1 = build_dimer_chain(6, 1.0, 1.0, {1, .9, 0}, {.5, .45, 0},
                                        FieldProfile::uniform(0));
    CHECK_THROWS_AS(fermionize(spin1, +1), std::domain_error);
    CHECK(fermionizable(oracle::xy_dimer(6, 0.9, 0.25, FieldProfile::uniform(0))));
}

TEST_CASE("closed-form lambdas match the numerical block eigenvalues") {
    oracle::Rng rng(101);
    for (int draw = 0; draw < 50; ++draw) {
        int n = 2 * rng.pick(2, 6);
        ChainSpec spec = oracle::xy_dimer(n, rng.uniform(0.05, 0.95), rng.uniform(0, 1),
                                          FieldProfile::alternating(rng.uniform(0, 1.5),
                                                                    rng.uniform(0, 1.5)),
                                          rng.uniform(0.5, 2.0));
        for (int parity : {+1, -1}) {
            QuadraticForm qf = fermionize(spec, parity);
            auto blocks = momentum_blocks(qf);
            for (const auto& blk : blocks) {
                // snap error recorded during construction must be tiny
                CHECK(blk.snap_error < 1e-12 * std::max(1.0, blk.lambda_plus));
                CHECK(blk.lambda_plus >= blk.lambda_minus);
            }
        }
    }
}

TEST_CASE("XX case: lambda pattern |sqrt(b_-^2+|v_+^k|^2) +- b_+|") {
    double bo = 0.9, be = 0.4;
    ChainSpec spec = build_dimer_chain(8, 0.5, 0.5, {1.0, 1.0, 0.0}, {0.5, 0.5, 0.0},
                                       FieldProfile::alternating(bo, be));
    QuadraticForm qf = fermionize(spec, +1);
    for (double k : qf.momenta()) {
        auto [lp, lm] = closed_form_lambdas(qf, k);
        std::complex<double> vpk =
            qf.v_plus_odd + qf.v_plus_even * std::exp(std::complex<double>(0, -qf.omega() * k));
        double bm = 0.5 * (bo - be), bp = 0.5 * (bo + be);
        double root = std::sqrt(bm * bm + std::norm(vpk));
        double a = std::abs(root + bp), b = std::abs(root - bp);
        CHECK(lp == doctest::Approx(std::max(a, b)).epsilon(1e-12));
        CHECK(lm == doctest::Approx(std::min(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("uniform chain lambdas reproduce the single-band XY dispersion") {
    // alpha = 1, b^o = b^e: fold the standard dispersion onto the two branches
    double chi = 0.7, vx = 1.3, b = 0.8;
    int n = 12;
    ChainSpec spec = oracle::xy_dimer(n, chi, 1.0, FieldProfile::uniform(b), vx);
    double vplus = 0.25 * vx * (1 + chi), vminus = 0.25 * vx * (1 - chi);
    for (int parity : {+1, -1}) {
        QuadraticForm qf = fermionize(spec, parity);
        std::vector<double> folded;
        for (double k : qf.momenta()) {
            auto [lp, lm] = closed_form_lambdas(qf, k);
            folded.push_back(lp);
            folded.push_back(lm);
        }
        std::vector<double> unfolded;
        for (int j = 0; j < n; ++j) {
            double q = (parity > 0) ? (2 * j + 1) * std::numbers::pi / n
                                    : 2 * j * std::numbers::pi / n;
            double eps = b - 2.0 * vplus * std::cos(q);
            double del = 2.0 * vminus * std::sin(q);
            unfolded.push_back(std::sqrt(eps * eps + del * del));
        }
        std::sort(folded.begin(), folded.end());
        std::sort(unfolded.begin(), unfolded.end());
        for (size_t i = 0; i < folded.size(); ++i)
            CHECK(folded[i] == doctest::Approx(unfolded[i]).epsilon(1e-10));
    }
}

TEST_CASE("sector energies match the dense parity-projected minima") {
    oracle::Rng rng(113);
    for (int draw = 0; draw < 25; ++draw) {
        int n = 2 * rng.pick(2, 4);
        ChainSpec spec = oracle::xy_dimer(n, rng.uniform(0.05, 0.95), rng.uniform(0, 1),
                                          FieldProfile::alternating(rng.uniform(0, 1.2),
                                                                    rng.uniform(0, 1.2)),
                                          rng.uniform(0.5, 2.0));
        SectorEigen dense = sector_ground_states_dense(spec);
        CHECK(std::abs(solve_sector(spec, +1).energy - dense.energy_plus) < 1e-10);
        CHECK(std::abs(solve_sector(spec, -1).energy - dense.energy_minus) < 1e-10);
    }
}

TEST_CASE("full parity-projected spectra from quasiparticle occupations") {
    oracle::Rng rng(163);
    for (int draw = 0; draw < 6; ++draw) {
        ChainSpec spec = oracle::xy_dimer(6, rng.uniform(0.1, 0.9), rng.uniform(0.1, 1.0),
                                          FieldProfile::alternating(rng.uniform(0, 1),
                                                                    rng.uniform(0, 1)));
        DenseOperator H = dense_hamiltonian(spec);
        Eigen::VectorXd par = parity_diagonal(spec);
        for (int parity : {+1, -1}) {
            QuadraticForm qf = fermionize(spec, parity);
            auto blocks = momentum_blocks(qf);
            SectorSolution sol = solve_sector(qf);
            int vacuum_parity = sol.repaired ? -parity : parity;
            std::vector<double> lambdas;
            double evac = 0;
            for (const auto& blk : blocks) {
                lambdas.push_back(blk.lambda_plus);
                lambdas.push_back(blk.lambda_minus);
                evac -= 0.5 * (blk.lambda_plus + blk.lambda_minus);
            }
            // enumerate quasiparticle occupations with the right total parity
            std::vector<double> jw_levels;
            int modes = static_cast<int>(lambdas.size());
            for (int mask = 0; mask < (1 << modes); ++mask) {
                int flips = __builtin_popcount(mask);
                int state_parity = (flips % 2 == 0) ? vacuum_parity : -vacuum_parity;
                if (state_parity != parity) continue;
                double e = evac;
                for (int q = 0; q < modes; ++q)
                    if (mask & (1 << q)) e += lambdas[q];
                jw_levels.push_back(e);
            }
            std::sort(jw_levels.begin(), jw_levels.end());

            std::vector<double> dense_levels;
            std::vector<long> idx;
            for (long a = 0; a < H.dimension(); ++a)
                if ((par(a) > 0) == (parity > 0)) idx.push_back(a);
            Eigen::MatrixXd block(idx.size(), idx.size());
            for (size_t c = 0; c < idx.size(); ++c) {
                Eigen::VectorXd col = Eigen::VectorXd::Zero(H.dimension());
                col(idx[c]) = 1.0;
                Eigen::VectorXd hcol = H.matrix * col;
                for (size_t r = 0; r < idx.size(); ++r) block(r, c) = hcol(idx[r]);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
            for (long a = 0; a < es.eigenvalues().size(); ++a)
                dense_levels.push_back(es.eigenvalues()(a));

            REQUIRE(jw_levels.size() == dense_levels.size());
            for (size_t a = 0; a < jw_levels.size(); ++a)
                CHECK(std::abs(jw_levels[a] - dense_levels[a]) < 1e-10);
        }
    }
}

TEST_CASE("strong field polarizes the chain") {
    ChainSpec spec = oracle::xy_dimer(8, 0.9, 0.25, FieldProfile::uniform(60.0));
    ContractionTable t = sector_ground_state(spec, +1);
    for (int i = 0; i < 8; ++i) CHECK(t.f(i, i) == doctest::Approx(-0.5).epsilon(1e-4));
    CHECK(t.g.cwiseAbs().maxCoeff() < 2e-3);
}

TEST_CASE("contractions are symmetric/antisymmetric and translation covariant") {
    ChainSpec spec = oracle::xy_dimer(12, 0.8, 0.4, FieldProfile::alternating(0.5, 0.3));
    for (int parity : {+1, -1}) {
        SectorSolution sol = solve_sector(spec, parity);
        for (const auto& t : sol.tables) {
            CHECK((t.f - t.f.transpose()).cwiseAbs().maxCoeff() < 1e-13);
            CHECK((t.g + t.g.transpose()).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("all spin correlators match dense ED in both sectors") {
    oracle::Rng rng(131);
    int checked = 0;
    while (checked < 12) {
        int n = 6;
        ChainSpec spec = oracle::xy_dimer(n, rng.uniform(0.05, 0.95), rng.uniform(0.1, 1),
                                          FieldProfile::alternating(rng.uniform(0, 1.0),
                                                                    rng.uniform(0, 1.0)));
        if (oracle::sector_spectral_gap(spec) < 1e-6) continue; // ill-posed comparison
        ++checked;
        for (int parity : {+1, -1}) {
            SectorSolution sol = solve_sector(spec, parity);
            oracle::DenseSector sec = oracle::dense_sector(spec, parity);
            for (int i = 1; i <= n; ++i) {
                CHECK(std::abs(sol.magnetization(i) -
                               magnetization_dense(sec.state, sec.basis, i, spec)) < 1e-9);
                for (int j = i + 1; j <= n; ++j) {
                    PairCorrelatorSet jw = sol.pair(i, j);
                    PairCorrelatorSet dd = oracle::dense_pair(sec, i, j);
                    CHECK(std::abs(jw.zz - dd.zz) < 1e-9);
                    CHECK(std::abs(jw.xx - dd.xx) < 1e-9);
                    CHECK(std::abs(jw.yy - dd.yy) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("translation invariance of concurrences on the cyclic chain") {
    ChainSpec spec = oracle::xy_dimer(12, 0.9, 0.3, FieldProfile::uniform(0.45));
    SectorSolution plus = solve_sector(spec, +1);
    SectorSolution minus = solve_sector(spec, -1);
    const SectorSolution& gs = (minus.energy < plus.energy) ? minus : plus;
    auto conc = [&](int i, int j) { return pair_rdm(gs.pair(i, j)).concurrence; };
    // C_ij = C_{1,j-i+1} for odd i, C_{2,j-i+2} for even i
    CHECK(conc(3, 6) == doctest::Approx(conc(1, 4)).epsilon(1e-10));
    CHECK(conc(5, 10) == doctest::Approx(conc(1, 6)).epsilon(1e-10));
    CHECK(conc(4, 7) == doctest::Approx(conc(2, 5)).epsilon(1e-10));
    CHECK(conc(6, 11) == doctest::Approx(conc(2, 7)).epsilon(1e-10));
}

TEST_CASE("distance-1 determinants reduce to direct contractions") {
    ChainSpec spec = oracle::xy_dimer(8, 0.7, 0.5, FieldProfile::alternating(0.6, 0.2));
    for (int parity : {+1, -1}) {
        ContractionTable t = sector_ground_state(spec, parity);
        for (int i = 1; i < 8; ++i) {
            SpinCorrelators c = spin_correlators(t, i, i + 1);
            // <s^+_i s^-_{i+1}> = f_{i,i+1}, <s^+_i s^+_{i+1}> = g_{i,i+1}
            CHECK(c.splus_sminus == doctest::Approx(t.f(i - 1, i)).epsilon(1e-12));
            CHECK(c.splus_splus == doctest::Approx(t.g(i - 1, i)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dimerized limit at zero field gives Bell-pair correlators") {
    // alpha = 0, b = 0: even-parity sector of n = 4 holds two antiparallel
    // Bell pairs: <s^x_1 s^x_2> = 1/4
    ChainSpec spec = oracle::xy_dimer(4, 0.9, 0.0, FieldProfile::uniform(0.0));
    ContractionTable t = sector_ground_state(spec, +1);
    SpinCorrelators c = spin_correlators(t, 1, 2);
    CHECK(c.xx == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(c.yy == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(c.zz == doctest::Approx(-0.25).epsilon(1e-10));
    // across the severed bond no correlation survives
    SpinCorrelators c23 = spin_correlators(t, 2, 3);
    CHECK(std::abs(c23.xx) < 1e-10);
}

TEST_CASE("ground-state parity alternates n/2 times up to the factorizing field") {
    int n = 20;
    double chi = 0.9, alpha = 0.25;
    ChainSpec spec = oracle::xy_dimer(n, chi, alpha, FieldProfile::uniform(0.0));
    double bs = 0.5 * std::sqrt(chi) * (1 + alpha);
    int flips = 0;
    int prev = 0;
    for (int step = 0; step <= 400; ++step) {
        double b = (bs * 1.02) * step / 400.0;
        ChainSpec at = spec;
        at.field = FieldProfile::uniform(b);
        double gap = sector_energy(fermionize(at, -1)) - sector_energy(fermionize(at, +1));
        int parity = gap < 0 ? -1 : +1;
        if (prev != 0 && parity != prev) ++flips;
        prev = parity;
    }
    CHECK(flips == n / 2);
}

TEST_CASE("repaired sectors carry the flag and the degenerate multiplet") {
    // at weak field the minus sector needs a parity repair on this chain
    ChainSpec spec = oracle::xy_dimer(8, 0.9, 0.25, FieldProfile::uniform(0.1));
    SectorSolution plus = solve_sector(spec, +1);
    SectorSolution minus = solve_sector(spec, -1);
    CHECK((plus.repaired || minus.repaired));
    for (const SectorSolution* s : {&plus, &minus})
        if (s->degenerate) CHECK(s->tables.size() == 2);
}
