#include "dimerchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dimerchain/analytic_limits.hpp"
#include "dimerchain/collective.hpp"
#include "dimerchain/dense_solver.hpp"
#include "dimerchain/factorization.hpp"
#include "dimerchain/jw_solver.hpp"

namespace dimerchain {

namespace {

ChainSpec with_fields(const ChainSpec& spec, double b_odd, double b_even) {
    ChainSpec out = spec;
    out.field = (b_odd == b_even) ? FieldProfile::uniform(b_odd)
                                  : FieldProfile::alternating(b_odd, b_even);
    return out;
}

SolverKind pick_solver(const ChainSpec& spec, SolverKind wanted) {
    if (wanted != SolverKind::automatic) return wanted;
    if (fermionizable(with_fields(spec, 0.0, 0.0))) return SolverKind::jordan_wigner;
    return SolverKind::dense;
}

// full-range coupling triple v for the collective solver.  Tables built by
// build_collective_pair carry 2 v / n at every odd separation; a spec that
// only lists the nearest-neighbor entry (the JSON schema) is read as v itself.
AxisTriple collective_coupling(const ChainSpec& spec) {
    AxisTriple per_pair = spec.couplings.at(Sublattice::odd, 1);
    if (spec.couplings.separations().size() > 1) return per_pair.scaled(0.5 * spec.n);
    return per_pair;
}

// both-sector solve of one field point, uniform interface over the solvers
struct PointSolution {
    double e_plus = 0, e_minus = 0;
    std::function<PairCorrelatorSet(int sector, int i, int j)> pair;
    std::function<double(int sector, int i)> magnetization;
};

PointSolution solve_point(const ChainSpec& spec, SolverKind solver, double b_odd,
                          double b_even) {
    ChainSpec at = with_fields(spec, b_odd, b_even);
    PointSolution out;
    switch (solver) {
        case SolverKind::jordan_wigner: {
            auto plus = std::make_shared<SectorSolution>(solve_sector(at, +1));
            auto minus = std::make_shared<SectorSolution>(solve_sector(at, -1));
            out.e_plus = plus->energy;
            out.e_minus = minus->energy;
            out.pair = [plus, minus](int sector, int i, int j) {
                return (sector > 0 ? *plus : *minus).pair(i, j);
            };
            out.magnetization = [plus, minus](int sector, int i) {
                return (sector > 0 ? *plus : *minus).magnetization(i);
            };
            return out;
        }
        case SolverKind::dense: {
            auto eig = std::make_shared<SectorEigen>(sector_ground_states_dense(at));
            auto basis = std::make_shared<ProductBasis>(
                dense_hamiltonian(at).basis); // small n only; reuse of digits
            out.e_plus = eig->energy_plus;
            out.e_minus = eig->energy_minus;
            out.pair = [eig, basis](int sector, int i, int j) {
                const Eigen::VectorXd& psi =
                    sector > 0 ? eig->state_plus : eig->state_minus;
                PairCorrelators c = pair_correlators_dense(psi, *basis, i, j);
                return PairCorrelatorSet{c.mz_i, c.mz_j, c.zz, c.xx, c.yy};
            };
            auto spec_copy = std::make_shared<ChainSpec>(at);
            out.magnetization = [eig, basis, spec_copy](int sector, int i) {
                const Eigen::VectorXd& psi =
                    sector > 0 ? eig->state_plus : eig->state_minus;
                return magnetization_dense(psi, *basis, i, *spec_copy);
            };
            return out;
        }
        case SolverKind::collective: {
            auto cp = std::make_shared<CollectivePair>(collective_ground_states(
                at.n, at.spin_odd, at.spin_even, collective_coupling(at), b_odd, b_even));
            out.e_plus = cp->plus.energy;
            out.e_minus = cp->minus.energy;
            auto obs_plus = std::make_shared<CollectiveObservables>(
                collective_pair_concurrences(cp->plus));
            auto obs_minus = std::make_shared<CollectiveObservables>(
                collective_pair_concurrences(cp->minus));
            out.pair = [obs_plus, obs_minus](int sector, int i, int j) {
                const CollectiveObservables& o = sector > 0 ? *obs_plus : *obs_minus;
                bool i_odd = i % 2 == 1, j_odd = j % 2 == 1;
                if (i_odd && j_odd) return o.oo;
                if (!i_odd && !j_odd) return o.ee;
                return o.oe;
            };
            out.magnetization = [obs_plus, obs_minus](int sector, int i) {
                const CollectiveObservables& o = sector > 0 ? *obs_plus : *obs_minus;
                return (i % 2 == 1) ? o.m_o : o.m_e;
            };
            return out;
        }
        case SolverKind::automatic:
            break;
    }
    throw std::logic_error("unresolved solver kind");
}

double gap_at(const ChainSpec& spec, SolverKind solver, const FieldRay& ray, double t) {
    auto [bo, be] = ray.fields(t);
    ChainSpec at = with_fields(spec, bo, be);
    switch (solver) {
        case SolverKind::jordan_wigner:
            return sector_energy(fermionize(at, -1)) - sector_energy(fermionize(at, +1));
        case SolverKind::dense: {
            SectorEigen eig = sector_ground_states_dense(at);
            return eig.energy_minus - eig.energy_plus;
        }
        case SolverKind::collective: {
            CollectivePair cp = collective_ground_states(at.n, at.spin_odd, at.spin_even,
                                                         collective_coupling(at), bo, be);
            return cp.minus.energy - cp.plus.energy;
        }
        case SolverKind::automatic:
            break;
    }
    throw std::logic_error("unresolved solver kind");
}

void fill_row(SweepRow& row, const PointSolution& ps, int sector,
              const std::vector<std::pair<int, int>>& pairs) {
    row.parity = sector;
    row.energy = sector > 0 ? ps.e_plus : ps.e_minus;
    row.gap = ps.e_minus - ps.e_plus;
    row.concurrence.clear();
    row.alignment.clear();
    for (auto [i, j] : pairs) {
        PairState st = pair_rdm(ps.pair(sector, i, j));
        row.concurrence.push_back(st.concurrence);
        row.alignment.push_back(st.alignment);
    }
    row.m_o = ps.magnetization(sector, 1);
    row.m_e = ps.magnetization(sector, 2);
    row.c_o = single_site(row.m_o).concurrence;
    row.c_e = single_site(row.m_e).concurrence;
}

} // namespace

void parallel_for(int count, const std::function<void(int)>& fn) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

int SweepResult::transition_count() const {
    int count = 0;
    double prev = 0;
    bool have_prev = false;
    for (const auto& row : rows) {
        if (row.degenerate) continue;
        if (have_prev && (row.gap < 0) != (prev < 0)) ++count;
        prev = row.gap;
        have_prev = true;
    }
    return count;
}

SweepResult sweep(const ChainSpec& spec, const FieldRay& ray, double from, double to,
                  int points, std::vector<std::pair<int, int>> pairs, SolverKind solver) {
    if (points < 2) throw std::invalid_argument("sweep needs at least two points");
    if (pairs.empty()) pairs = {{1, 2}};
    for (auto [i, j] : pairs)
        if (i < 1 || j <= i || j > spec.n)
            throw std::invalid_argument("sweep pair indices out of range");
    SolverKind chosen = pick_solver(spec, solver);

    SweepResult result;
    result.pairs = pairs;
    result.solver_used = chosen;
    std::vector<std::vector<SweepRow>> rows(points);

    parallel_for(points, [&](int idx) {
        double t = from + (to - from) * idx / (points - 1);
        auto [bo, be] = ray.fields(t);
        PointSolution ps = solve_point(spec, chosen, bo, be);
        double scale = std::max({1.0, std::abs(ps.e_plus), std::abs(ps.e_minus)});
        bool degenerate = std::abs(ps.e_minus - ps.e_plus) < 1e-12 * scale;

        SweepRow row;
        row.b_odd = bo;
        row.b_even = be;
        row.degenerate = degenerate;
        if (degenerate) {
            fill_row(row, ps, +1, pairs);
            rows[idx].push_back(row);
            fill_row(row, ps, -1, pairs);
            rows[idx].push_back(row);
        } else {
            fill_row(row, ps, ps.e_minus < ps.e_plus ? -1 : +1, pairs);
            rows[idx].push_back(row);
        }
    });

    for (auto& r : rows)
        for (auto& row : r) result.rows.push_back(std::move(row));
    return result;
}

TransitionReport find_transitions(const ChainSpec& spec, const FieldRay& ray, double from,
                                  double to, int grid, int expected, SolverKind solver) {
    SolverKind chosen = pick_solver(spec, solver);
    TransitionReport report;
    report.expected = (expected >= 0) ? expected : spec.n / 2;

    auto gap = [&](double t) { return gap_at(spec, chosen, ray, t); };

    auto locate = [&](int npts) {
        std::vector<double> found;
        std::vector<double> ts(npts), gs(npts);
        parallel_for(npts, [&](int i) {
            ts[i] = from + (to - from) * i / (npts - 1);
            gs[i] = gap(ts[i]);
        });
        for (int i = 1; i < npts; ++i) {
            double g0 = gs[i - 1], g1 = gs[i];
            if (g0 == 0.0) {
                if (i == 1) found.push_back(ts[0]);
                continue;
            }
            if ((g1 < 0) == (g0 < 0) && g1 != 0.0) continue;
            double lo = ts[i - 1], hi = ts[i];
            double glo = g0;
            while (hi - lo > report.bisection_tol) {
                double mid = 0.5 * (lo + hi);
                double gm = gap(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm < 0) == (glo < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            found.push_back(0.5 * (lo + hi));
        }
        return found;
    };

    report.crossings = locate(grid);
    if (static_cast<int>(report.crossings.size()) < report.expected) {
        report.refined = true;
        report.crossings = locate(2 * grid + 1);
    }
    return report;
}

SideLimitProbe side_limit_probe(const ChainSpec& spec, const FieldRay& ray, double offset,
                                std::vector<std::pair<int, int>> pairs, SolverKind solver) {
    SolverKind chosen = pick_solver(spec, solver);
    SideLimitProbe probe;
    probe.offset = offset;

    // factorizing point on the ray and the per-sublattice cos^2 angles there
    double chi_o, chi_e;
    if (ray.kind() == FieldRay::Kind::uniform) {
        FactorizedState fs = uniform_solution(spec);
        double bo, be;
        if (!fs.fields.is_two_periodic(spec.n, bo, be) || std::abs(bo - be) > 1e-12 * std::max(1.0, std::abs(bo)))
            throw std::domain_error("uniform ray misses the factorizing point (b^o != b^e)");
        probe.factorizing_field = bo;
        chi_o = chi_e = fs.chi;
    } else {
        // walk the separability curve b^o b^e = chi (v^oe)^2 s_o s_e
        FactorizedState probe_state = alternating_solution(spec, GivenField::odd, 1.0);
        double bo1, be1;
        probe_state.fields.is_two_periodic(spec.n, bo1, be1);
        double product = bo1 * be1; // = chi (v^oe)^2 s_o s_e
        double t;
        if (ray.kind() == FieldRay::Kind::ratio) {
            t = std::sqrt(product * ray.parameter());
        } else {
            t = product / ray.parameter();
        }
        probe.factorizing_field = t;
        auto [bo, be] = ray.fields(t);
        FactorizedState fs = alternating_solution(spec, GivenField::odd, bo);
        double c_o = std::cos(fs.angles[0]);
        double c_e = std::cos(fs.angles[1]);
        chi_o = c_o * c_o;
        chi_e = c_e * c_e;
        (void)be;
    }

    SideLimits lims = alternating_limits(spec.n, spec.spin_odd, spec.spin_even, chi_o, chi_e);
    probe.analytic_below_oo = lims.c_oo_minus;
    probe.analytic_above_oo = lims.c_oo_plus;
    probe.analytic_below_ee = lims.c_ee_minus;
    probe.analytic_above_ee = lims.c_ee_plus;
    probe.analytic_below_oe = lims.c_oe_minus;
    probe.analytic_above_oe = lims.c_oe_plus;
    probe.c0_oo = lims.c0_oo;
    probe.c0_ee = lims.c0_ee;
    probe.c0_oe = lims.c0_oe;

    if (pairs.empty()) {
        int n = spec.n;
        pairs = {{1, 2}, {2, 3}, {1, 3}, {2, 4}};
        if (n >= 6) {
            pairs.push_back({1, n});
            pairs.push_back({1, n - 1});
            pairs.push_back({2, n});
        }
        std::erase_if(pairs, [n](auto p) { return p.second > n || p.first >= p.second; });
    }
    probe.pairs = pairs;

    auto values_at = [&](double t) {
        auto [bo, be] = ray.fields(t);
        PointSolution ps = solve_point(spec, chosen, bo, be);
        int sector = ps.e_minus < ps.e_plus ? -1 : +1;
        std::vector<double> cs;
        for (auto [i, j] : pairs) cs.push_back(pair_rdm(ps.pair(sector, i, j)).concurrence);
        return cs;
    };
    probe.below = values_at(probe.factorizing_field - offset);
    probe.above = values_at(probe.factorizing_field + offset);
    std::vector<double> below_half = values_at(probe.factorizing_field - 0.5 * offset);
    std::vector<double> above_half = values_at(probe.factorizing_field + 0.5 * offset);
    probe.below_limit.resize(pairs.size());
    probe.above_limit.resize(pairs.size());
    for (size_t p = 0; p < pairs.size(); ++p) {
        probe.below_limit[p] = 2.0 * below_half[p] - probe.below[p];
        probe.above_limit[p] = 2.0 * above_half[p] - probe.above[p];
    }

    auto analytic = [&](int i, int j, bool below) {
        bool i_odd = i % 2 == 1, j_odd = j % 2 == 1;
        if (i_odd && j_odd) return below ? lims.c_oo_minus : lims.c_oo_plus;
        if (!i_odd && !j_odd) return below ? lims.c_ee_minus : lims.c_ee_plus;
        return below ? lims.c_oe_minus : lims.c_oe_plus;
    };
    auto klass = [](int i, int j) {
        bool i_odd = i % 2 == 1, j_odd = j % 2 == 1;
        return i_odd && j_odd ? 0 : (!i_odd && !j_odd ? 1 : 2);
    };
    for (int side = 0; side < 2; ++side) {
        const auto& vals = side == 0 ? probe.below_limit : probe.above_limit;
        for (size_t p = 0; p < pairs.size(); ++p) {
            double dev = std::abs(vals[p] - analytic(pairs[p].first, pairs[p].second, side == 0));
            probe.max_deviation = std::max(probe.max_deviation, dev);
            for (size_t q = p + 1; q < pairs.size(); ++q)
                if (klass(pairs[p].first, pairs[p].second) ==
                    klass(pairs[q].first, pairs[q].second))
                    probe.max_spread = std::max(probe.max_spread, std::abs(vals[p] - vals[q]));
        }
    }
    return probe;
}

StrongFieldExpansion strong_field_expansion(double vx_odd, double chi, double alpha, double b) {
    StrongFieldExpansion e;
    double vm = 0.25 * vx_odd * (1.0 - chi);
    double vp = 0.25 * vx_odd * (1.0 + chi);
    double r = vm / b;
    e.c12 = std::abs(r) - 0.5 * (alpha * r) * (alpha * r);
    e.c23 = std::abs(alpha * r) - 0.5 * r * r;
    e.c13 = std::abs(alpha * vm * vp / (b * b)) - 0.5 * r * r * (1.0 + alpha * alpha);
    // second-order pair-creation weight on a site: each adjacent bond
    // contributes (v_-^bond / 2b)^2, so M = -1/2 [1 - (1+alpha^2) r^2 / 2]
    // and C_site = sqrt(1 - 4 M^2) = sqrt(1+alpha^2) |r| to leading order
    double y = 0.5 * (1.0 + alpha * alpha) * r * r;
    e.m = -0.5 * (1.0 - y);
    e.c_site = std::sqrt(1.0 + alpha * alpha) * std::abs(r);
    return e;
}

std::vector<StrongFieldRow> strong_field_check(const ChainSpec& spec,
                                               const std::vector<double>& fields) {
    AxisTriple vo = spec.couplings.at(Sublattice::odd, 1);
    AxisTriple ve = spec.couplings.at(Sublattice::even, 1);
    if (vo.x == 0.0) throw std::domain_error("strong-field check needs v_x^o != 0");
    double chi = vo.y / vo.x;
    double alpha = ve.x / vo.x;

    std::vector<StrongFieldRow> rows;
    for (double b : fields) {
        ChainSpec at = with_fields(spec, b, b);
        SectorSolution plus = solve_sector(at, +1);
        SectorSolution minus = solve_sector(at, -1);
        const SectorSolution& gs = (minus.energy < plus.energy) ? minus : plus;

        StrongFieldRow row;
        row.b = b;
        row.c12 = pair_rdm(gs.pair(1, 2)).concurrence;
        row.c23 = pair_rdm(gs.pair(2, 3)).concurrence;
        row.c13 = pair_rdm(gs.pair(1, 3)).concurrence;
        row.m_o = gs.magnetization(1);
        row.m_e = gs.magnetization(2);
        row.c_site_o = single_site(row.m_o).concurrence;
        row.c_site_e = single_site(row.m_e).concurrence;

        StrongFieldExpansion pert = strong_field_expansion(vo.x, chi, alpha, b);
        row.c12_pert = std::max(0.0, pert.c12);
        row.c23_pert = std::max(0.0, pert.c23);
        row.c13_pert = std::max(0.0, pert.c13);
        row.m_pert = pert.m;
        row.c_site_pert = pert.c_site;

        row.max_deviation = std::max({std::abs(row.c12 - row.c12_pert),
                                      std::abs(row.c23 - row.c23_pert),
                                      std::abs(row.m_o - row.m_pert),
                                      std::abs(row.m_e - row.m_pert),
                                      std::abs(row.c_site_o - row.c_site_pert),
                                      std::abs(row.c_site_e - row.c_site_pert)});
        rows.push_back(row);
    }
    return rows;
}

} // namespace dimerchain
