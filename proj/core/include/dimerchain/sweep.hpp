#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/entanglement.hpp"
#include "dimerchain/field_ray.hpp"

namespace dimerchain {

enum class SolverKind { automatic, jordan_wigner, dense, collective };

/// Observables of one field point, both parity sectors solved.
struct SweepRow {
    double b_odd = 0, b_even = 0;
    int parity = +1;                 ///< GS parity of this row
    bool degenerate = false;         ///< |gap| below the degeneracy window
    double energy = 0;               ///< this row's sector energy
    double gap = 0;                  ///< E^- - E^+
    std::vector<double> concurrence;             ///< one per requested pair
    std::vector<PairAlignment> alignment;
    double m_o = 0, m_e = 0;         ///< site magnetizations (sites 1 and 2)
    double c_o = 0, c_e = 0;         ///< one-vs-rest concurrences
};

struct SweepResult {
    std::vector<std::pair<int, int>> pairs;
    std::vector<SweepRow> rows;      ///< ascending field; two rows per degenerate point
    SolverKind solver_used{};
    int transition_count() const;    ///< sign changes of the gap along the sweep
};

/// Per-point solve of both parity sectors along a field ray.
/// Pairs default to (1,2) when empty.  Degenerate points (|gap| < 1e-12 x
/// scale) emit one row per sector.
SweepResult sweep(const ChainSpec& spec, const FieldRay& ray, double from, double to,
                  int points, std::vector<std::pair<int, int>> pairs,
                  SolverKind solver = SolverKind::automatic);

/// All sign changes of the parity gap E^-(t) - E^+(t), refined by bisection.
struct TransitionReport {
    std::vector<double> crossings;   ///< ascending ray parameters
    double bisection_tol = 1e-10;
    int expected = 0;                ///< n/2 for the canonical sweeps, 0 = unknown
    bool refined = false;            ///< a grid-doubling retry was needed
    std::optional<double> analytic_last;   ///< factorizing field when available
};
TransitionReport find_transitions(const ChainSpec& spec, const FieldRay& ray, double from,
                                  double to, int grid = 600, int expected = -1,
                                  SolverKind solver = SolverKind::automatic);

/// Solver concurrences just below/above the factorizing field against the
/// closed-form side limits.  The raw values carry an O(offset) drift from the
/// field dependence of the state; the limit estimates remove it by Richardson
/// extrapolation over offset and offset/2.
struct SideLimitProbe {
    double factorizing_field = 0;    ///< ray parameter of the factorizing point
    double offset = 1e-6;
    /// per requested pair: value below, value above
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> below, above;             ///< raw values at -+offset
    std::vector<double> below_limit, above_limit; ///< extrapolated side limits
    double analytic_below_oo = 0, analytic_above_oo = 0;
    double analytic_below_ee = 0, analytic_above_ee = 0;
    double analytic_below_oe = 0, analytic_above_oe = 0;
    double max_deviation = 0;        ///< solver vs analytic, worst pair
    double max_spread = 0;           ///< between pairs of the same class
    double c0_oo = 0, c0_ee = 0, c0_oe = 0;   ///< mixture values at the point itself
};
SideLimitProbe side_limit_probe(const ChainSpec& spec, const FieldRay& ray,
                                double offset = 1e-6,
                                std::vector<std::pair<int, int>> pairs = {},
                                SolverKind solver = SolverKind::automatic);

/// Strong-field comparison against the second-order perturbative forms.
struct StrongFieldRow {
    double b = 0;
    double c12 = 0, c12_pert = 0;
    double c23 = 0, c23_pert = 0;
    double c13 = 0, c13_pert = 0;
    double m_o = 0, m_e = 0, m_pert = 0;
    double c_site_o = 0, c_site_e = 0, c_site_pert = 0;
    double max_deviation = 0;
};
std::vector<StrongFieldRow> strong_field_check(const ChainSpec& spec,
                                               const std::vector<double>& fields);

/// Perturbative strong-field expressions for the uniform-field dimer chain.
struct StrongFieldExpansion {
    double c12 = 0, c23 = 0, c13 = 0, m = 0, c_site = 0;
};
StrongFieldExpansion strong_field_expansion(double vx_odd, double chi, double alpha, double b);

/// Ordered parallel map over an index range (worker pool; solvers are pure).
void parallel_for(int count, const std::function<void(int)>& fn);

} // namespace dimerchain
