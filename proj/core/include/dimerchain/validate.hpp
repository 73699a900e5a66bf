#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/jw_solver.hpp"

namespace dimerchain {

/// One check of the randomized oracle campaign.
struct ValidationCheck {
    std::string name;
    bool passed = false;
    double worst = 0;         ///< largest observed deviation
    double tolerance = 0;
    std::string detail;       ///< reproducer description when failed
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    /// JSON text of the first failing spec, when a reproducer exists.
    std::optional<std::string> reproducer;
};

/// Randomized cross-validation campaign: Jordan-Wigner vs brute force,
/// collective vs brute force, pair closed forms vs brute force, factorization
/// residuals and the RPA certificate, Wootters two-route agreement, monogamy,
/// and the contraction symmetries.  Sizes are capped by n_max (even, >= 2).
ValidationReport validate(unsigned long long seed, int n_max);

/// Fault-injection helper used by the negative tests: feeds a corrupted
/// contraction table (broken g antisymmetry) through the pair-state path and
/// reports whether the corruption was caught.
bool corrupted_table_is_caught(const ContractionTable& good);

} // namespace dimerchain
