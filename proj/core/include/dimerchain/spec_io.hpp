#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "dimerchain/chain_spec.hpp"
#include "dimerchain/factorization.hpp"

namespace dimerchain {

/// JSON schema for chain specs:
/// { "n": 20,
///   "spins": {"odd": 0.5, "even": 0.5},
///   "couplings": {"odd": {"x":1,"y":0.9,"z":0}, "even": {"x":0.25,"y":0.225,"z":0}},
///   "field": {"kind": "uniform"|"alternating"|"per-site", "values": [...]},
///   "boundary": "cyclic"|"open" }
/// Couplings are the nearest-neighbor dimer entries; a missing "even" block
/// means decoupled dimers.  The collective command reinterprets "odd" as the
/// full-range coupling triple.
ChainSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ChainSpec& spec);

ChainSpec load_spec(const std::string& path);
void save_spec(const ChainSpec& spec, const std::string& path);

/// Serialized factorization record {angles, fields, energy, overlap, chi}.
nlohmann::json factorized_to_json(const FactorizedState& fs);

} // namespace dimerchain
