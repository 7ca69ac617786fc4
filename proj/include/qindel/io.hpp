#pragma once

#include <string>

#include <json.hpp>

#include "qindel/basecode.hpp"
#include "qindel/decoder.hpp"
#include "qindel/editgraph.hpp"
#include "qindel/experiment.hpp"
#include "qindel/qsim.hpp"
#include "qindel/seq.hpp"

namespace qindel {

/// Parses a sequence from text: integers separated by spaces and/or commas.
/// With q = 0 the alphabet size is inferred as max(symbol) + 1, floored at
/// 2. Throws std::invalid_argument with the offending token position.
Sequence parse_sequence(const std::string& text, int q = 0);

/// Components sorted by descending weight, ties broken lexicographically on
/// the amplitudes, so equal ensembles serialize to equal bytes.
Ensemble canonical(const Ensemble& rho);

nlohmann::json to_json(const Sequence& x);
nlohmann::json to_json(const IndexSet& S);
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const Ensemble& rho);
nlohmann::json to_json(const CodeIsometry& code);
nlohmann::json to_json(const ExperimentConfig& cfg);  // excludes threads
nlohmann::json to_json(const DecodeReport& report);
nlohmann::json to_json(const SweepReport& report);  // excludes wall time

PureState pure_state_from_json(const nlohmann::json& j);
Ensemble ensemble_from_json(const nlohmann::json& j);
CodeIsometry code_isometry_from_json(const nlohmann::json& j);

/// Accepts either a bare config object or anything wrapping one under a
/// "config" key (e.g. a sweep report, so a past report reruns the sweep).
/// Missing keys keep their defaults.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

/// A built-in code name ("five-qubit") or the path of a code JSON file.
CodeIsometry resolve_base_code(const std::string& ref);

/// The DP table plus every typed arc of the grid digraph, ordered by row,
/// column and type so equal inputs serialize to equal bytes.
nlohmann::json edit_graph_json(const Sequence& x, const Sequence& y);

/// One CSV line per decoded branch, fixed column set, %.12e floats.
std::string sweep_csv(const SweepReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qindel
