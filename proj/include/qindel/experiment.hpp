#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qindel/decoder.hpp"
#include "qindel/mhcode.hpp"

namespace qindel {

/// One choice of inserted-site state for the channel sweep.
struct SigmaSpec {
  enum class Kind { Basis, RandomPure, MaximallyMixed };
  Kind kind = Kind::Basis;
  int value = 0;  // basis index, or the random draw counter; unused for mixed

  std::string label() const;

  /// Inverse of label(): "basis:<k>", "random:<k>" or "mixed".
  static SigmaSpec parse(const std::string& label);

  /// Materializes the one-site state at the given dimension. Random draws
  /// are seeded from the master seed and the spec's counter only.
  Ensemble build(int dim, std::uint64_t master_seed) const;
};

struct ExperimentConfig {
  int n = 5;
  int l = 2;
  int t = 2;
  std::string base_code = "five-qubit";
  std::vector<int> insert_indices;  // empty: all of [1, n+1]
  std::vector<int> delete_indices;  // empty: all of [1, n+1]
  std::vector<SigmaSpec> sigmas;    // empty: every basis state, 3 random, mixed
  int messages = 5;
  std::uint64_t master_seed = 1;
  double threshold = 1.0 - 1e-9;
  bool branch_mode = true;  // enumerate residue branches instead of sampling
  int threads = 1;
};

/// One decoded branch (or the single sampled outcome) of one run.
struct BranchRow {
  DecodeBranch branch = DecodeBranch::UnitaryPath;
  double probability = 1;
  IndexSet s1, s2, deleted;
  Sequence results;
  double fidelity = 0;
  bool pass = false;
};

/// One (message, insertion index, deletion index, sigma) cell of the sweep.
struct RunRecord {
  int run_id = 0;
  int msg = 0;
  int insert_index = 1;
  int delete_index = 1;
  SigmaSpec sigma;
  std::uint64_t seed = 0;
  std::vector<BranchRow> rows;
  double min_fidelity = 0;
  double probability_sum = 0;
  bool pass = false;
};

struct SweepReport {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
  std::int64_t pass_count = 0;
  std::int64_t fail_count = 0;
  double min_fidelity = 1;
  bool all_pass = false;
  double wall_seconds = 0;  // informational; never serialized
};

/// Runs the full sweep: for every message, insertion index, deletion index
/// and sigma, push an encoded random message through the channel and decode.
/// Runs are independent and deterministic in (master_seed, run inputs), so
/// the report content does not depend on the thread count.
SweepReport run_experiment(const ExperimentConfig& cfg);

}  // namespace qindel
