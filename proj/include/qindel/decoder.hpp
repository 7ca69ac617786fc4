#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qindel/editgraph.hpp"
#include "qindel/mhcode.hpp"

namespace qindel {

/// One insertion followed by one deletion, at independent positions in
/// [1, n+1]. The inserted site carries sigma, a (possibly mixed) state of
/// the embedded dimension.
struct ChannelSpec {
  int insert_index = 1;  // where the fresh site lands
  Ensemble sigma;        // one site, dimension l(t+1)
  int delete_index = 1;  // which site of the n+1 is then traced out
};

/// insert_qudits at insert_index, then delete_qudits at delete_index. The
/// output has n sites again. Deleting where one inserted is the identity.
Ensemble apply_insdel(const PureState& codeword, const ChannelSpec& ch);

enum class DecodeBranch { UnitaryPath, DeletionPath };
std::string to_string(DecodeBranch b);

/// UnitaryPath iff r equals the code's measurement pattern.
DecodeBranch classify_branch(const Sequence& r, int n, int t);

struct DecodeReport {
  int n = 0, l = 0, t = 0;
  std::uint64_t seed = 0;
  Sequence results;  // r, the per-site residue outcomes
  DecodeBranch branch = DecodeBranch::UnitaryPath;
  IndexSet S1, S2, deleted;    // empty on the unitary path
  double output_fidelity = -1; // filled by callers that know the message
};

/// The full decoding pipeline on a received state: measure every site's
/// residue (sampled via seed), then either correct a single error (r = m)
/// or locate the insertion candidates from the DP table, delete them, and
/// run the deletion decoder on the threaded results.
std::pair<Ensemble, DecodeReport> decode(const MHCode& code, const Ensemble& rho,
                                         std::uint64_t rng_seed);

/// Every residue-measurement branch of the pipeline with its probability,
/// decoded deterministically (syndrome branches mixed). The channel leaves
/// at most one site undetermined, so the branch count stays at most t+1.
struct DecodeBranchResult {
  double probability = 0;
  DecodeReport report;
  Ensemble message;
};
std::vector<DecodeBranchResult> decode_branches(const MHCode& code,
                                                const Ensemble& rho);

}  // namespace qindel
