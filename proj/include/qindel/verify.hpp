#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qindel {

/// Aggregate result of a verification sweep. Failure messages are full
/// counterexamples, enough to rerun the offending case by hand; only the
/// first few are stored, the count is exact.
struct VerifySummary {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<std::string> failure_messages;

  bool ok() const { return failures == 0; }
  void fail(std::string message);
  void merge(const VerifySummary& other);
};

/// Deliberate bugs the classical suite can inject into itself, to prove the
/// property checks have teeth.
enum class FaultInjection {
  None,
  SwapSubroutinePriorities,  // trace the extremal paths with swapped branch order
};

struct ClassicalVerifyConfig {
  std::vector<int> ts = {2, 3};  // capabilities to sweep; every t must be >= 2
  int n_min = 5;
  int n_max = 10;
  int bruteforce_n_max = 8;   // exhaustive detecting-set enumeration bounds
  int bruteforce_q_max = 3;
  int random_pairs = 500;     // unconstrained (x, y) pairs for the path lemmas
  int random_len_max = 7;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;  // enumeration guard (words scanned)
  FaultInjection fault = FaultInjection::None;
};

/// Exhaustive candidate-index verification: for detecting sequences x and
/// every y one insertion plus one deletion away, the two subroutine outputs
/// must be singletons whose union equals the brute-force set of positions j
/// with D_j(y) a deletion of x. Also checks the supporting path properties
/// (out-degrees, arc counts, the common-subsequence identity, extremality
/// of the two traces, and the deletion-ball intersection identities) on the
/// same pairs and on random unconstrained pairs. Throws std::invalid_argument
/// for t < 2, which is outside the hypothesis of everything above.
VerifySummary verify_classical(const ClassicalVerifyConfig& cfg, std::ostream& log);

struct QuantumVerifyConfig {
  int n = 5;
  int l = 2;
  int t = 2;
  int messages = 3;  // random logical states per sweep point
  std::uint64_t seed = 1;
};

/// Certificates for the quantum half: base-code isometry/correctability
/// checks (including a deliberate non-example), erasure and single-error
/// recovery sweeps, embedding round trips, deletion-decoder round trips,
/// and the insert-then-delete-at-the-same-place identity.
VerifySummary verify_quantum(const QuantumVerifyConfig& cfg, std::ostream& log);

}  // namespace qindel
