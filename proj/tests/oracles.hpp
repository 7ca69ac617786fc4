#pragma once

#include "qindel/seq.hpp"

namespace qindel::testing {

/// Indel distance by exhaustive common-subsequence search: every subsequence
/// of x is materialized from its index bitmask and matched against every
/// subsequence of y. Exponential on purpose -- it shares nothing with the DP
/// recurrence it is used to cross-check. Lengths must stay <= 16.
int oracle_indel_distance(const Sequence& x, const Sequence& y);

/// Number of maximal runs of equal symbols; the classic count of distinct
/// single-deletion results of a nonempty sequence.
int run_count(const Sequence& x);

}  // namespace qindel::testing
