#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace qindel {

/// Finite word over the alphabet Z_q = {0, ..., q-1}. May be empty.
/// Positions are 1-based everywhere in this library, matching the usual
/// coding-theory convention; the underlying storage is 0-based.
struct Sequence {
  int q = 2;
  std::vector<int> symbols;

  Sequence() = default;
  Sequence(int alphabet_size, std::vector<int> syms);

  int size() const { return static_cast<int>(symbols.size()); }
  bool empty() const { return symbols.empty(); }

  /// 1-based access.
  int at(int i) const;

  std::string to_string() const;
};

/// Ordering and equality look at the symbols only; the alphabet size is
/// carried metadata. Operations that combine sequences check alphabets.
bool operator==(const Sequence& a, const Sequence& b);
bool operator!=(const Sequence& a, const Sequence& b);
bool operator<(const Sequence& a, const Sequence& b);

using SequenceSet = std::set<Sequence>;

/// Strictly increasing set of 1-based indices into an ambient range
/// [1, bound]. Used for deletion/insertion positions and site subsets.
struct IndexSet {
  std::vector<int> indices;
  int bound = 0;

  IndexSet() = default;
  IndexSet(std::vector<int> idx, int ambient_bound);

  int size() const { return static_cast<int>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool contains(int i) const;

  std::string to_string() const;
};

bool operator==(const IndexSet& a, const IndexSet& b);
bool operator!=(const IndexSet& a, const IndexSet& b);

/// Union of two index sets over the same ambient bound.
IndexSet set_union(const IndexSet& a, const IndexSet& b);

/// Removes the symbols of x at the positions in S. Requires S.bound == |x|.
Sequence delete_at(const Sequence& x, const IndexSet& S);

/// Inserts the symbols of lambda so that position S.indices[k] of the result
/// holds lambda[k]. Requires |S| == |lambda| and S.bound == |x| + |S|.
/// Deleting S from the result recovers x.
Sequence insert_at(const Sequence& x, const IndexSet& S, const Sequence& lambda);

/// All distinct results of t deletions applied to x.
SequenceSet deletion_ball(const Sequence& x, int t);

/// All distinct results of t insertions followed by t deletions applied to
/// x, with x itself removed.
SequenceSet indel_ball(const Sequence& x, int t);

/// The periodic sequence m over Z_{t+1} with m_i = (i-1) mod (t+1).
Sequence monotone_periodic(int n, int t);

/// True iff the map S -> D_S(x) over all size-t index sets is injective,
/// i.e. the t deletion positions can always be recovered from the result.
bool detects_deletions(const Sequence& x, int t);

/// The n-1 sequences obtained from x by swapping one adjacent symbol pair;
/// entry i-1 swaps positions i and i+1.
std::vector<Sequence> transposition_family(const Sequence& x);

/// The subsets U^(i) of indel_ball(x, 1) whose symbols at positions i, i+1
/// are equal, for each i in [1, n-1], plus their union.
struct AdjacentEqualFamily {
  std::vector<SequenceSet> per_index;  // entry i-1 holds U^(i)
  SequenceSet all;
};
AdjacentEqualFamily adjacent_equal_family(const Sequence& x, int t);

/// Exhaustively enumerates the sequences of length n over Z_q from which t
/// deletion positions are always recoverable. Throws if q^n exceeds budget.
std::vector<Sequence> enumerate_detecting_set(int n, int q, int t,
                                              std::uint64_t budget);

/// Calls fn for every strictly increasing t-subset of [1, n].
void for_each_subset(int n, int t,
                     const std::function<void(const std::vector<int>&)>& fn);

/// Calls fn for every word of length len over Z_q (odometer order).
void for_each_word(int len, int q,
                   const std::function<void(const std::vector<int>&)>& fn);

}  // namespace qindel
