#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qindel/seq.hpp"

namespace qindel {

/// DP table of the indel distance: entry (i, j) is the distance between the
/// length-i prefix of x and the length-j prefix of y. Substitutions cost 2,
/// so the recurrence only mixes a unit insertion step, a unit deletion step
/// and a free diagonal step on matching symbols.
struct EditMatrix {
  int n = 0;  // rows - 1, indexes x
  int m = 0;  // cols - 1, indexes y
  std::vector<int> h;  // (n+1) x (m+1), row-major

  int at(int i, int j) const { return h[static_cast<std::size_t>(i) * (m + 1) + j]; }
  int& at(int i, int j) { return h[static_cast<std::size_t>(i) * (m + 1) + j]; }
  int distance() const { return at(n, m); }
};

EditMatrix edit_matrix(const Sequence& x, const Sequence& y);
int indel_distance(const Sequence& x, const Sequence& y);

enum class ArcType : int { Up = 1, Diag = 2, Left = 3 };

/// Digraph on the DP grid. Each vertex (i, j) has at most one outgoing arc
/// per type: type 1 to (i-1, j) where the distance drops by one, type 2 to
/// (i-1, j-1) where x_i = y_j, type 3 to (i, j-1) where the distance drops
/// by one. Every vertex except (0, 0) has at least one outgoing arc.
struct EditGraph {
  int n = 0;
  int m = 0;
  std::vector<std::uint8_t> arcs;  // 3 bits per vertex, row-major

  bool has_arc(int i, int j, ArcType t) const {
    return arcs[static_cast<std::size_t>(i) * (m + 1) + j] &
           (1u << (static_cast<int>(t) - 1));
  }
};

EditGraph build_graph(const Sequence& x, const Sequence& y, const EditMatrix& H);

struct Vertex {
  int i = 0;
  int j = 0;
};
bool operator==(const Vertex& a, const Vertex& b);

/// A corner-to-corner path: vertices run from (n, m) down to (0, 0) and
/// steps[k] is the arc type joining vertices[k] to vertices[k+1].
struct DPPath {
  std::vector<Vertex> vertices;
  std::vector<ArcType> steps;

  std::string to_string() const;
};
bool operator==(const DPPath& a, const DPPath& b);

/// Backtracking traces over the DP table. path_bot prefers up, then
/// diagonal, then left at every step; path_top prefers left, then diagonal,
/// then up. They realize the minimum and maximum of the path poset.
DPPath path_bot(const Sequence& x, const Sequence& y, const EditMatrix& H);
DPPath path_top(const Sequence& x, const Sequence& y, const EditMatrix& H);

/// Backtracking with an arbitrary branch priority. path_bot and path_top fix
/// theirs; this entry point exists so the verification suite can inject a
/// wrong priority and confirm the property checks catch it.
DPPath trace_with_priority(const Sequence& x, const Sequence& y,
                           const EditMatrix& H,
                           const std::array<ArcType, 3>& priority);

/// Column indices of the type-3 arcs of P (insertion positions in y), and
/// row indices of the type-1 arcs of P (deletion positions in x).
IndexSet f_insert(const DPPath& P);
IndexSet f_delete(const DPPath& P);

/// The candidate insertion-index pair (S1, S2) = (f_insert of the bottom
/// path, f_insert of the top path) computed from a fresh DP table.
std::pair<IndexSet, IndexSet> candidate_insertion_indices(const Sequence& x,
                                                          const Sequence& y);

/// Ground truth for the candidates: the set of positions j of y whose
/// deletion lands in the single-deletion ball of x, found by enumeration.
/// Requires |y| = |x|.
IndexSet ball_overlap_indices(const Sequence& x, const Sequence& y);

struct PathEnumLimits {
  int max_dim = 8;                  // largest allowed n, m
  std::uint64_t max_paths = 2'000'000;
};

/// All corner-to-corner paths of G, depth-first with arcs tried in type
/// order. Exponential in general; throws when the limits are exceeded.
std::vector<DPPath> enumerate_paths(const EditGraph& G, PathEnumLimits lim = {});

/// Componentwise order on paths: P <= Q iff for every column both the
/// smallest and the largest row index that P visits there are <= Q's.
bool poset_leq(const DPPath& P, const DPPath& Q);

}  // namespace qindel
