#include "qindel/editgraph.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qindel {

namespace {

void check_same_alphabet(const Sequence& x, const Sequence& y) {
  if (x.q != y.q) throw std::invalid_argument("sequences over different alphabets");
}

}  // namespace

EditMatrix edit_matrix(const Sequence& x, const Sequence& y) {
  check_same_alphabet(x, y);
  EditMatrix H;
  H.n = x.size();
  H.m = y.size();
  H.h.assign(static_cast<std::size_t>(H.n + 1) * (H.m + 1), 0);
  for (int i = 0; i <= H.n; ++i) H.at(i, 0) = i;
  for (int j = 0; j <= H.m; ++j) H.at(0, j) = j;
  for (int i = 1; i <= H.n; ++i) {
    for (int j = 1; j <= H.m; ++j) {
      const int sub = H.at(i - 1, j - 1) + (x.at(i) != y.at(j) ? 2 : 0);
      H.at(i, j) = std::min({H.at(i, j - 1) + 1, H.at(i - 1, j) + 1, sub});
    }
  }
  return H;
}

int indel_distance(const Sequence& x, const Sequence& y) {
  return edit_matrix(x, y).distance();
}

EditGraph build_graph(const Sequence& x, const Sequence& y, const EditMatrix& H) {
  if (H.n != x.size() || H.m != y.size())
    throw std::invalid_argument("matrix does not match sequences");
  EditGraph G;
  G.n = H.n;
  G.m = H.m;
  G.arcs.assign(static_cast<std::size_t>(G.n + 1) * (G.m + 1), 0);
  for (int i = 0; i <= G.n; ++i) {
    for (int j = 0; j <= G.m; ++j) {
      std::uint8_t bits = 0;
      if (i >= 1 && H.at(i, j) == H.at(i - 1, j) + 1) bits |= 1u << 0;
      if (i >= 1 && j >= 1 && x.at(i) == y.at(j)) bits |= 1u << 1;
      if (j >= 1 && H.at(i, j) == H.at(i, j - 1) + 1) bits |= 1u << 2;
      G.arcs[static_cast<std::size_t>(i) * (G.m + 1) + j] = bits;
    }
  }
  return G;
}

bool operator==(const Vertex& a, const Vertex& b) { return a.i == b.i && a.j == b.j; }

std::string DPPath::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (k) os << ' ';
    os << 'v' << vertices[k].i << ',' << vertices[k].j;
  }
  return os.str();
}

bool operator==(const DPPath& a, const DPPath& b) {
  return a.vertices == b.vertices && a.steps == b.steps;
}

// One backtracking pass over H with an explicit branch priority. The loop
// is the literal while (i >= 1 or j >= 1) of the subroutines; by the
// progress property of the digraph some branch always fires, which the
// final check enforces.
DPPath trace_with_priority(const Sequence& x, const Sequence& y, const EditMatrix& H,
                           const std::array<ArcType, 3>& priority) {
  if (H.n != x.size() || H.m != y.size())
    throw std::invalid_argument("matrix does not match sequences");
  DPPath path;
  int i = H.n, j = H.m;
  path.vertices.push_back({i, j});
  while (i >= 1 || j >= 1) {
    bool moved = false;
    for (ArcType t : priority) {
      if (t == ArcType::Up && i >= 1 && H.at(i, j) == H.at(i - 1, j) + 1) {
        --i;
      } else if (t == ArcType::Diag && i >= 1 && j >= 1 && x.at(i) == y.at(j)) {
        --i;
        --j;
      } else if (t == ArcType::Left && j >= 1 && H.at(i, j) == H.at(i, j - 1) + 1) {
        --j;
      } else {
        continue;
      }
      path.vertices.push_back({i, j});
      path.steps.push_back(t);
      moved = true;
      break;
    }
    if (!moved)
      throw std::logic_error("backtracking stuck at v" + std::to_string(i) + "," +
                             std::to_string(j) + ": no arc applies");
  }
  return path;
}

DPPath path_bot(const Sequence& x, const Sequence& y, const EditMatrix& H) {
  return trace_with_priority(x, y, H, {ArcType::Up, ArcType::Diag, ArcType::Left});
}

DPPath path_top(const Sequence& x, const Sequence& y, const EditMatrix& H) {
  return trace_with_priority(x, y, H, {ArcType::Left, ArcType::Diag, ArcType::Up});
}

IndexSet f_insert(const DPPath& P) {
  std::vector<int> cols;
  for (std::size_t k = 0; k < P.steps.size(); ++k)
    if (P.steps[k] == ArcType::Left) cols.push_back(P.vertices[k].j);
  std::sort(cols.begin(), cols.end());
  const int m = P.vertices.empty() ? 0 : P.vertices.front().j;
  return IndexSet(std::move(cols), m);
}

IndexSet f_delete(const DPPath& P) {
  std::vector<int> rows;
  for (std::size_t k = 0; k < P.steps.size(); ++k)
    if (P.steps[k] == ArcType::Up) rows.push_back(P.vertices[k].i);
  std::sort(rows.begin(), rows.end());
  const int n = P.vertices.empty() ? 0 : P.vertices.front().i;
  return IndexSet(std::move(rows), n);
}

std::pair<IndexSet, IndexSet> candidate_insertion_indices(const Sequence& x,
                                                          const Sequence& y) {
  const EditMatrix H = edit_matrix(x, y);
  return {f_insert(path_bot(x, y, H)), f_insert(path_top(x, y, H))};
}

IndexSet ball_overlap_indices(const Sequence& x, const Sequence& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("ball_overlap_indices requires |x| = |y|");
  const SequenceSet ball = deletion_ball(x, std::min(1, x.size()));
  std::vector<int> hits;
  for (int j = 1; j <= y.size(); ++j) {
    if (ball.count(delete_at(y, IndexSet({j}, y.size())))) hits.push_back(j);
  }
  return IndexSet(std::move(hits), y.size());
}

std::vector<DPPath> enumerate_paths(const EditGraph& G, PathEnumLimits lim) {
  if (G.n > lim.max_dim || G.m > lim.max_dim)
    throw std::runtime_error("path enumeration refused: grid " + std::to_string(G.n) +
                             "x" + std::to_string(G.m) + " exceeds max_dim " +
                             std::to_string(lim.max_dim));
  std::vector<DPPath> paths;
  DPPath cur;
  cur.vertices.push_back({G.n, G.m});

  // iterative DFS; arcs tried in type order for a deterministic listing
  constexpr std::array<ArcType, 3> kOrder{ArcType::Up, ArcType::Diag, ArcType::Left};
  std::vector<int> next_arc{0};
  while (!next_arc.empty()) {
    const Vertex v = cur.vertices.back();
    if (v.i == 0 && v.j == 0) {
      if (paths.size() >= lim.max_paths)
        throw std::runtime_error("path enumeration budget exceeded: more than " +
                                 std::to_string(lim.max_paths) + " paths");
      paths.push_back(cur);
      next_arc.pop_back();
      cur.vertices.pop_back();
      if (!cur.steps.empty()) cur.steps.pop_back();
      continue;
    }
    bool advanced = false;
    while (next_arc.back() < 3) {
      const ArcType t = kOrder[static_cast<std::size_t>(next_arc.back()++)];
      if (!G.has_arc(v.i, v.j, t)) continue;
      Vertex w = v;
      if (t == ArcType::Up) --w.i;
      else if (t == ArcType::Diag) { --w.i; --w.j; }
      else --w.j;
      cur.vertices.push_back(w);
      cur.steps.push_back(t);
      next_arc.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced) {
      next_arc.pop_back();
      cur.vertices.pop_back();
      if (!cur.steps.empty()) cur.steps.pop_back();
    }
  }
  return paths;
}

bool poset_leq(const DPPath& P, const DPPath& Q) {
  if (P.vertices.empty() || Q.vertices.empty())
    throw std::invalid_argument("empty path");
  const int m = P.vertices.front().j;
  if (Q.vertices.front().j != m || P.vertices.front().i != Q.vertices.front().i)
    throw std::invalid_argument("paths from different grids");
  const int kInf = std::numeric_limits<int>::max();
  std::vector<int> pmin(static_cast<std::size_t>(m) + 1, kInf), pmax(static_cast<std::size_t>(m) + 1, -1);
  std::vector<int> qmin(static_cast<std::size_t>(m) + 1, kInf), qmax(static_cast<std::size_t>(m) + 1, -1);
  for (const Vertex& v : P.vertices) {
    pmin[static_cast<std::size_t>(v.j)] = std::min(pmin[static_cast<std::size_t>(v.j)], v.i);
    pmax[static_cast<std::size_t>(v.j)] = std::max(pmax[static_cast<std::size_t>(v.j)], v.i);
  }
  for (const Vertex& v : Q.vertices) {
    qmin[static_cast<std::size_t>(v.j)] = std::min(qmin[static_cast<std::size_t>(v.j)], v.i);
    qmax[static_cast<std::size_t>(v.j)] = std::max(qmax[static_cast<std::size_t>(v.j)], v.i);
  }
  for (int j = 0; j <= m; ++j) {
    if (pmin[static_cast<std::size_t>(j)] == kInf || qmin[static_cast<std::size_t>(j)] == kInf)
      throw std::logic_error("corner-to-corner path skips column " + std::to_string(j));
    if (pmin[static_cast<std::size_t>(j)] > qmin[static_cast<std::size_t>(j)]) return false;
    if (pmax[static_cast<std::size_t>(j)] > qmax[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

}  // namespace qindel
