#include "qindel/seq.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qindel {

Sequence::Sequence(int alphabet_size, std::vector<int> syms)
    : q(alphabet_size), symbols(std::move(syms)) {
  if (q < 1) throw std::invalid_argument("alphabet size must be >= 1");
  for (int s : symbols) {
    if (s < 0 || s >= q)
      throw std::invalid_argument("symbol " + std::to_string(s) +
                                  " outside alphabet Z_" + std::to_string(q));
  }
}

int Sequence::at(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("sequence index " + std::to_string(i));
  return symbols[static_cast<std::size_t>(i) - 1];
}

std::string Sequence::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < size(); ++i) {
    if (i) os << ',';
    os << symbols[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

bool operator==(const Sequence& a, const Sequence& b) { return a.symbols == b.symbols; }
bool operator!=(const Sequence& a, const Sequence& b) { return !(a == b); }
bool operator<(const Sequence& a, const Sequence& b) { return a.symbols < b.symbols; }

IndexSet::IndexSet(std::vector<int> idx, int ambient_bound)
    : indices(std::move(idx)), bound(ambient_bound) {
  if (bound < 0) throw std::invalid_argument("index set bound must be >= 0");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k] > bound)
      throw std::invalid_argument("index " + std::to_string(indices[k]) +
                                  " outside [1," + std::to_string(bound) + "]");
    if (k > 0 && indices[k] <= indices[k - 1])
      throw std::invalid_argument("index set not strictly increasing");
  }
}

bool IndexSet::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) os << ',';
    os << indices[k];
  }
  os << '}';
  return os.str();
}

bool operator==(const IndexSet& a, const IndexSet& b) { return a.indices == b.indices; }
bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  if (a.bound != b.bound) throw std::invalid_argument("index set bounds differ");
  std::vector<int> merged;
  std::set_union(a.indices.begin(), a.indices.end(), b.indices.begin(),
                 b.indices.end(), std::back_inserter(merged));
  return IndexSet(std::move(merged), a.bound);
}

Sequence delete_at(const Sequence& x, const IndexSet& S) {
  if (S.bound != x.size())
    throw std::invalid_argument("deletion set bound " + std::to_string(S.bound) +
                                " != sequence length " + std::to_string(x.size()));
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(x.size() - S.size()));
  for (int i = 1; i <= x.size(); ++i)
    if (!S.contains(i)) out.push_back(x.at(i));
  return Sequence(x.q, std::move(out));
}

Sequence insert_at(const Sequence& x, const IndexSet& S, const Sequence& lambda) {
  if (S.size() != lambda.size())
    throw std::invalid_argument("insertion set and symbol list lengths differ");
  if (S.bound != x.size() + S.size())
    throw std::invalid_argument("insertion set bound must be |x| + |S|");
  if (lambda.q > x.q)
    throw std::invalid_argument("insertion symbols outside alphabet");
  const int n_out = x.size() + S.size();
  std::vector<int> out(static_cast<std::size_t>(n_out));
  int src = 1, ins = 0;
  for (int pos = 1; pos <= n_out; ++pos) {
    if (ins < S.size() && S.indices[static_cast<std::size_t>(ins)] == pos) {
      out[static_cast<std::size_t>(pos) - 1] = lambda.at(ins + 1);
      ++ins;
    } else {
      out[static_cast<std::size_t>(pos) - 1] = x.at(src++);
    }
  }
  return Sequence(x.q, std::move(out));
}

void for_each_subset(int n, int t,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (t < 0 || t > n) return;
  std::vector<int> pick(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) pick[static_cast<std::size_t>(k)] = k + 1;
  while (true) {
    fn(pick);
    // advance to the next strictly increasing t-subset of [1, n]
    int k = t - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - (t - 1 - k)) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < t; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
  }
}

void for_each_word(int len, int q,
                   const std::function<void(const std::vector<int>&)>& fn) {
  if (len < 0) throw std::invalid_argument("negative word length");
  std::vector<int> word(static_cast<std::size_t>(len), 0);
  while (true) {
    fn(word);
    int k = len - 1;
    while (k >= 0 && word[static_cast<std::size_t>(k)] == q - 1) {
      word[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++word[static_cast<std::size_t>(k)];
  }
}

SequenceSet deletion_ball(const Sequence& x, int t) {
  if (t < 0 || t > x.size())
    throw std::invalid_argument("deletion count out of range");
  SequenceSet ball;
  for_each_subset(x.size(), t, [&](const std::vector<int>& s) {
    ball.insert(delete_at(x, IndexSet(s, x.size())));
  });
  return ball;
}

SequenceSet indel_ball(const Sequence& x, int t) {
  if (t < 0) throw std::invalid_argument("negative insertion count");
  SequenceSet ball;
  const int n_big = x.size() + t;
  for_each_subset(n_big, t, [&](const std::vector<int>& ins) {
    const IndexSet T(ins, n_big);
    for_each_word(t, x.q, [&](const std::vector<int>& lam) {
      const Sequence z = insert_at(x, T, Sequence(x.q, lam));
      for_each_subset(n_big, t, [&](const std::vector<int>& del) {
        ball.insert(delete_at(z, IndexSet(del, n_big)));
      });
    });
  });
  ball.erase(x);
  return ball;
}

Sequence monotone_periodic(int n, int t) {
  if (n < 1 || t < 0) throw std::invalid_argument("monotone_periodic needs n >= 1, t >= 0");
  std::vector<int> syms(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) syms[static_cast<std::size_t>(i) - 1] = (i - 1) % (t + 1);
  return Sequence(t + 1, std::move(syms));
}

bool detects_deletions(const Sequence& x, int t) {
  if (t < 0 || t > x.size())
    throw std::invalid_argument("deletion count out of range");
  std::map<Sequence, std::vector<int>> seen;
  bool injective = true;
  for_each_subset(x.size(), t, [&](const std::vector<int>& s) {
    if (!injective) return;
    const Sequence res = delete_at(x, IndexSet(s, x.size()));
    auto [it, inserted] = seen.emplace(res, s);
    if (!inserted && it->second != s) injective = false;
  });
  return injective;
}

std::vector<Sequence> transposition_family(const Sequence& x) {
  if (x.size() < 2) throw std::invalid_argument("transpositions need length >= 2");
  std::vector<Sequence> out;
  out.reserve(static_cast<std::size_t>(x.size()) - 1);
  for (int i = 1; i < x.size(); ++i) {
    Sequence t = x;
    std::swap(t.symbols[static_cast<std::size_t>(i) - 1], t.symbols[static_cast<std::size_t>(i)]);
    out.push_back(std::move(t));
  }
  return out;
}

AdjacentEqualFamily adjacent_equal_family(const Sequence& x, int t) {
  (void)t;  // membership of x in the detecting set is the caller's contract
  AdjacentEqualFamily fam;
  const SequenceSet ball = indel_ball(x, 1);
  fam.per_index.resize(static_cast<std::size_t>(x.size()) - 1);
  for (const Sequence& z : ball) {
    for (int i = 1; i < x.size(); ++i) {
      if (z.at(i) == z.at(i + 1)) {
        fam.per_index[static_cast<std::size_t>(i) - 1].insert(z);
        fam.all.insert(z);
      }
    }
  }
  return fam;
}

std::vector<Sequence> enumerate_detecting_set(int n, int q, int t,
                                              std::uint64_t budget) {
  if (n < 1 || q < 1 || t < 0) throw std::invalid_argument("bad enumeration parameters");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > budget)
      throw std::runtime_error("detecting-set enumeration budget exceeded: q^n = " +
                               std::to_string(q) + "^" + std::to_string(n) +
                               " > " + std::to_string(budget));
  }
  std::vector<Sequence> members;
  for_each_word(n, q, [&](const std::vector<int>& w) {
    Sequence x(q, w);
    if (detects_deletions(x, t)) members.push_back(std::move(x));
  });
  return members;
}

}  // namespace qindel
