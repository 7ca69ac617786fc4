#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qindel/seq.hpp"

using namespace qindel;
using testing::oracle_indel_distance;
using testing::run_count;

TEST_CASE("sequence construction and access") {
  const Sequence x(3, {0, 1, 2, 0});
  CHECK(x.size() == 4);
  CHECK(x.at(1) == 0);
  CHECK(x.at(4) == 0);
  CHECK(x.to_string() == "(0,1,2,0)");
  CHECK_THROWS_AS(x.at(0), std::out_of_range);
  CHECK_THROWS_AS(x.at(5), std::out_of_range);
  CHECK_THROWS_AS(Sequence(2, {0, 2}), std::invalid_argument);
  CHECK(Sequence(2, {}).empty());
}

TEST_CASE("index sets are strictly increasing and bounded") {
  const IndexSet S({1, 3}, 4);
  CHECK(S.size() == 2);
  CHECK(S.contains(3));
  CHECK(!S.contains(2));
  CHECK_THROWS_AS(IndexSet({3, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet({1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet({0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet({5}, 4), std::invalid_argument);

  const IndexSet T({2, 3}, 4);
  CHECK(set_union(S, T) == IndexSet({1, 2, 3}, 4));
  CHECK_THROWS_AS(set_union(S, IndexSet({1}, 9)), std::invalid_argument);
}

TEST_CASE("deletion and insertion are inverse") {
  const Sequence x(3, {0, 1, 2, 0, 1});
  CHECK(delete_at(x, IndexSet({2, 4}, 5)) == Sequence(3, {0, 2, 1}));
  CHECK(delete_at(x, IndexSet({}, 5)) == x);

  const Sequence grown =
      insert_at(Sequence(3, {0, 2, 1}), IndexSet({2, 4}, 5), Sequence(3, {1, 0}));
  CHECK(grown == x);

  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 2 + static_cast<int>(gen() % 3);
    const int n = 1 + static_cast<int>(gen() % 7);
    std::vector<int> syms;
    for (int i = 0; i < n; ++i) syms.push_back(static_cast<int>(gen() % q));
    const Sequence base(q, syms);

    const int t = static_cast<int>(gen() % std::min(n + 1, 3));
    std::vector<int> raw;
    while (static_cast<int>(raw.size()) < t) {
      const int cand = 1 + static_cast<int>(gen() % (n + t));
      bool dup = false;
      for (int r : raw) dup = dup || r == cand;
      if (!dup) raw.push_back(cand);
    }
    std::sort(raw.begin(), raw.end());
    const IndexSet S(raw, n + t);
    std::vector<int> lam;
    for (int i = 0; i < t; ++i) lam.push_back(static_cast<int>(gen() % q));

    const Sequence bigger = insert_at(base, S, Sequence(q, lam));
    CHECK(bigger.size() == n + t);
    CHECK(delete_at(bigger, S) == base);
  }
}

TEST_CASE("single-deletion ball size equals the run count") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int q = 2 + static_cast<int>(gen() % 3);
    const int n = 1 + static_cast<int>(gen() % 8);
    std::vector<int> syms;
    for (int i = 0; i < n; ++i) syms.push_back(static_cast<int>(gen() % q));
    const Sequence x(q, syms);
    CHECK(static_cast<int>(deletion_ball(x, 1).size()) == run_count(x));
  }
}

TEST_CASE("two-deletion ball matches a hand-rolled double loop") {
  const Sequence x(3, {0, 1, 2, 0, 1, 2});
  SequenceSet direct;
  for (int i = 1; i <= x.size(); ++i)
    for (int j = i + 1; j <= x.size(); ++j) {
      std::vector<int> syms = x.symbols;
      syms.erase(syms.begin() + (j - 1));
      syms.erase(syms.begin() + (i - 1));
      direct.insert(Sequence(x.q, syms));
    }
  CHECK(deletion_ball(x, 2) == direct);
}

TEST_CASE("single-indel ball is exactly the distance-2 sphere") {
  const Sequence x(3, {0, 1, 2, 0, 1});
  const SequenceSet ball = indel_ball(x, 1);
  CHECK(ball.count(x) == 0);
  for (const Sequence& y : ball) {
    CHECK(y.size() == x.size());
    CHECK(oracle_indel_distance(x, y) == 2);
  }
  // completeness over the whole length-5 cube
  int sphere = 0;
  for_each_word(x.size(), x.q, [&](const std::vector<int>& w) {
    if (oracle_indel_distance(x, Sequence(x.q, w)) == 2) ++sphere;
  });
  CHECK(static_cast<int>(ball.size()) == sphere);
}

TEST_CASE("periodic pattern and detection") {
  CHECK(monotone_periodic(8, 2) == Sequence(3, {0, 1, 2, 0, 1, 2, 0, 1}));
  CHECK(monotone_periodic(8, 2).q == 3);
  CHECK(monotone_periodic(4, 3) == Sequence(4, {0, 1, 2, 3}));

  for (int t = 2; t <= 3; ++t)
    for (int n = t + 1; n <= 9; ++n) CHECK(detects_deletions(monotone_periodic(n, t), t));

  CHECK(!detects_deletions(Sequence(2, {0, 0, 0, 0, 0}), 2));
  CHECK(detects_deletions(Sequence(5, {0, 1, 2, 3, 4}), 2));
  // with n = t there is a single deletion set, so detection holds vacuously
  CHECK(detects_deletions(Sequence(2, {0, 0}), 2));
}

TEST_CASE("transpositions and adjacent-equal families") {
  const Sequence x(3, {0, 1, 2});
  const auto swaps = transposition_family(x);
  REQUIRE(swaps.size() == 2);
  CHECK(swaps[0] == Sequence(3, {1, 0, 2}));
  CHECK(swaps[1] == Sequence(3, {0, 2, 1}));
  CHECK_THROWS_AS(transposition_family(Sequence(2, {0})), std::invalid_argument);

  const Sequence p = monotone_periodic(6, 2);
  const SequenceSet ball = indel_ball(p, 1);
  const AdjacentEqualFamily fam = adjacent_equal_family(p, 1);
  REQUIRE(static_cast<int>(fam.per_index.size()) == p.size() - 1);
  for (int i = 1; i < p.size(); ++i)
    for (const Sequence& z : fam.per_index[static_cast<std::size_t>(i - 1)]) {
      CHECK(ball.count(z) == 1);
      CHECK(z.at(i) == z.at(i + 1));
    }
  for (const Sequence& z : fam.all) CHECK(ball.count(z) == 1);
  // swapped-pair sequences never have an equal adjacent pair here
  for (const Sequence& tr : transposition_family(p)) CHECK(fam.all.count(tr) == 0);
}

TEST_CASE("detecting-set enumeration") {
  const auto members = enumerate_detecting_set(5, 3, 2, 1'000'000);
  // window distinctness forces a periodic orbit: 3 * 2 relabelings survive
  CHECK(members.size() == 6);
  bool has_pattern = false;
  for (const Sequence& x : members) {
    CHECK(detects_deletions(x, 2));
    has_pattern = has_pattern || x == monotone_periodic(5, 2);
  }
  CHECK(has_pattern);
  CHECK_THROWS_AS(enumerate_detecting_set(8, 3, 2, 100), std::runtime_error);
}

TEST_CASE("subset and word iteration") {
  int subsets = 0;
  for_each_subset(5, 2, [&](const std::vector<int>& s) {
    CHECK(s.size() == 2);
    CHECK(s[0] < s[1]);
    ++subsets;
  });
  CHECK(subsets == 10);

  int words = 0;
  std::vector<int> first, last;
  for_each_word(4, 3, [&](const std::vector<int>& w) {
    if (words == 0) first = w;
    last = w;
    ++words;
  });
  CHECK(words == 81);
  CHECK(first == std::vector<int>{0, 0, 0, 0});
  CHECK(last == std::vector<int>{2, 2, 2, 2});
}
