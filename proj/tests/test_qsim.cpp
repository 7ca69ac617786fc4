#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qindel/qsim.hpp"
#include "qindel/rng.hpp"

using namespace qindel;

namespace {

Ensemble bell_pair() {
  PureState psi;
  psi.spec = QuditSpec::uniform(2, 2);
  psi.amp = Eigen::VectorXcd::Zero(4);
  psi.amp[0] = psi.amp[3] = 1.0 / std::sqrt(2.0);
  return pure_ensemble(psi);
}

}  // namespace

TEST_CASE("spec strides and flattening") {
  const QuditSpec spec({2, 3, 2});
  CHECK(spec.sites() == 3);
  CHECK(spec.total_dim() == 12);
  CHECK(spec.stride(1) == 6);
  CHECK(spec.stride(2) == 2);
  CHECK(spec.stride(3) == 1);
  CHECK_THROWS_AS(spec.dim(0), std::out_of_range);
  CHECK_THROWS_AS(QuditSpec({1}), std::invalid_argument);

  const PureState e = basis_state(spec, {1, 0, 1});
  CHECK(e.amp.size() == 12);
  CHECK(e.amp[7] == cplx(1, 0));  // 1*6 + 0*2 + 1
  CHECK(e.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(basis_state(spec, {2, 0, 0}), std::invalid_argument);

  CHECK(spec.erased(IndexSet({2}, 3)) == QuditSpec({2, 2}));
}

TEST_CASE("tensor products concatenate digits") {
  const QuditSpec a(std::vector<int>{2});
  const QuditSpec b(std::vector<int>{3});
  const PureState lhs = basis_state(a, {1});
  const PureState rhs = basis_state(b, {2});
  const PureState prod = tensor(lhs, rhs);
  CHECK(prod.spec == QuditSpec({2, 3}));
  CHECK(prod.amp[1 * 3 + 2] == cplx(1, 0));

  const PureState r1 = random_pure_state(a, 5);
  const PureState r2 = random_pure_state(b, 6);
  const PureState both = tensor(r1, r2);
  CHECK(both.amp[1 * 3 + 1] == r1.amp[1] * r2.amp[1]);
  CHECK(both.norm() == doctest::Approx(1.0));
}

TEST_CASE("index permutation scatters sites and inverts") {
  const QuditSpec spec({2, 3, 2});
  const PureState e = basis_state(spec, {1, 2, 0});
  // send site 1 -> 3, site 2 -> 1, site 3 -> 2
  const PureState moved = index_permute(e, {3, 1, 2});
  CHECK(moved.spec == QuditSpec({3, 2, 2}));
  CHECK(moved.amp[(2 * 2 + 0) * 2 + 1] == cplx(1, 0));

  const PureState back = index_permute(moved, {2, 3, 1});
  CHECK((back.amp - e.amp).norm() == doctest::Approx(0.0));
}

TEST_CASE("insertion followed by deletion restores the state") {
  const QuditSpec one(std::vector<int>{2});
  const PureState psi = random_pure_state(QuditSpec::uniform(2, 2), 9);
  const Ensemble rho = pure_ensemble(psi);

  const IndexSet J({2}, 3);
  const Ensemble grown = insert_qudits(rho, J, pure_ensemble(basis_state(one, {1})));
  CHECK(grown.spec.sites() == 3);
  CHECK(trace(grown) == doctest::Approx(1.0));

  const Ensemble back = delete_qudits(grown, J);
  CHECK(fidelity(psi, back) == doctest::Approx(1.0));

  // basis placement: |a b> with |v> inserted at 2 becomes |a v b>
  const Ensemble placed =
      insert_qudits(pure_ensemble(basis_state(QuditSpec::uniform(2, 2), {1, 0})), J,
                    pure_ensemble(basis_state(one, {1})));
  REQUIRE(placed.components.size() == 1);
  CHECK(placed.components.front().state.amp[1 * 4 + 1 * 2 + 0] == cplx(1, 0));

  CHECK(insertion_permutation(2, J) == std::vector<int>{2, 1, 3});
}

TEST_CASE("partial trace: product and entangled cases") {
  const PureState a = random_pure_state(QuditSpec::uniform(1, 2), 12);
  const PureState b = random_pure_state(QuditSpec::uniform(1, 3), 13);
  const Ensemble marginal = delete_qudits(pure_ensemble(tensor(a, b)), IndexSet({2}, 2));
  CHECK(fidelity(a, marginal) == doctest::Approx(1.0));
  CHECK(trace(marginal) == doctest::Approx(1.0));

  const Ensemble half = delete_qudits(bell_pair(), IndexSet({1}, 2));
  CHECK(trace(half) == doctest::Approx(1.0));
  CHECK(fidelity(basis_state(QuditSpec::uniform(1, 2), {0}), half) ==
        doctest::Approx(0.5));
  CHECK(half.components.size() == 2);
}

TEST_CASE("residue measurement family") {
  const MeasurementFamily fam = mt_family(2, 2);
  CHECK(fam.dim == 6);
  CHECK(fam.outcomes() == 3);
  fam.validate();
  for (int k = 0; k < 3; ++k)
    for (int v = 0; v < 6; ++v)
      CHECK(fam.projectors[static_cast<std::size_t>(k)](v, v) ==
            (v % 3 == k ? cplx(1, 0) : cplx(0, 0)));
}

TEST_CASE("measurement branches and sampling") {
  const QuditSpec spec(std::vector<int>{2});
  PureState plus;
  plus.spec = spec;
  plus.amp = Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0));

  MeasurementFamily zbasis;
  zbasis.dim = 2;
  zbasis.projectors = {Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2)};
  zbasis.projectors[0](0, 0) = 1;
  zbasis.projectors[1](1, 1) = 1;

  const auto branches = measure_branches(pure_ensemble(plus), 1, zbasis);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].outcome == 0);
  CHECK(branches[0].probability == doctest::Approx(0.5));
  CHECK(branches[1].probability == doctest::Approx(0.5));
  CHECK(trace(branches[0].post) == doctest::Approx(1.0));

  const auto basis_only =
      measure_branches(pure_ensemble(basis_state(spec, {1})), 1, zbasis);
  REQUIRE(basis_only.size() == 1);
  CHECK(basis_only.front().outcome == 1);

  const MeasureOutcome first = measure_site(pure_ensemble(plus), 1, zbasis, 77);
  const MeasureOutcome again = measure_site(pure_ensemble(plus), 1, zbasis, 77);
  CHECK(first.outcome == again.outcome);
  CHECK((first.outcome == 0 || first.outcome == 1));
}

TEST_CASE("site matrices, including rectangular embeddings") {
  const QuditSpec spec = QuditSpec::uniform(2, 2);
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(2, 2);
  flip(0, 1) = flip(1, 0) = 1;
  const PureState flipped = apply_site_matrix(basis_state(spec, {0, 1}), 2, flip);
  CHECK(flipped.amp[0] == cplx(1, 0));

  Eigen::MatrixXcd embed = Eigen::MatrixXcd::Zero(6, 2);  // |j> -> |3j + 1>
  embed(1, 0) = embed(4, 1) = 1;
  const PureState wide = apply_site_matrix(basis_state(spec, {1, 1}), 2, embed);
  CHECK(wide.spec == QuditSpec({2, 6}));
  CHECK(wide.amp[1 * 6 + 4] == cplx(1, 0));

  CHECK_THROWS_AS(apply_site_matrix(basis_state(spec, {0, 0}), 1,
                                    Eigen::MatrixXcd::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("fidelity and randomness") {
  const QuditSpec spec = QuditSpec::uniform(1, 3);
  const PureState e0 = basis_state(spec, {0});
  const PureState e1 = basis_state(spec, {1});
  CHECK(fidelity(e0, e0) == doctest::Approx(1.0));
  CHECK(fidelity(e0, e1) == doctest::Approx(0.0));

  const PureState r1 = random_pure_state(spec, 4);
  const PureState r2 = random_pure_state(spec, 4);
  const PureState r3 = random_pure_state(spec, 5);
  CHECK((r1.amp - r2.amp).norm() == doctest::Approx(0.0));
  CHECK((r1.amp - r3.amp).norm() > 1e-3);
  CHECK(r1.norm() == doctest::Approx(1.0));
}

TEST_CASE("seed derivation separates streams") {
  const std::uint64_t a = derive_seed(1, "alpha", 0);
  const std::uint64_t b = derive_seed(1, "alpha", 1);
  const std::uint64_t c = derive_seed(1, "beta", 0);
  const std::uint64_t d = derive_seed(2, "alpha", 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(a != d);
  CHECK(a == derive_seed(1, "alpha", 0));
  const double u = uniform_unit(a);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
