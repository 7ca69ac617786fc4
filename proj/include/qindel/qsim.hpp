#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qindel/seq.hpp"

namespace qindel {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-9;    // state / weight normalization
inline constexpr double kProjTol = 1e-10;   // projector family validation
inline constexpr double kDropTol = 1e-12;   // branch / component pruning

/// Ordered list of per-site dimensions. Sites are 1-based; site 1 is the
/// most significant index of the flattened amplitude vector. Sites may have
/// different dimensions (the embedding stage changes one site at a time).
struct QuditSpec {
  std::vector<int> dims;

  QuditSpec() = default;
  explicit QuditSpec(std::vector<int> d);
  static QuditSpec uniform(int sites, int dim);

  int sites() const { return static_cast<int>(dims.size()); }
  int dim(int site) const;             // 1-based
  std::int64_t total_dim() const;
  std::int64_t stride(int site) const; // product of dims of later sites

  /// Spec with the sites in J removed.
  QuditSpec erased(const IndexSet& J) const;
};

bool operator==(const QuditSpec& a, const QuditSpec& b);
bool operator!=(const QuditSpec& a, const QuditSpec& b);

struct PureState {
  QuditSpec spec;
  Eigen::VectorXcd amp;

  double norm() const { return amp.norm(); }
  void validate(double tol = kNormTol) const;
};

/// Computational basis state with the given per-site digits.
PureState basis_state(const QuditSpec& spec, const std::vector<int>& digits);

/// Haar-ish random pure state: i.i.d. complex Gaussian amplitudes,
/// normalized. Deterministic for a given seed.
PureState random_pure_state(const QuditSpec& spec, std::uint64_t seed);

/// Density operator stored by rank decomposition: a convex mixture of pure
/// states. Channels act component-wise, so low-rank states stay cheap.
struct Ensemble {
  struct Component {
    double weight = 0;
    PureState state;
  };
  QuditSpec spec;
  std::vector<Component> components;

  void validate(double tol = kNormTol) const;
};

Ensemble pure_ensemble(PureState psi);

/// Physical trace of the represented operator: sum of weight * |phi|^2.
double trace(const Ensemble& rho);

PureState tensor(const PureState& a, const PureState& b);
Ensemble tensor(const Ensemble& a, const Ensemble& b);

/// Moves site i of the input to position tau[i-1] of the output, for every
/// site. tau must be a permutation of [1, sites]; applying tau and then its
/// inverse is the identity.
PureState index_permute(const PureState& psi, const std::vector<int>& tau);
Ensemble index_permute(const Ensemble& rho, const std::vector<int>& tau);

/// Partial trace over the sites in J. Each pure component expands into the
/// conditional states of the traced sites' basis values; branches below
/// kDropTol weight are dropped.
Ensemble delete_qudits(const Ensemble& rho, const IndexSet& J);

/// Inserts the state sigma so that its sites occupy positions J of the
/// result: tensor sigma in front, then scatter by the insertion
/// permutation. Deleting J afterwards restores rho.
Ensemble insert_qudits(const Ensemble& rho, const IndexSet& J, const Ensemble& sigma);

/// The permutation on [1, n+t] that scatters the first t sites to the
/// positions in J and keeps the remaining n sites in order.
std::vector<int> insertion_permutation(int n, const IndexSet& J);

/// Projective measurement on one site: dim x dim projectors summing to the
/// identity.
struct MeasurementFamily {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> projectors;

  int outcomes() const { return static_cast<int>(projectors.size()); }
  void validate(double tol = kProjTol) const;
};

/// The residue measurement for embedded sites: t+1 projectors on dimension
/// l(t+1), the k-th spanning the basis vectors congruent to k mod (t+1).
MeasurementFamily mt_family(int l, int t);

struct MeasureOutcome {
  int outcome = 0;
  double probability = 0;
  Ensemble post;
};

/// All measurement branches with probability above threshold, in outcome
/// order; post states renormalized. Throws if everything is below threshold.
std::vector<MeasureOutcome> measure_branches(const Ensemble& rho, int site,
                                             const MeasurementFamily& fam,
                                             double threshold = kDropTol);

/// Samples one branch by inverse CDF over the branch probabilities in
/// outcome order, using the given seed.
MeasureOutcome measure_site(const Ensemble& rho, int site,
                            const MeasurementFamily& fam, std::uint64_t seed);

/// Same machinery for a family of projectors on the full space (used by the
/// base-code syndrome measurement, where dimensions are small).
std::vector<MeasureOutcome> measure_projectors_branches(
    const Ensemble& rho, const std::vector<Eigen::MatrixXcd>& projectors,
    double threshold = kDropTol);
MeasureOutcome measure_projectors(const Ensemble& rho,
                                  const std::vector<Eigen::MatrixXcd>& projectors,
                                  std::uint64_t seed);

/// <target| rho |target>. Specs must match.
double fidelity(const PureState& target, const Ensemble& rho);
double fidelity(const PureState& target, const PureState& other);

/// Applies op (d_out x d_in) to one site; the site dimension becomes d_out.
PureState apply_site_matrix(const PureState& psi, int site, const Eigen::MatrixXcd& op);
Ensemble apply_site_matrix(const Ensemble& rho, int site, const Eigen::MatrixXcd& op);

/// Applies a full-space matrix.
PureState apply_matrix(const PureState& psi, const Eigen::MatrixXcd& op);

}  // namespace qindel
