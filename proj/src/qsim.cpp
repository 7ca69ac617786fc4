#include "qindel/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qindel/rng.hpp"

namespace qindel {

QuditSpec::QuditSpec(std::vector<int> d) : dims(std::move(d)) {
  for (int dim : dims)
    if (dim < 2) throw std::invalid_argument("site dimension must be >= 2");
}

QuditSpec QuditSpec::uniform(int sites, int dim) {
  if (sites < 0) throw std::invalid_argument("negative site count");
  return QuditSpec(std::vector<int>(static_cast<std::size_t>(sites), dim));
}

int QuditSpec::dim(int site) const {
  if (site < 1 || site > sites()) throw std::out_of_range("site index " + std::to_string(site));
  return dims[static_cast<std::size_t>(site) - 1];
}

std::int64_t QuditSpec::total_dim() const {
  std::int64_t total = 1;
  for (int d : dims) total *= d;
  return total;
}

std::int64_t QuditSpec::stride(int site) const {
  if (site < 1 || site > sites()) throw std::out_of_range("site index " + std::to_string(site));
  std::int64_t s = 1;
  for (int k = site + 1; k <= sites(); ++k) s *= dim(k);
  return s;
}

QuditSpec QuditSpec::erased(const IndexSet& J) const {
  if (J.bound != sites()) throw std::invalid_argument("index set bound != site count");
  std::vector<int> rest;
  for (int i = 1; i <= sites(); ++i)
    if (!J.contains(i)) rest.push_back(dim(i));
  return QuditSpec(std::move(rest));
}

bool operator==(const QuditSpec& a, const QuditSpec& b) { return a.dims == b.dims; }
bool operator!=(const QuditSpec& a, const QuditSpec& b) { return !(a == b); }

void PureState::validate(double tol) const {
  if (amp.size() != spec.total_dim())
    throw std::invalid_argument("amplitude length does not match spec");
  if (std::abs(norm() - 1.0) > tol)
    throw std::invalid_argument("state norm " + std::to_string(norm()) + " not 1");
}

PureState basis_state(const QuditSpec& spec, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != spec.sites())
    throw std::invalid_argument("digit count does not match spec");
  std::int64_t idx = 0;
  for (int i = 1; i <= spec.sites(); ++i) {
    const int v = digits[static_cast<std::size_t>(i) - 1];
    if (v < 0 || v >= spec.dim(i)) throw std::invalid_argument("digit out of range");
    idx = idx * spec.dim(i) + v;
  }
  PureState psi{spec, Eigen::VectorXcd::Zero(spec.total_dim())};
  psi.amp[idx] = 1.0;
  return psi;
}

PureState random_pure_state(const QuditSpec& spec, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amp(spec.total_dim());
  for (Eigen::Index k = 0; k < amp.size(); ++k) amp[k] = cplx(gauss(gen), gauss(gen));
  amp.normalize();
  return PureState{spec, std::move(amp)};
}

void Ensemble::validate(double tol) const {
  double total = 0;
  for (const Component& c : components) {
    if (c.weight <= 0) throw std::invalid_argument("nonpositive ensemble weight");
    if (c.state.spec != spec) throw std::invalid_argument("component spec mismatch");
    c.state.validate(tol);
    total += c.weight;
  }
  if (std::abs(total - 1.0) > tol)
    throw std::invalid_argument("ensemble weights sum to " + std::to_string(total));
}

Ensemble pure_ensemble(PureState psi) {
  Ensemble rho;
  rho.spec = psi.spec;
  rho.components.push_back({1.0, std::move(psi)});
  return rho;
}

double trace(const Ensemble& rho) {
  double t = 0;
  for (const auto& c : rho.components) t += c.weight * c.state.amp.squaredNorm();
  return t;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.spec.dims;
  dims.insert(dims.end(), b.spec.dims.begin(), b.spec.dims.end());
  PureState out{QuditSpec(std::move(dims)), Eigen::VectorXcd(a.amp.size() * b.amp.size())};
  for (Eigen::Index i = 0; i < a.amp.size(); ++i)
    out.amp.segment(i * b.amp.size(), b.amp.size()) = a.amp[i] * b.amp;
  return out;
}

Ensemble tensor(const Ensemble& a, const Ensemble& b) {
  Ensemble out;
  for (const auto& ca : a.components)
    for (const auto& cb : b.components)
      out.components.push_back({ca.weight * cb.weight, tensor(ca.state, cb.state)});
  out.spec = out.components.empty() ? QuditSpec{} : out.components.front().state.spec;
  return out;
}

namespace {

void check_permutation(const std::vector<int>& tau, int sites) {
  if (static_cast<int>(tau.size()) != sites)
    throw std::invalid_argument("permutation length != site count");
  std::vector<bool> seen(static_cast<std::size_t>(sites), false);
  for (int v : tau) {
    if (v < 1 || v > sites || seen[static_cast<std::size_t>(v) - 1])
      throw std::invalid_argument("not a permutation of sites");
    seen[static_cast<std::size_t>(v) - 1] = true;
  }
}

}  // namespace

PureState index_permute(const PureState& psi, const std::vector<int>& tau) {
  const int n = psi.spec.sites();
  check_permutation(tau, n);
  std::vector<int> new_dims(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    new_dims[static_cast<std::size_t>(tau[static_cast<std::size_t>(i) - 1]) - 1] = psi.spec.dim(i);
  QuditSpec out_spec{new_dims};

  // precompute, per input site, the output stride of its target position
  std::vector<std::int64_t> out_stride(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    out_stride[static_cast<std::size_t>(i) - 1] = out_spec.stride(tau[static_cast<std::size_t>(i) - 1]);

  PureState out{out_spec, Eigen::VectorXcd::Zero(psi.amp.size())};
  const std::int64_t total = psi.amp.size();
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t target = 0;
    for (int i = 0; i < n; ++i) target += digits[static_cast<std::size_t>(i)] * out_stride[static_cast<std::size_t>(i)];
    out.amp[target] = psi.amp[idx];
    // odometer over input digits, least significant site last
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[static_cast<std::size_t>(i)] < psi.spec.dim(i + 1)) break;
      digits[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

Ensemble index_permute(const Ensemble& rho, const std::vector<int>& tau) {
  Ensemble out;
  for (const auto& c : rho.components)
    out.components.push_back({c.weight, index_permute(c.state, tau)});
  out.spec = out.components.empty() ? QuditSpec{} : out.components.front().state.spec;
  return out;
}

namespace {

// conditional states of one pure component over the basis of site `site`
std::vector<std::pair<double, PureState>> trace_site(const PureState& psi, int site) {
  const QuditSpec& spec = psi.spec;
  const int d = spec.dim(site);
  const std::int64_t stride = spec.stride(site);
  const std::int64_t block = stride * d;
  const std::int64_t outer = psi.amp.size() / block;

  std::vector<int> rest_dims;
  for (int i = 1; i <= spec.sites(); ++i)
    if (i != site) rest_dims.push_back(spec.dim(i));
  const QuditSpec rest_spec{rest_dims};

  std::vector<std::pair<double, PureState>> parts;
  for (int v = 0; v < d; ++v) {
    Eigen::VectorXcd sub(psi.amp.size() / d);
    for (std::int64_t a = 0; a < outer; ++a)
      sub.segment(a * stride, stride) = psi.amp.segment(a * block + v * stride, stride);
    const double p = sub.squaredNorm();
    if (p > kDropTol) {
      sub /= std::sqrt(p);
      parts.push_back({p, PureState{rest_spec, std::move(sub)}});
    }
  }
  return parts;
}

}  // namespace

Ensemble delete_qudits(const Ensemble& rho, const IndexSet& J) {
  if (J.bound != rho.spec.sites())
    throw std::invalid_argument("deletion set bound != site count");
  if (J.size() == rho.spec.sites())
    throw std::invalid_argument("cannot delete every site");
  Ensemble cur = rho;
  // trace from the largest index down so earlier indices stay valid
  for (auto it = J.indices.rbegin(); it != J.indices.rend(); ++it) {
    Ensemble next;
    for (const auto& c : cur.components) {
      for (auto& [p, state] : trace_site(c.state, *it)) {
        const double w = c.weight * p;
        if (w > kDropTol) next.components.push_back({w, std::move(state)});
      }
    }
    next.spec = next.components.empty() ? QuditSpec{} : next.components.front().state.spec;
    cur = std::move(next);
  }
  return cur;
}

std::vector<int> insertion_permutation(int n, const IndexSet& J) {
  const int t = J.size();
  if (J.bound != n + t)
    throw std::invalid_argument("insertion set bound must be n + |J|");
  std::vector<int> tau(static_cast<std::size_t>(n + t));
  for (int i = 0; i < t; ++i) tau[static_cast<std::size_t>(i)] = J.indices[static_cast<std::size_t>(i)];
  int next = 1;
  for (int i = t; i < n + t; ++i) {
    while (J.contains(next)) ++next;
    tau[static_cast<std::size_t>(i)] = next++;
  }
  return tau;
}

Ensemble insert_qudits(const Ensemble& rho, const IndexSet& J, const Ensemble& sigma) {
  if (sigma.spec.sites() != J.size())
    throw std::invalid_argument("inserted state has wrong site count");
  const int n = rho.spec.sites();
  const std::vector<int> tau = insertion_permutation(n, J);
  return index_permute(tensor(sigma, rho), tau);
}

void MeasurementFamily::validate(double tol) const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim)
      throw std::invalid_argument("projector dimension mismatch");
    if ((p - p.adjoint()).norm() > tol)
      throw std::invalid_argument("projector not self-adjoint");
    if ((p * p - p).norm() > tol)
      throw std::invalid_argument("projector not idempotent");
    sum += p;
  }
  if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).norm() > tol)
    throw std::invalid_argument("projectors do not sum to identity");
}

MeasurementFamily mt_family(int l, int t) {
  if (l < 2 || t < 1) throw std::invalid_argument("mt_family needs l >= 2, t >= 1");
  const int d = l * (t + 1);
  MeasurementFamily fam;
  fam.dim = d;
  for (int k = 0; k <= t; ++k) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < l; ++j) p(j * (t + 1) + k, j * (t + 1) + k) = 1.0;
    fam.projectors.push_back(std::move(p));
  }
  return fam;
}

namespace {

// shared branch expansion: projector k applied via `apply`, probability
// aggregated over components
template <typename ApplyFn>
std::vector<MeasureOutcome> branch_measure(const Ensemble& rho, int outcomes,
                                           const ApplyFn& apply, double threshold) {
  std::vector<MeasureOutcome> branches;
  for (int k = 0; k < outcomes; ++k) {
    MeasureOutcome b;
    b.outcome = k;
    double prob = 0;
    Ensemble post;
    post.spec = rho.spec;
    for (const auto& c : rho.components) {
      PureState projected = apply(c.state, k);
      const double q = projected.amp.squaredNorm();
      prob += c.weight * q;
      if (c.weight * q > kDropTol) {
        projected.amp /= std::sqrt(q);
        post.components.push_back({c.weight * q, std::move(projected)});
      }
    }
    if (prob <= threshold) continue;
    for (auto& comp : post.components) comp.weight /= prob;
    b.probability = prob;
    b.post = std::move(post);
    branches.push_back(std::move(b));
  }
  if (branches.empty())
    throw std::runtime_error("no measurement branch above threshold");
  return branches;
}

MeasureOutcome sample_branch(std::vector<MeasureOutcome> branches, std::uint64_t seed) {
  const double u = uniform_unit(seed);
  double cum = 0;
  for (auto& b : branches) {
    cum += b.probability;
    if (u < cum) return std::move(b);
  }
  return std::move(branches.back());  // guard against rounding at u ~ 1
}

}  // namespace

std::vector<MeasureOutcome> measure_branches(const Ensemble& rho, int site,
                                             const MeasurementFamily& fam,
                                             double threshold) {
  if (fam.dim != rho.spec.dim(site))
    throw std::invalid_argument("measurement dimension does not match site");
  return branch_measure(
      rho, fam.outcomes(),
      [&](const PureState& s, int k) { return apply_site_matrix(s, site, fam.projectors[static_cast<std::size_t>(k)]); },
      threshold);
}

MeasureOutcome measure_site(const Ensemble& rho, int site,
                            const MeasurementFamily& fam, std::uint64_t seed) {
  return sample_branch(measure_branches(rho, site, fam), seed);
}

std::vector<MeasureOutcome> measure_projectors_branches(
    const Ensemble& rho, const std::vector<Eigen::MatrixXcd>& projectors,
    double threshold) {
  return branch_measure(
      rho, static_cast<int>(projectors.size()),
      [&](const PureState& s, int k) { return apply_matrix(s, projectors[static_cast<std::size_t>(k)]); },
      threshold);
}

MeasureOutcome measure_projectors(const Ensemble& rho,
                                  const std::vector<Eigen::MatrixXcd>& projectors,
                                  std::uint64_t seed) {
  return sample_branch(measure_projectors_branches(rho, projectors), seed);
}

double fidelity(const PureState& target, const Ensemble& rho) {
  if (target.spec != rho.spec) throw std::invalid_argument("spec mismatch in fidelity");
  double f = 0;
  for (const auto& c : rho.components)
    f += c.weight * std::norm(target.amp.dot(c.state.amp));
  return f;
}

double fidelity(const PureState& target, const PureState& other) {
  if (target.spec != other.spec) throw std::invalid_argument("spec mismatch in fidelity");
  return std::norm(target.amp.dot(other.amp));
}

PureState apply_site_matrix(const PureState& psi, int site, const Eigen::MatrixXcd& op) {
  const QuditSpec& spec = psi.spec;
  const int d_in = spec.dim(site);
  if (op.cols() != d_in) throw std::invalid_argument("operator input dimension mismatch");
  const int d_out = static_cast<int>(op.rows());

  std::vector<int> new_dims = spec.dims;
  new_dims[static_cast<std::size_t>(site) - 1] = d_out;
  QuditSpec out_spec{new_dims};

  const std::int64_t stride = spec.stride(site);
  const std::int64_t in_block = stride * d_in;
  const std::int64_t out_block = stride * d_out;
  const std::int64_t outer = psi.amp.size() / in_block;

  PureState out{out_spec, Eigen::VectorXcd::Zero(out_spec.total_dim())};
  for (std::int64_t a = 0; a < outer; ++a) {
    for (int o = 0; o < d_out; ++o) {
      auto dst = out.amp.segment(a * out_block + o * stride, stride);
      for (int v = 0; v < d_in; ++v) {
        const cplx w = op(o, v);
        if (w != cplx(0, 0))
          dst += w * psi.amp.segment(a * in_block + v * stride, stride);
      }
    }
  }
  return out;
}

Ensemble apply_site_matrix(const Ensemble& rho, int site, const Eigen::MatrixXcd& op) {
  Ensemble out;
  for (const auto& c : rho.components)
    out.components.push_back({c.weight, apply_site_matrix(c.state, site, op)});
  out.spec = out.components.empty() ? QuditSpec{} : out.components.front().state.spec;
  return out;
}

PureState apply_matrix(const PureState& psi, const Eigen::MatrixXcd& op) {
  if (op.cols() != psi.amp.size())
    throw std::invalid_argument("operator dimension mismatch");
  return PureState{psi.spec, op * psi.amp};
}

}  // namespace qindel
