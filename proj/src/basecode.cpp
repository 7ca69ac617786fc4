#include "qindel/basecode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qindel {

Eigen::MatrixXcd shift_matrix(int l) {
  if (l < 2) throw std::invalid_argument("site dimension must be >= 2");
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(l, l);
  for (int j = 0; j < l; ++j) x((j + 1) % l, j) = 1.0;
  return x;
}

Eigen::MatrixXcd clock_matrix(int l) {
  if (l < 2) throw std::invalid_argument("site dimension must be >= 2");
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(l, l);
  for (int j = 0; j < l; ++j)
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / l);
  return z;
}

ErrorBasis generalized_paulis(int l) {
  const Eigen::MatrixXcd x = shift_matrix(l);
  const Eigen::MatrixXcd z = clock_matrix(l);
  ErrorBasis basis;
  basis.l = l;
  Eigen::MatrixXcd xa = Eigen::MatrixXcd::Identity(l, l);
  for (int a = 0; a < l; ++a) {
    Eigen::MatrixXcd op = xa;
    for (int b = 0; b < l; ++b) {
      basis.ops.push_back(op);
      op = op * z;
    }
    xa = x * xa;
  }
  return basis;
}

Eigen::MatrixXcd site_operator(const QuditSpec& spec, int site,
                               const Eigen::MatrixXcd& op) {
  const int d = spec.dim(site);
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("operator does not match the site dimension");
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= spec.sites(); ++s) {
    if (s == site)
      full = Eigen::kroneckerProduct(full, op).eval();
    else
      full = Eigen::kroneckerProduct(
                 full, Eigen::MatrixXcd::Identity(spec.dim(s), spec.dim(s)))
                 .eval();
  }
  return full;
}

std::vector<Eigen::MatrixXcd> weight_one_errors(const QuditSpec& spec) {
  std::vector<Eigen::MatrixXcd> errors;
  errors.push_back(Eigen::MatrixXcd::Identity(spec.total_dim(), spec.total_dim()));
  for (int site = 1; site <= spec.sites(); ++site) {
    const ErrorBasis basis = generalized_paulis(spec.dim(site));
    for (std::size_t p = 1; p < basis.ops.size(); ++p)  // skip the identity
      errors.push_back(site_operator(spec, site, basis.ops[p]));
  }
  return errors;
}

void CodeIsometry::validate(double tol) const {
  if (n0 < 1 || l < 2 || k < 1) throw std::invalid_argument("bad code shape");
  const auto phys = physical_spec().total_dim();
  const auto logi = logical_spec().total_dim();
  if (encoder.rows() != phys || encoder.cols() != logi)
    throw std::invalid_argument("encoder has wrong shape");
  const double dev =
      (encoder.adjoint() * encoder - Eigen::MatrixXcd::Identity(logi, logi)).norm();
  if (dev > tol)
    throw std::invalid_argument("encoder is not an isometry (deviation " +
                                std::to_string(dev) + ")");
}

CodeIsometry five_qudit_code() {
  const Eigen::MatrixXcd x = shift_matrix(2);
  const Eigen::MatrixXcd z = clock_matrix(2);  // real diag(1, -1) at l = 2
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);

  const char* words[4] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
  std::vector<Eigen::MatrixXcd> stabs;
  for (const char* w : words) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(1, 1);
    for (int i = 0; i < 5; ++i) {
      const Eigen::MatrixXcd& letter = w[i] == 'X' ? x : (w[i] == 'Z' ? z : eye);
      s = Eigen::kroneckerProduct(s, letter).eval();
    }
    stabs.push_back(std::move(s));
  }

  // |0_L> is the (normalized) projection of |00000> onto the joint +1
  // eigenspace; |1_L> is its image under the logical X = XXXXX.
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(32, 32);
  for (const auto& s : stabs) proj = (proj * (Eigen::MatrixXcd::Identity(32, 32) + s) / 2).eval();
  Eigen::VectorXcd v0 = proj.col(0);  // proj * |00000>
  if (v0.norm() < 1e-6) throw std::logic_error("stabilizer projection annihilated |00000>");
  v0.normalize();
  Eigen::MatrixXcd xall = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < 5; ++i) xall = Eigen::kroneckerProduct(xall, x).eval();
  Eigen::VectorXcd v1 = xall * v0;
  if (std::abs(v0.dot(v1)) > 1e-12)
    throw std::logic_error("logical basis states are not orthogonal");

  CodeIsometry code;
  code.n0 = 5;
  code.l = 2;
  code.k = 1;
  code.encoder.resize(32, 2);
  code.encoder.col(0) = v0;
  code.encoder.col(1) = v1;
  code.max_erasures = 2;
  code.stabilizers = std::move(stabs);
  code.name = "five-qubit";
  code.validate();
  return code;
}

PureState encode(const CodeIsometry& code, const PureState& mu) {
  if (mu.spec != code.logical_spec())
    throw std::invalid_argument("message does not match the logical spec");
  return PureState{code.physical_spec(), code.encoder * mu.amp};
}

double kl_residual(const CodeIsometry& code,
                   const std::vector<Eigen::MatrixXcd>& errors) {
  const Eigen::Index kd = code.encoder.cols();
  std::vector<Eigen::MatrixXcd> ev;
  ev.reserve(errors.size());
  for (const auto& e : errors) {
    if (e.rows() != code.encoder.rows() || e.cols() != code.encoder.rows())
      throw std::invalid_argument("error operator has wrong dimension");
    ev.push_back(e * code.encoder);
  }
  double worst = 0;
  for (std::size_t a = 0; a < ev.size(); ++a) {
    for (std::size_t b = a; b < ev.size(); ++b) {
      const Eigen::MatrixXcd m = ev[a].adjoint() * ev[b];
      const cplx lam = m.trace() / static_cast<double>(kd);
      worst = std::max(worst,
                       (m - lam * Eigen::MatrixXcd::Identity(kd, kd)).norm());
    }
  }
  return worst;
}

bool kl_verify(const CodeIsometry& code,
               const std::vector<Eigen::MatrixXcd>& errors, double tol) {
  return kl_residual(code, errors) <= tol;
}

std::vector<Eigen::MatrixXcd> canonical_recovery(
    const CodeIsometry& code, const std::vector<Eigen::MatrixXcd>& errors) {
  const Eigen::Index kd = code.encoder.cols();
  const std::size_t na = errors.size();
  std::vector<Eigen::MatrixXcd> ev;
  ev.reserve(na);
  for (const auto& e : errors) ev.push_back(e * code.encoder);

  Eigen::MatrixXcd lambda(na, na);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < na; ++b) {
      const Eigen::MatrixXcd m = ev[a].adjoint() * ev[b];
      const cplx lam = m.trace() / static_cast<double>(kd);
      if ((m - lam * Eigen::MatrixXcd::Identity(kd, kd)).norm() > 1e-8)
        throw std::invalid_argument(
            "error set fails the Knill-Laflamme conditions; no exact recovery");
      lambda(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = lam;
    }
  }
  lambda = ((lambda + lambda.adjoint()) / 2).eval();

  // Rotate the errors so they act orthogonally on the code space, then
  // invert each surviving isometry.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lambda);
  std::vector<Eigen::MatrixXcd> kraus;
  for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
    const double d = es.eigenvalues()[c];
    if (d <= 1e-12) continue;
    Eigen::MatrixXcd fv = Eigen::MatrixXcd::Zero(code.encoder.rows(), kd);
    for (std::size_t a = 0; a < na; ++a)
      fv += es.eigenvectors()(static_cast<Eigen::Index>(a), c) * ev[a];
    fv /= std::sqrt(d);
    if ((fv.adjoint() * fv - Eigen::MatrixXcd::Identity(kd, kd)).norm() > 1e-8)
      throw std::logic_error("rotated error failed to become an isometry");
    kraus.push_back(fv.adjoint());
  }
  return kraus;
}

namespace {

// syndrome route: projectors indexed by the syndrome bits, one inverse
// correction per occupied syndrome
struct SyndromeTable {
  std::vector<Eigen::MatrixXcd> projectors;
  std::vector<Eigen::MatrixXcd> inverse;  // empty matrix = no entry
};

bool stabilizers_usable(const CodeIsometry& code) {
  if (code.stabilizers.empty()) return false;
  const auto dim = code.encoder.rows();
  for (const auto& s : code.stabilizers) {
    if (s.rows() != dim || s.cols() != dim) return false;
    if ((s - s.adjoint()).norm() > 1e-9) return false;
    if ((s * s - Eigen::MatrixXcd::Identity(dim, dim)).norm() > 1e-9) return false;
  }
  return true;
}

int pauli_syndrome(const Eigen::MatrixXcd& op,
                   const std::vector<Eigen::MatrixXcd>& stabs) {
  int s = 0;
  for (std::size_t a = 0; a < stabs.size(); ++a) {
    const double comm = (stabs[a] * op - op * stabs[a]).norm();
    const double anti = (stabs[a] * op + op * stabs[a]).norm();
    if (comm < 1e-8 && anti > 1e-8) {
      // bit stays 0
    } else if (anti < 1e-8 && comm > 1e-8) {
      s |= 1 << a;
    } else {
      throw std::logic_error(
          "operator neither commutes nor anticommutes with a stabilizer");
    }
  }
  return s;
}

std::vector<Eigen::MatrixXcd> syndrome_projectors(const CodeIsometry& code) {
  const auto dim = code.encoder.rows();
  const int bits = static_cast<int>(code.stabilizers.size());
  std::vector<Eigen::MatrixXcd> projs;
  for (int s = 0; s < (1 << bits); ++s) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    for (int a = 0; a < bits; ++a) {
      const double sign = (s >> a) & 1 ? -1.0 : 1.0;
      p = (p * (Eigen::MatrixXcd::Identity(dim, dim) + sign * code.stabilizers[static_cast<std::size_t>(a)]) / 2).eval();
    }
    projs.push_back(std::move(p));
  }
  return projs;
}

SyndromeTable build_table(const CodeIsometry& code,
                          const std::vector<Eigen::MatrixXcd>& corrections) {
  SyndromeTable table;
  table.projectors = syndrome_projectors(code);
  table.inverse.resize(table.projectors.size());
  for (const auto& e : corrections) {
    const int s = pauli_syndrome(e, code.stabilizers);
    if (table.inverse[static_cast<std::size_t>(s)].size() != 0)
      throw std::logic_error("two corrections share syndrome " + std::to_string(s));
    table.inverse[static_cast<std::size_t>(s)] = e.adjoint();
  }
  return table;
}

SyndromeTable single_error_table(const CodeIsometry& code) {
  return build_table(code, weight_one_errors(code.physical_spec()));
}

SyndromeTable erasure_table(const CodeIsometry& code, const IndexSet& J) {
  // every generalized-Pauli product supported on J (identity included)
  const QuditSpec spec = code.physical_spec();
  std::vector<Eigen::MatrixXcd> supported;
  supported.push_back(
      Eigen::MatrixXcd::Identity(spec.total_dim(), spec.total_dim()));
  for (int site : J.indices) {
    const ErrorBasis basis = generalized_paulis(spec.dim(site));
    std::vector<Eigen::MatrixXcd> grown;
    for (const auto& prefix : supported)
      for (const auto& p : basis.ops)
        grown.push_back(prefix * site_operator(spec, site, p));
    supported = std::move(grown);
  }
  return build_table(code, supported);
}

PureState logical_readout(const CodeIsometry& code, const Eigen::VectorXcd& phys) {
  Eigen::VectorXcd amp = code.encoder.adjoint() * phys;
  const double n2 = amp.squaredNorm();
  if (n2 < 1.0 - 1e-6)
    throw std::runtime_error("corrected state escaped the code space (norm^2 " +
                             std::to_string(n2) + ")");
  amp /= std::sqrt(n2);
  return PureState{code.logical_spec(), std::move(amp)};
}

// correct one measured branch and read it out at the given total weight
void emit_corrected(const CodeIsometry& code, const SyndromeTable& table,
                    const MeasureOutcome& branch, double weight, Ensemble& out) {
  const auto& inv = table.inverse[static_cast<std::size_t>(branch.outcome)];
  if (inv.size() == 0)
    throw std::runtime_error("syndrome " + std::to_string(branch.outcome) +
                             " has no table entry (precondition violated)");
  for (const auto& comp : branch.post.components) {
    const Eigen::VectorXcd fixed = inv * comp.state.amp;
    out.components.push_back({weight * comp.weight, logical_readout(code, fixed)});
  }
}

Ensemble syndrome_route_mixed(const CodeIsometry& code, const Ensemble& rho,
                              const SyndromeTable& table) {
  Ensemble out;
  out.spec = code.logical_spec();
  for (const MeasureOutcome& b : measure_projectors_branches(rho, table.projectors))
    emit_corrected(code, table, b, b.probability, out);
  return out;
}

Ensemble syndrome_route_sampled(const CodeIsometry& code, const Ensemble& rho,
                                const SyndromeTable& table, std::uint64_t seed) {
  Ensemble out;
  out.spec = code.logical_spec();
  emit_corrected(code, table,
                 measure_projectors(rho, table.projectors, seed), 1.0, out);
  return out;
}

Ensemble apply_logical_kraus(const CodeIsometry& code, const Ensemble& rho,
                             const std::vector<Eigen::MatrixXcd>& kraus) {
  Ensemble out;
  out.spec = code.logical_spec();
  double total = 0;
  for (const auto& comp : rho.components) {
    for (const auto& k : kraus) {
      Eigen::VectorXcd amp = k * comp.state.amp;
      const double w = comp.weight * amp.squaredNorm();
      total += w;
      if (w > kDropTol) {
        amp.normalize();
        out.components.push_back({w, PureState{out.spec, std::move(amp)}});
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::runtime_error("recovery lost trace (" + std::to_string(total) +
                             "); input outside the correctable span");
  for (auto& c : out.components) c.weight /= total;
  return out;
}

void check_physical(const CodeIsometry& code, const Ensemble& rho) {
  if (rho.spec != code.physical_spec())
    throw std::invalid_argument("state does not match the physical spec");
}

}  // namespace

Ensemble correct_single_error(const CodeIsometry& code, const Ensemble& rho,
                              std::uint64_t rng_seed) {
  check_physical(code, rho);
  if (stabilizers_usable(code))
    return syndrome_route_sampled(code, rho, single_error_table(code), rng_seed);
  return apply_logical_kraus(
      code, rho, canonical_recovery(code, weight_one_errors(code.physical_spec())));
}

Ensemble correct_single_error_mixed(const CodeIsometry& code, const Ensemble& rho) {
  check_physical(code, rho);
  if (stabilizers_usable(code))
    return syndrome_route_mixed(code, rho, single_error_table(code));
  return apply_logical_kraus(
      code, rho, canonical_recovery(code, weight_one_errors(code.physical_spec())));
}

Ensemble correct_erasures(const CodeIsometry& code, const Ensemble& rho,
                          const IndexSet& J) {
  check_physical(code, rho);
  if (J.bound != code.n0)
    throw std::invalid_argument("erasure set bound != physical site count");
  if (J.size() > code.max_erasures)
    throw std::invalid_argument("code corrects at most " +
                                std::to_string(code.max_erasures) + " erasures, got " +
                                std::to_string(J.size()));
  if (J.empty()) {
    Ensemble out;
    out.spec = code.logical_spec();
    for (const auto& comp : rho.components)
      out.components.push_back({comp.weight, logical_readout(code, comp.state.amp)});
    return out;
  }
  if (stabilizers_usable(code))
    return syndrome_route_mixed(code, rho, erasure_table(code, J));

  // canonical fallback: the Kraus set of trace-out-then-reset-to-|0> at J
  const QuditSpec spec = code.physical_spec();
  std::vector<Eigen::MatrixXcd> kraus{
      Eigen::MatrixXcd::Identity(spec.total_dim(), spec.total_dim())};
  for (int site : J.indices) {
    const int d = spec.dim(site);
    std::vector<Eigen::MatrixXcd> grown;
    for (const auto& prefix : kraus) {
      for (int v = 0; v < d; ++v) {
        Eigen::MatrixXcd reset = Eigen::MatrixXcd::Zero(d, d);
        reset(0, v) = 1.0;
        grown.push_back(prefix * site_operator(spec, site, reset));
      }
    }
    kraus = std::move(grown);
  }
  return apply_logical_kraus(code, rho, canonical_recovery(code, kraus));
}

}  // namespace qindel
