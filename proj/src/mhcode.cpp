#include "qindel/mhcode.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qindel/rng.hpp"

namespace qindel {

void MHCode::validate() const {
  if (t < 2)
    throw std::invalid_argument("the insdel decoder needs t >= 2, got t = " +
                                std::to_string(t));
  if (n < 1 || l < 2) throw std::invalid_argument("bad code shape");
  if (base.n0 != n || base.l != l)
    throw std::invalid_argument("base code does not match (n, l)");
  base.validate();
  // impossible for the periodic pattern, but cheap to assert
  if (!detects_deletions(results_pattern(), t))
    throw std::logic_error("measurement pattern is not deletion-detecting");
}

MHCode make_mh_code(int n, int l, int t, CodeIsometry base) {
  MHCode code{n, l, t, std::move(base)};
  code.validate();
  return code;
}

Eigen::MatrixXcd eta_matrix(int l, int t, int residue) {
  if (l < 2 || t < 1) throw std::invalid_argument("bad embedding shape");
  if (residue < 0 || residue > t) throw std::invalid_argument("residue out of range");
  Eigen::MatrixXcd eta = Eigen::MatrixXcd::Zero(l * (t + 1), l);
  for (int j = 0; j < l; ++j) eta(j * (t + 1) + residue, j) = 1.0;
  return eta;
}

PureState eta_embed(const MHCode& code, int site, const PureState& psi) {
  if (psi.spec.dim(site) != code.l)
    throw std::invalid_argument("site is not at the base dimension");
  return apply_site_matrix(psi, site, eta_matrix(code.l, code.t, code.residue(site)));
}

Ensemble eta_unembed(const MHCode& code, int site, const Ensemble& rho, int residue) {
  if (rho.spec.dim(site) != code.embedded_dim())
    throw std::invalid_argument("site is not at the embedded dimension");
  const Eigen::MatrixXcd down = eta_matrix(code.l, code.t, residue).adjoint();
  Ensemble out;
  for (const auto& comp : rho.components) {
    PureState state = apply_site_matrix(comp.state, site, down);
    const double kept = state.amp.squaredNorm();
    if (kept < 1.0 - kNormTol)
      throw std::invalid_argument("site " + std::to_string(site) +
                                  " has support outside residue " +
                                  std::to_string(residue) + " (kept " +
                                  std::to_string(kept) + ")");
    state.amp /= std::sqrt(kept);
    out.components.push_back({comp.weight, std::move(state)});
  }
  out.spec = out.components.empty() ? QuditSpec{} : out.components.front().state.spec;
  return out;
}

PureState mh_encode(const MHCode& code, const PureState& mu) {
  PureState psi = encode(code.base, mu);
  for (int site = 1; site <= code.n; ++site) psi = eta_embed(code, site, psi);
  return psi;
}

IndexSet detect_deletion_positions(const Sequence& r_obs, int n, int t) {
  if (t < 1 || n < 1) throw std::invalid_argument("bad pattern shape");
  if (r_obs.q != t + 1)
    throw std::invalid_argument("observed results are not over Z_{t+1}");
  const int d = n - r_obs.size();
  if (d < 0 || d > t)
    throw std::invalid_argument("observed length implies " + std::to_string(d) +
                                " deletions, outside [0, t]");
  const Sequence m = monotone_periodic(n, t);
  std::vector<std::vector<int>> matches;
  for_each_subset(n, d, [&](const std::vector<int>& s) {
    if (delete_at(m, IndexSet(s, n)) == r_obs) matches.push_back(s);
  });
  if (matches.empty())
    throw std::runtime_error("results " + r_obs.to_string() +
                             " are not a deletion of the code pattern");
  if (matches.size() > 1)
    throw std::logic_error("deletion positions of " + r_obs.to_string() +
                           " are ambiguous — pattern not detecting");
  return IndexSet(matches.front(), n);
}

Ensemble mh_deletion_decode(const MHCode& code, const Ensemble& rho,
                            std::uint64_t rng_seed, const Sequence* observed) {
  const int n_obs = rho.spec.sites();
  const int d = code.n - n_obs;
  if (d < 0 || d > code.t)
    throw std::invalid_argument("state size implies " + std::to_string(d) +
                                " deletions, outside [0, t]");
  if (rho.spec != QuditSpec::uniform(n_obs, code.embedded_dim()))
    throw std::invalid_argument("state is not at the embedded dimension");

  Sequence r;
  r.q = code.t + 1;
  Ensemble cur;
  if (observed) {
    if (observed->size() != n_obs || observed->q != code.t + 1)
      throw std::invalid_argument("observed results do not match the state");
    r = *observed;
    cur = rho;
  } else {
    const MeasurementFamily fam = mt_family(code.l, code.t);
    cur = rho;
    for (int site = 1; site <= n_obs; ++site) {
      MeasureOutcome out = measure_site(
          cur, site, fam, derive_seed(rng_seed, "mh.residue", static_cast<std::uint64_t>(site)));
      r.symbols.push_back(out.outcome);
      cur = std::move(out.post);
    }
  }

  const IndexSet S = detect_deletion_positions(r, code.n, code.t);

  // surviving site p held original index orig[p-1]; unembed at that residue
  std::vector<int> orig;
  for (int i = 1; i <= code.n; ++i)
    if (!S.contains(i)) orig.push_back(i);
  for (int p = 1; p <= n_obs; ++p)
    cur = eta_unembed(code, p, cur, code.residue(orig[static_cast<std::size_t>(p) - 1]));

  if (!S.empty()) {
    const QuditSpec fresh_spec = QuditSpec::uniform(S.size(), code.l);
    const Ensemble fresh = pure_ensemble(
        basis_state(fresh_spec, std::vector<int>(static_cast<std::size_t>(S.size()), 0)));
    cur = insert_qudits(cur, S, fresh);
  }
  return correct_erasures(code.base, cur, S);
}

Ensemble mh_unitary_decode(const MHCode& code, const Ensemble& rho,
                           std::uint64_t rng_seed) {
  if (rho.spec != code.embedded_spec())
    throw std::invalid_argument("state is not a full embedded block");
  Ensemble cur = rho;
  for (int site = 1; site <= code.n; ++site)
    cur = eta_unembed(code, site, cur, code.residue(site));
  return correct_single_error(code.base, cur, rng_seed);
}

Ensemble mh_unitary_decode_mixed(const MHCode& code, const Ensemble& rho) {
  if (rho.spec != code.embedded_spec())
    throw std::invalid_argument("state is not a full embedded block");
  Ensemble cur = rho;
  for (int site = 1; site <= code.n; ++site)
    cur = eta_unembed(code, site, cur, code.residue(site));
  return correct_single_error_mixed(code.base, cur);
}

}  // namespace qindel
