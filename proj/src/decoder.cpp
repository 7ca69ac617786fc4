#include "qindel/decoder.hpp"

#include <stdexcept>

#include "qindel/rng.hpp"

namespace qindel {

Ensemble apply_insdel(const PureState& codeword, const ChannelSpec& ch) {
  const int n = codeword.spec.sites();
  if (ch.insert_index < 1 || ch.insert_index > n + 1)
    throw std::invalid_argument("insertion index out of range");
  if (ch.delete_index < 1 || ch.delete_index > n + 1)
    throw std::invalid_argument("deletion index out of range");
  if (ch.sigma.spec.sites() != 1 ||
      ch.sigma.spec.dim(1) != codeword.spec.dim(1))
    throw std::invalid_argument("inserted state has the wrong shape");
  const Ensemble grown = insert_qudits(pure_ensemble(codeword),
                                       IndexSet({ch.insert_index}, n + 1), ch.sigma);
  return delete_qudits(grown, IndexSet({ch.delete_index}, n + 1));
}

std::string to_string(DecodeBranch b) {
  return b == DecodeBranch::UnitaryPath ? "unitary" : "deletion";
}

DecodeBranch classify_branch(const Sequence& r, int n, int t) {
  if (r.size() != n) throw std::invalid_argument("results length != n");
  return r == monotone_periodic(n, t) ? DecodeBranch::UnitaryPath
                                      : DecodeBranch::DeletionPath;
}

namespace {

// classical tail of the pipeline, shared by the sampled and the
// branch-enumerating front ends
struct Decoded {
  Ensemble message;
  DecodeReport report;
};

Decoded finish(const MHCode& code, Ensemble post, Sequence r,
               std::uint64_t rng_seed, bool deterministic) {
  Decoded out;
  out.report.n = code.n;
  out.report.l = code.l;
  out.report.t = code.t;
  out.report.seed = rng_seed;
  out.report.S1 = IndexSet({}, code.n);
  out.report.S2 = IndexSet({}, code.n);
  out.report.deleted = IndexSet({}, code.n);
  out.report.branch = classify_branch(r, code.n, code.t);
  out.report.results = std::move(r);
  const Sequence& results = out.report.results;

  if (out.report.branch == DecodeBranch::UnitaryPath) {
    out.message = deterministic
                      ? mh_unitary_decode_mixed(code, post)
                      : mh_unitary_decode(code, post,
                                          derive_seed(rng_seed, "decode.unitary", 0));
    return out;
  }

  const Sequence m = code.results_pattern();
  const EditMatrix H = edit_matrix(m, results);
  if (H.distance() != 2)
    throw std::runtime_error("results " + results.to_string() +
                             " are not a single-indel corruption of the pattern");
  auto [s1, s2] = candidate_insertion_indices(m, results);
  out.report.S1 = s1;
  out.report.S2 = s2;
  out.report.deleted = set_union(s1, s2);

  const Ensemble trimmed = delete_qudits(post, out.report.deleted);
  const Sequence r_rest = delete_at(results, out.report.deleted);
  out.message = mh_deletion_decode(code, trimmed,
                                   derive_seed(rng_seed, "decode.deletion", 0),
                                   &r_rest);
  return out;
}

}  // namespace

std::pair<Ensemble, DecodeReport> decode(const MHCode& code, const Ensemble& rho,
                                         std::uint64_t rng_seed) {
  if (rho.spec != code.embedded_spec())
    throw std::invalid_argument("received state does not match the code");
  const MeasurementFamily fam = mt_family(code.l, code.t);
  Ensemble cur = rho;
  Sequence r;
  r.q = code.t + 1;
  for (int site = 1; site <= code.n; ++site) {
    MeasureOutcome out = measure_site(
        cur, site, fam,
        derive_seed(rng_seed, "decode.residue", static_cast<std::uint64_t>(site)));
    r.symbols.push_back(out.outcome);
    cur = std::move(out.post);
  }
  Decoded done = finish(code, std::move(cur), std::move(r), rng_seed, false);
  return {std::move(done.message), std::move(done.report)};
}

std::vector<DecodeBranchResult> decode_branches(const MHCode& code,
                                                const Ensemble& rho) {
  if (rho.spec != code.embedded_spec())
    throw std::invalid_argument("received state does not match the code");
  const MeasurementFamily fam = mt_family(code.l, code.t);

  struct Partial {
    double prob = 1;
    Ensemble state;
    std::vector<int> syms;
  };
  std::vector<Partial> partials{{1.0, rho, {}}};
  for (int site = 1; site <= code.n; ++site) {
    std::vector<Partial> next;
    for (const Partial& p : partials) {
      for (MeasureOutcome& b : measure_branches(p.state, site, fam)) {
        Partial grown;
        grown.prob = p.prob * b.probability;
        grown.state = std::move(b.post);
        grown.syms = p.syms;
        grown.syms.push_back(b.outcome);
        next.push_back(std::move(grown));
      }
    }
    partials = std::move(next);
  }

  std::vector<DecodeBranchResult> results;
  for (Partial& p : partials) {
    Sequence r{code.t + 1, std::move(p.syms)};
    Decoded done = finish(code, std::move(p.state), std::move(r), 0, true);
    results.push_back({p.prob, std::move(done.report), std::move(done.message)});
  }
  return results;
}

}  // namespace qindel
