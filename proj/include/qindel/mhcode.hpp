#pragma once

#include <cstdint>

#include "qindel/basecode.hpp"
#include "qindel/qsim.hpp"
#include "qindel/seq.hpp"

namespace qindel {

/// The deletion code built on a base code: each of the n base qudits is
/// embedded into dimension l(t+1) so that its position index mod (t+1) is
/// readable by measurement. Every codeword measures to the fixed pattern
/// m_i = (i-1) mod (t+1), so deletion positions are recoverable classically
/// and the base code only has to correct erasures.
struct MHCode {
  int n = 0;
  int l = 0;
  int t = 0;
  CodeIsometry base;  // n0 = n, site dimension l

  int embedded_dim() const { return l * (t + 1); }
  QuditSpec embedded_spec() const { return QuditSpec::uniform(n, embedded_dim()); }
  QuditSpec logical_spec() const { return base.logical_spec(); }
  int residue(int site) const { return (site - 1) % (t + 1); }

  /// The measurement pattern m; always a member of the detecting set.
  Sequence results_pattern() const { return monotone_periodic(n, t); }

  void validate() const;
};

MHCode make_mh_code(int n, int l, int t, CodeIsometry base);

/// The site-local isometry |j> -> |j(t+1) + residue| of shape l(t+1) x l.
Eigen::MatrixXcd eta_matrix(int l, int t, int residue);

/// Embeds site `site` (currently of dimension l) at its positional residue.
PureState eta_embed(const MHCode& code, int site, const PureState& psi);

/// Inverse of the embedding at an explicit residue; after deletions the
/// surviving site's residue comes from its original index, not its current
/// position. Throws if the site has support outside the residue subspace.
Ensemble eta_unembed(const MHCode& code, int site, const Ensemble& rho, int residue);

/// Base-encode the message, then embed every site.
PureState mh_encode(const MHCode& code, const PureState& mu);

/// The unique S with delete(m, S) = r_obs, |S| = n - |r_obs|, found by
/// exhaustive search. Throws if no such S exists (r_obs is not a deletion
/// of the pattern) or if several do (the pattern failed to be detecting,
/// an internal invariant violation).
IndexSet detect_deletion_positions(const Sequence& r_obs, int n, int t);

/// Decoder for at most t deletions: measure the residue pattern (or accept
/// the already-observed results), locate the deletions, unembed survivors
/// with their original residues, re-initialize the lost sites to |0> and run
/// base erasure correction. Deterministic when `observed` is supplied.
Ensemble mh_deletion_decode(const MHCode& code, const Ensemble& rho,
                            std::uint64_t rng_seed,
                            const Sequence* observed = nullptr);

/// Decoder for the no-deletion branch: every site already measured to the
/// pattern, so unembed all sites and run single-error correction. The
/// _mixed variant mixes all syndrome branches instead of sampling one.
Ensemble mh_unitary_decode(const MHCode& code, const Ensemble& rho,
                           std::uint64_t rng_seed);
Ensemble mh_unitary_decode_mixed(const MHCode& code, const Ensemble& rho);

}  // namespace qindel
