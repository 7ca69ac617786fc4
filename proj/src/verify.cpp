#include "qindel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>

#include "qindel/basecode.hpp"
#include "qindel/decoder.hpp"
#include "qindel/editgraph.hpp"
#include "qindel/mhcode.hpp"
#include "qindel/rng.hpp"

namespace qindel {

void VerifySummary::fail(std::string message) {
  ++failures;
  if (failure_messages.size() < 50) failure_messages.push_back(std::move(message));
}

void VerifySummary::merge(const VerifySummary& other) {
  checks += other.checks;
  failures += other.failures;
  for (const auto& m : other.failure_messages)
    if (failure_messages.size() < 50) failure_messages.push_back(m);
}

namespace {

// counterexample messages are built lazily; almost every check passes
template <typename DescribeFn>
void check(VerifySummary& sum, bool ok, DescribeFn&& describe) {
  ++sum.checks;
  if (!ok) sum.fail(describe());
}

std::string pair_tag(const Sequence& x, const Sequence& y) {
  return "x=" + x.to_string() + " y=" + y.to_string();
}

SequenceSet intersect(const SequenceSet& a, const SequenceSet& b) {
  SequenceSet out;
  for (const auto& s : a)
    if (b.count(s)) out.insert(s);
  return out;
}

std::pair<DPPath, DPPath> extremal_paths(const Sequence& x, const Sequence& y,
                                         const EditMatrix& H, FaultInjection fault) {
  if (fault == FaultInjection::SwapSubroutinePriorities)
    return {trace_with_priority(x, y, H, {ArcType::Left, ArcType::Diag, ArcType::Up}),
            trace_with_priority(x, y, H, {ArcType::Up, ArcType::Diag, ArcType::Left})};
  return {path_bot(x, y, H), path_top(x, y, H)};
}

// Properties of the DP table and its path set that hold for arbitrary pairs:
// cell invariants, the progress property, per-type arc counts, the
// common-subsequence identity, and extremality of the two traces.
void check_path_lemmas(VerifySummary& sum, const Sequence& x, const Sequence& y,
                       FaultInjection fault) {
  const EditMatrix H = edit_matrix(x, y);
  const int n = H.n, m = H.m, d = H.distance();
  const std::string tag = pair_tag(x, y);

  int bad_cells = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) {
      const int h = H.at(i, j);
      if ((h + i + j) % 2 != 0 || h < std::abs(i - j) || h > i + j) ++bad_cells;
    }
  check(sum, bad_cells == 0, [&] {
    return "table invariants: " + tag + " has " + std::to_string(bad_cells) +
           " cells off parity/bounds";
  });

  const EditGraph G = build_graph(x, y, H);
  int dead = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      if (!G.has_arc(i, j, ArcType::Up) && !G.has_arc(i, j, ArcType::Diag) &&
          !G.has_arc(i, j, ArcType::Left))
        ++dead;
    }
  check(sum, dead == 0, [&] {
    return "progress property: " + tag + " has " + std::to_string(dead) +
           " stuck vertices";
  });

  const auto [bot, top] = extremal_paths(x, y, H, fault);
  const std::vector<DPPath> all = enumerate_paths(G, PathEnumLimits{12, 2'000'000});

  check(sum, std::find(all.begin(), all.end(), bot) != all.end(),
        [&] { return "bottom trace not among enumerated paths: " + tag; });
  check(sum, std::find(all.begin(), all.end(), top) != all.end(),
        [&] { return "top trace not among enumerated paths: " + tag; });

  const int a1 = (d + n - m) / 2, a2 = (-d + n + m) / 2, a3 = (d - n + m) / 2;
  for (const DPPath& p : all) {
    int c1 = 0, c2 = 0, c3 = 0;
    for (ArcType t : p.steps) {
      if (t == ArcType::Up) ++c1;
      else if (t == ArcType::Diag) ++c2;
      else ++c3;
    }
    check(sum, c1 == a1 && c2 == a2 && c3 == a3, [&] {
      return "arc counts: " + tag + " path " + p.to_string() + " has (" +
             std::to_string(c1) + "," + std::to_string(c2) + "," +
             std::to_string(c3) + "), want (" + std::to_string(a1) + "," +
             std::to_string(a2) + "," + std::to_string(a3) + ")";
    });
    const IndexSet fi = f_insert(p), fd = f_delete(p);
    check(sum, fi.size() == c3 && fd.size() == c1, [&] {
      return "arc indices not distinct: " + tag + " path " + p.to_string();
    });
    check(sum, delete_at(y, fi) == delete_at(x, fd), [&] {
      return "common subsequence: " + tag + " path " + p.to_string() +
             " deletes to " + delete_at(y, fi).to_string() + " vs " +
             delete_at(x, fd).to_string();
    });
    check(sum, poset_leq(bot, p) && poset_leq(p, top), [&] {
      return "extremality: " + tag + " path " + p.to_string() +
             " escapes [bot, top] with bot " + bot.to_string() + " top " +
             top.to_string();
    });
  }
}

// The candidate theorem plus the deletion-ball intersection identities,
// for one detecting sequence x against its whole single-indel ball.
void check_candidate_theorem(VerifySummary& sum, const Sequence& x,
                             FaultInjection fault) {
  const int n = x.size();
  const SequenceSet ball = indel_ball(x, 1);
  const SequenceSet dx = deletion_ball(x, 1);
  const std::vector<Sequence> trans = transposition_family(x);
  const AdjacentEqualFamily fam = adjacent_equal_family(x, 1);

  for (const Sequence& tr : trans)
    check(sum, fam.all.count(tr) == 0, [&] {
      return "swap/equal-pair families overlap at " + tr.to_string() +
             " for x=" + x.to_string();
    });

  for (const Sequence& y : ball) {
    check_path_lemmas(sum, x, y, fault);
    const std::string tag = pair_tag(x, y);

    const EditMatrix H = edit_matrix(x, y);
    const auto [bot, top] = extremal_paths(x, y, H, fault);
    const IndexSet s1 = f_insert(bot), s2 = f_insert(top);
    const IndexSet joined = set_union(s1, s2);
    const IndexSet oracle = ball_overlap_indices(x, y);

    check(sum, s1.size() == 1 && s2.size() == 1, [&] {
      return "candidate sizes: " + tag + " S1=" + s1.to_string() +
             " S2=" + s2.to_string();
    });
    check(sum, joined.size() <= 2 && joined == oracle, [&] {
      return "candidate union: " + tag + " S1=" + s1.to_string() +
             " S2=" + s2.to_string() + " union=" + joined.to_string() +
             " oracle=" + oracle.to_string();
    });

    const SequenceSet both = intersect(dx, deletion_ball(y, 1));

    int ti = 0;  // 1-based swap position if y swaps two adjacent symbols of x
    for (std::size_t i = 0; i < trans.size(); ++i)
      if (trans[i] == y) ti = static_cast<int>(i) + 1;

    if (ti > 0) {
      SequenceSet expect;
      expect.insert(delete_at(x, IndexSet({ti}, n)));
      expect.insert(delete_at(x, IndexSet({ti + 1}, n)));
      check(sum, both.size() == 2 && both == expect, [&] {
        return "swapped-pair ball intersection: " + tag + " got " +
               std::to_string(both.size()) + " members";
      });
      check(sum, s1 == IndexSet({ti}, n) && s2 == IndexSet({ti + 1}, n), [&] {
        return "swapped-pair candidates: " + tag + " S1=" + s1.to_string() +
               " S2=" + s2.to_string() + " want {" + std::to_string(ti) +
               "},{" + std::to_string(ti + 1) + "}";
      });
      if (ti + 2 <= n) {
        // the 4x4 window of the table around a swap is always the same
        static constexpr int kWindow[4][4] = {
            {0, 1, 2, 3}, {1, 2, 1, 2}, {2, 1, 2, 3}, {3, 2, 3, 2}};
        bool window_ok = true;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c)
            if (H.at(ti - 1 + r, ti - 1 + c) != kWindow[r][c]) window_ok = false;
        check(sum, window_ok,
              [&] { return "swap window mismatch: " + tag + " at i=" + std::to_string(ti); });
      }
    } else {
      check(sum, both.size() == 1, [&] {
        return "ball intersection not a singleton: " + tag + " size " +
               std::to_string(both.size());
      });
    }

    int ui = 0;  // 1-based equal-pair position if y has y_i = y_{i+1}
    for (std::size_t i = 0; i < fam.per_index.size(); ++i) {
      if (fam.per_index[i].count(y)) {
        const int here = static_cast<int>(i) + 1;
        check(sum, ui == 0, [&] {
          return "several equal adjacent pairs: " + tag + " at " +
                 std::to_string(ui) + " and " + std::to_string(here);
        });
        ui = here;
      }
    }

    if (ui > 0) {
      check(sum, both.size() == 1, [&] {
        return "equal-pair intersection not a singleton: " + tag;
      });
      if (both.size() == 1) {
        const Sequence& z = *both.begin();
        const bool at_pair = z == delete_at(y, IndexSet({ui}, n)) &&
                             z == delete_at(y, IndexSet({ui + 1}, n));
        int elsewhere = 0;
        for (int j = 1; j <= n; ++j) {
          if (j == ui || j == ui + 1) continue;
          if (delete_at(y, IndexSet({j}, n)) == z) ++elsewhere;
        }
        check(sum, at_pair && elsewhere == 0, [&] {
          return "equal-pair deletion indices: " + tag + " z=" + z.to_string();
        });
      }
    } else {
      // off the equal-pair family every intersection member comes from a
      // unique deletion index of y
      for (const Sequence& z : both) {
        int hits = 0;
        for (int j = 1; j <= n; ++j)
          if (delete_at(y, IndexSet({j}, n)) == z) ++hits;
        check(sum, hits == 1, [&] {
          return "deletion index of " + z.to_string() + " in " + tag +
                 " not unique (" + std::to_string(hits) + " hits)";
        });
      }
    }
  }
}

}  // namespace

VerifySummary verify_classical(const ClassicalVerifyConfig& cfg, std::ostream& log) {
  if (cfg.ts.empty()) throw std::invalid_argument("no capability values given");
  for (int t : cfg.ts)
    if (t < 2)
      throw std::invalid_argument(
          "t = " + std::to_string(t) +
          " refused: the candidate construction assumes t >= 2");

  VerifySummary sum;

  for (int t : cfg.ts) {
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      const Sequence x = monotone_periodic(n, t);
      check(sum, detects_deletions(x, t), [&] {
        return "periodic sequence " + x.to_string() + " not detecting at t=" +
               std::to_string(t);
      });
      check_candidate_theorem(sum, x, cfg.fault);
    }
    log << "periodic sweep t=" << t << ": " << sum.checks << " checks, "
        << sum.failures << " failures so far\n";
  }

  for (int t : cfg.ts) {
    for (int q = 2; q <= cfg.bruteforce_q_max; ++q) {
      for (int n = t + 1; n <= cfg.bruteforce_n_max; ++n) {
        const std::vector<Sequence> members =
            enumerate_detecting_set(n, q, t, cfg.budget);
        for (const Sequence& x : members) check_candidate_theorem(sum, x, cfg.fault);
        log << "detecting set n=" << n << " q=" << q << " t=" << t << ": "
            << members.size() << " members swept\n";
      }
    }
  }

  std::mt19937_64 gen(cfg.seed);
  for (int trial = 0; trial < cfg.random_pairs; ++trial) {
    const int q = 2 + static_cast<int>(gen() % 3);
    Sequence x{q, {}}, y{q, {}};
    const int n = static_cast<int>(gen() % (cfg.random_len_max + 1));
    const int m = static_cast<int>(gen() % (cfg.random_len_max + 1));
    for (int i = 0; i < n; ++i) x.symbols.push_back(static_cast<int>(gen() % q));
    for (int j = 0; j < m; ++j) y.symbols.push_back(static_cast<int>(gen() % q));
    check_path_lemmas(sum, x, y, cfg.fault);
  }
  log << "random pairs: " << cfg.random_pairs << " swept\n";
  log << "classical total: " << sum.checks << " checks, " << sum.failures
      << " failures\n";
  return sum;
}

namespace {

// a fresh |0...0> block for re-initializing traced-out sites
Ensemble fresh_block(int sites, int dim) {
  return pure_ensemble(basis_state(QuditSpec::uniform(sites, dim),
                                   std::vector<int>(static_cast<std::size_t>(sites), 0)));
}

// erase-and-reset at J: trace the sites out, then put |0> blocks back
Ensemble erase_sites(const Ensemble& rho, const IndexSet& J, int fresh_dim) {
  if (J.empty()) return rho;
  return insert_qudits(delete_qudits(rho, J), J, fresh_block(J.size(), fresh_dim));
}

void check_base_code(VerifySummary& sum, const QuantumVerifyConfig& cfg,
                     std::ostream& log) {
  const CodeIsometry code = five_qudit_code();
  const QuditSpec phys = code.physical_spec();

  const double iso_dev =
      (code.encoder.adjoint() * code.encoder - Eigen::MatrixXcd::Identity(2, 2)).norm();
  check(sum, iso_dev < 1e-10,
        [&] { return "encoder isometry deviation " + std::to_string(iso_dev); });

  const double kl_dev = kl_residual(code, weight_one_errors(phys));
  check(sum, kl_dev < 1e-10,
        [&] { return "weight-1 correctability residual " + std::to_string(kl_dev); });

  // a weight-3 operator acting as a logical flip must be rejected
  Eigen::MatrixXcd xall = Eigen::MatrixXcd::Identity(phys.total_dim(), phys.total_dim());
  for (int site = 1; site <= code.n0; ++site)
    xall = (site_operator(phys, site, shift_matrix(code.l)) * xall).eval();
  const Eigen::MatrixXcd weight3 = code.stabilizers[0] * xall;
  check(sum,
        !kl_verify(code, {Eigen::MatrixXcd::Identity(phys.total_dim(), phys.total_dim()), weight3}),
        [] { return std::string("a weight-3 logical operator passed the correctability check"); });

  // erasure recovery across every pair of positions and every single site
  int sweep = 0;
  for (int msg = 0; msg < cfg.messages; ++msg) {
    const PureState mu =
        random_pure_state(code.logical_spec(), derive_seed(cfg.seed, "verify.msg", msg));
    const Ensemble enc = pure_ensemble(encode(code, mu));
    for (int j1 = 1; j1 <= code.n0; ++j1) {
      for (int j2 = j1; j2 <= code.n0; ++j2) {
        std::vector<int> js = j1 == j2 ? std::vector<int>{j1} : std::vector<int>{j1, j2};
        const IndexSet J(js, code.n0);
        const Ensemble out = correct_erasures(code, erase_sites(enc, J, code.l), J);
        const double f = fidelity(mu, out);
        check(sum, f >= 1.0 - 1e-9, [&] {
          return "erasure recovery J=" + J.to_string() + " msg " +
                 std::to_string(msg) + " fidelity " + std::to_string(f);
        });
        ++sweep;
      }
    }
    // single-site generalized Paulis and a full single-site replacement
    for (int site = 1; site <= code.n0; ++site) {
      const ErrorBasis basis = generalized_paulis(code.l);
      for (const auto& op : basis.ops) {
        Ensemble hit = apply_site_matrix(enc, site, op);
        const double f = fidelity(mu, correct_single_error_mixed(code, hit));
        check(sum, f >= 1.0 - 1e-9, [&] {
          return "single-error recovery at site " + std::to_string(site) +
                 " fidelity " + std::to_string(f);
        });
      }
      const IndexSet here({site}, code.n0);
      Ensemble replaced = insert_qudits(
          delete_qudits(enc, here), here,
          pure_ensemble(random_pure_state(QuditSpec::uniform(1, code.l),
                                          derive_seed(cfg.seed, "verify.replace", site))));
      const double f = fidelity(mu, correct_single_error_mixed(code, replaced));
      check(sum, f >= 1.0 - 1e-9, [&] {
        return "replacement recovery at site " + std::to_string(site) +
               " fidelity " + std::to_string(f);
      });
    }
  }
  log << "base code: isometry/correctability plus " << sweep
      << " erasure patterns verified\n";
}

void check_mh_code(VerifySummary& sum, const QuantumVerifyConfig& cfg,
                   std::ostream& log) {
  const MHCode code = make_mh_code(cfg.n, cfg.l, cfg.t, five_qudit_code());
  const MeasurementFamily fam = mt_family(cfg.l, cfg.t);
  const Sequence m = code.results_pattern();

  for (int msg = 0; msg < cfg.messages; ++msg) {
    const PureState mu =
        random_pure_state(code.logical_spec(), derive_seed(cfg.seed, "verify.mh.msg", msg));
    const PureState cw = mh_encode(code, mu);
    check(sum, std::abs(cw.norm() - 1.0) < kNormTol,
          [&] { return "codeword norm " + std::to_string(cw.norm()); });

    // every site must measure to the pattern with probability 1 and leave
    // the state untouched
    Ensemble rho = pure_ensemble(cw);
    for (int site = 1; site <= code.n; ++site) {
      const auto branches = measure_branches(rho, site, fam);
      const bool single = branches.size() == 1 &&
                          branches.front().outcome == m.at(site) &&
                          std::abs(branches.front().probability - 1.0) < 1e-9;
      check(sum, single, [&] {
        return "site " + std::to_string(site) + " does not measure to " +
               std::to_string(m.at(site)) + " deterministically";
      });
      if (single) {
        const double overlap =
            std::abs(cw.amp.dot(branches.front().post.components.front().state.amp));
        check(sum, overlap >= 1.0 - 1e-9, [&] {
          return "measurement disturbed a codeword at site " + std::to_string(site);
        });
      }
    }

    // deletion decoding round trip over every deletion set up to size t
    for (int count = 0; count <= code.t; ++count) {
      for_each_subset(code.n, count, [&](const std::vector<int>& js) {
        const IndexSet S(js, code.n);
        const Ensemble received = S.empty() ? rho : delete_qudits(rho, S);
        const Ensemble out = mh_deletion_decode(
            code, received, derive_seed(cfg.seed, "verify.mh.del", msg * 100 + count));
        const double f = fidelity(mu, out);
        check(sum, f >= 1.0 - 1e-9, [&] {
          return "deletion round trip S=" + S.to_string() + " fidelity " +
                 std::to_string(f);
        });
      });
    }

    // embedded single-site errors inside the residue subspace
    for (int site = 1; site <= code.n; ++site) {
      const Eigen::MatrixXcd eta = eta_matrix(code.l, code.t, code.residue(site));
      const ErrorBasis basis = generalized_paulis(code.l);
      const Eigen::MatrixXcd pad =
          Eigen::MatrixXcd::Identity(code.embedded_dim(), code.embedded_dim()) -
          eta * eta.adjoint();
      for (const auto& op : basis.ops) {
        const Eigen::MatrixXcd embedded = eta * op * eta.adjoint() + pad;
        const Ensemble hit = apply_site_matrix(rho, site, embedded);
        const double f = fidelity(mu, mh_unitary_decode_mixed(code, hit));
        check(sum, f >= 1.0 - 1e-9, [&] {
          return "embedded error recovery at site " + std::to_string(site) +
                 " fidelity " + std::to_string(f);
        });
      }
    }
  }
  log << "embedded code: pattern measurement, deletion round trips and "
         "in-residue errors verified\n";
}

void check_channel_identities(VerifySummary& sum, const QuantumVerifyConfig& cfg,
                              std::ostream& log) {
  const MHCode code = make_mh_code(cfg.n, cfg.l, cfg.t, five_qudit_code());
  const PureState mu =
      random_pure_state(code.logical_spec(), derive_seed(cfg.seed, "verify.ch.msg", 0));
  const PureState cw = mh_encode(code, mu);
  const int d = code.embedded_dim();

  std::vector<Ensemble> sigmas;
  for (int v = 0; v < d; ++v)
    sigmas.push_back(pure_ensemble(basis_state(QuditSpec::uniform(1, d), {v})));
  sigmas.push_back(pure_ensemble(
      random_pure_state(QuditSpec::uniform(1, d), derive_seed(cfg.seed, "verify.ch.sigma", 0))));
  Ensemble mixed;
  mixed.spec = QuditSpec::uniform(1, d);
  for (int v = 0; v < d; ++v)
    mixed.components.push_back({1.0 / d, basis_state(mixed.spec, {v})});
  sigmas.push_back(mixed);

  for (int j = 1; j <= code.n + 1; ++j) {
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
      const ChannelSpec ch{j, sigmas[s], j};
      const Ensemble out = apply_insdel(cw, ch);
      const double tr = trace(out);
      const double f = fidelity(cw, out);
      check(sum, std::abs(tr - 1.0) < 1e-9, [&] {
        return "trace after insert+delete at " + std::to_string(j) + ": " +
               std::to_string(tr);
      });
      check(sum, f >= 1.0 - 1e-9, [&] {
        return "insert-then-delete at " + std::to_string(j) + " sigma#" +
               std::to_string(s) + " is not the identity (fidelity " +
               std::to_string(f) + ")";
      });
    }
  }
  log << "channel identities: delete-after-insert at the same index verified\n";
}

}  // namespace

VerifySummary verify_quantum(const QuantumVerifyConfig& cfg, std::ostream& log) {
  if (cfg.t < 2)
    throw std::invalid_argument("the insdel decoder needs t >= 2");
  if (cfg.messages < 1) throw std::invalid_argument("need at least one message");
  VerifySummary sum;
  check_base_code(sum, cfg, log);
  check_mh_code(sum, cfg, log);
  check_channel_identities(sum, cfg, log);
  log << "quantum total: " << sum.checks << " checks, " << sum.failures
      << " failures\n";
  return sum;
}

}  // namespace qindel
