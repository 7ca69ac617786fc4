#include "qindel/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qindel/basecode.hpp"
#include "qindel/io.hpp"
#include "qindel/rng.hpp"

namespace qindel {

std::string SigmaSpec::label() const {
  switch (kind) {
    case Kind::Basis:
      return "basis:" + std::to_string(value);
    case Kind::RandomPure:
      return "random:" + std::to_string(value);
    case Kind::MaximallyMixed:
      return "mixed";
  }
  return "?";
}

SigmaSpec SigmaSpec::parse(const std::string& label) {
  if (label == "mixed") return {Kind::MaximallyMixed, 0};
  const auto colon = label.find(':');
  if (colon != std::string::npos) {
    const std::string kind = label.substr(0, colon);
    int value = -1;
    try {
      value = std::stoi(label.substr(colon + 1));
    } catch (const std::exception&) {
      value = -1;
    }
    if (value >= 0) {
      if (kind == "basis") return {Kind::Basis, value};
      if (kind == "random") return {Kind::RandomPure, value};
    }
  }
  throw std::invalid_argument("sigma '" + label +
                              "' is not basis:<k>, random:<k> or mixed");
}

Ensemble SigmaSpec::build(int dim, std::uint64_t master_seed) const {
  const QuditSpec spec = QuditSpec::uniform(1, dim);
  switch (kind) {
    case Kind::Basis:
      if (value < 0 || value >= dim)
        throw std::invalid_argument("basis sigma index " + std::to_string(value) +
                                    " out of range for dimension " + std::to_string(dim));
      return pure_ensemble(basis_state(spec, {value}));
    case Kind::RandomPure:
      return pure_ensemble(random_pure_state(
          spec, derive_seed(master_seed, "experiment.sigma", static_cast<std::uint64_t>(value))));
    case Kind::MaximallyMixed: {
      Ensemble rho;
      rho.spec = spec;
      for (int v = 0; v < dim; ++v)
        rho.components.push_back({1.0 / dim, basis_state(spec, {v})});
      return rho;
    }
  }
  throw std::logic_error("unreachable sigma kind");
}

namespace {

std::vector<int> index_range_or(const std::vector<int>& given, int hi,
                                const char* what) {
  std::vector<int> out = given;
  if (out.empty())
    for (int j = 1; j <= hi; ++j) out.push_back(j);
  for (int j : out)
    if (j < 1 || j > hi)
      throw std::invalid_argument(std::string(what) + " index " + std::to_string(j) +
                                  " outside [1, " + std::to_string(hi) + "]");
  return out;
}

struct RunInputs {
  int run_id, msg, j1, j2;
  SigmaSpec sigma;
};

RunRecord execute_run(const MHCode& code, const ExperimentConfig& cfg,
                      const PureState& mu, const PureState& cw,
                      const RunInputs& in) {
  RunRecord rec;
  rec.run_id = in.run_id;
  rec.msg = in.msg;
  rec.insert_index = in.j1;
  rec.delete_index = in.j2;
  rec.sigma = in.sigma;
  rec.seed = derive_seed(cfg.master_seed, "experiment.run",
                         static_cast<std::uint64_t>(in.run_id));

  const ChannelSpec ch{in.j1, in.sigma.build(code.embedded_dim(), cfg.master_seed),
                       in.j2};
  const Ensemble received = apply_insdel(cw, ch);

  rec.min_fidelity = 1;
  rec.probability_sum = 0;
  bool rows_ok = true;
  if (cfg.branch_mode) {
    for (const DecodeBranchResult& br : decode_branches(code, received)) {
      BranchRow row;
      row.branch = br.report.branch;
      row.probability = br.probability;
      row.s1 = br.report.S1;
      row.s2 = br.report.S2;
      row.deleted = br.report.deleted;
      row.results = br.report.results;
      row.fidelity = fidelity(mu, br.message);
      row.pass = row.fidelity >= cfg.threshold;
      rec.probability_sum += row.probability;
      rec.min_fidelity = std::min(rec.min_fidelity, row.fidelity);
      rows_ok = rows_ok && row.pass;
      rec.rows.push_back(std::move(row));
    }
    rec.pass = rows_ok && std::abs(rec.probability_sum - 1.0) < 1e-9;
  } else {
    const auto [out, report] = decode(code, received, rec.seed);
    BranchRow row;
    row.branch = report.branch;
    row.probability = 1;
    row.s1 = report.S1;
    row.s2 = report.S2;
    row.deleted = report.deleted;
    row.results = report.results;
    row.fidelity = fidelity(mu, out);
    row.pass = row.fidelity >= cfg.threshold;
    rec.probability_sum = 1;
    rec.min_fidelity = row.fidelity;
    rec.pass = row.pass;
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

}  // namespace

SweepReport run_experiment(const ExperimentConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();

  const CodeIsometry base = resolve_base_code(cfg.base_code);
  if (cfg.n != base.n0 || cfg.l != base.l)
    throw std::invalid_argument("base code '" + base.name + "' fixes n = " +
                                std::to_string(base.n0) + " and l = " +
                                std::to_string(base.l));
  if (cfg.t < 2) throw std::invalid_argument("the decoder needs t >= 2");
  if (cfg.messages < 1) throw std::invalid_argument("need at least one message");
  if (!(cfg.threshold > 0 && cfg.threshold <= 1))
    throw std::invalid_argument("threshold must lie in (0, 1]");

  const MHCode code = make_mh_code(cfg.n, cfg.l, cfg.t, base);

  const std::vector<int> inserts = index_range_or(cfg.insert_indices, cfg.n + 1, "insert");
  const std::vector<int> deletes = index_range_or(cfg.delete_indices, cfg.n + 1, "delete");

  std::vector<SigmaSpec> sigmas = cfg.sigmas;
  if (sigmas.empty()) {
    for (int v = 0; v < code.embedded_dim(); ++v)
      sigmas.push_back({SigmaSpec::Kind::Basis, v});
    for (int v = 0; v < 3; ++v) sigmas.push_back({SigmaSpec::Kind::RandomPure, v});
    sigmas.push_back({SigmaSpec::Kind::MaximallyMixed, 0});
  }

  std::vector<PureState> mus, cws;
  for (int msg = 0; msg < cfg.messages; ++msg) {
    mus.push_back(random_pure_state(
        code.logical_spec(),
        derive_seed(cfg.master_seed, "experiment.message", static_cast<std::uint64_t>(msg))));
    cws.push_back(mh_encode(code, mus.back()));
  }

  std::vector<RunInputs> tasks;
  int run_id = 0;
  for (int msg = 0; msg < cfg.messages; ++msg)
    for (int j1 : inserts)
      for (int j2 : deletes)
        for (const SigmaSpec& s : sigmas) tasks.push_back({run_id++, msg, j1, j2, s});

  SweepReport report;
  report.config = cfg;
  report.runs.resize(tasks.size());

  int threads = cfg.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        const RunInputs& in = tasks[idx];
        report.runs[idx] = execute_run(code, cfg, mus[in.msg], cws[in.msg], in);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const RunRecord& rec : report.runs) {
    if (rec.pass) ++report.pass_count;
    else ++report.fail_count;
    report.min_fidelity = std::min(report.min_fidelity, rec.min_fidelity);
  }
  report.all_pass = report.fail_count == 0;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace qindel
