#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qindel/basecode.hpp"
#include "qindel/decoder.hpp"
#include "qindel/editgraph.hpp"
#include "qindel/experiment.hpp"
#include "qindel/io.hpp"
#include "qindel/mhcode.hpp"
#include "qindel/qsim.hpp"
#include "qindel/rng.hpp"
#include "qindel/verify.hpp"

namespace {

using namespace qindel;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_file(out_path, content);
    std::cerr << "wrote " << out_path << "\n";
  }
}

Ensemble load_state(const std::string& path) {
  const nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (j.contains("components")) return ensemble_from_json(j);
  return pure_ensemble(pure_state_from_json(j));
}

int cmd_matrix(const std::string& xs, const std::string& ys, int q, bool json,
               const std::string& out) {
  const Sequence x = parse_sequence(xs, q), y = parse_sequence(ys, q);
  if (json) {
    emit(out, edit_graph_json(x, y).dump(2));
    return 0;
  }
  const EditMatrix H = edit_matrix(x, y);
  std::ostringstream text;
  text << "x = " << x.to_string() << "\ny = " << y.to_string()
       << "\ndistance = " << H.distance() << "\n";
  for (int i = 0; i <= H.n; ++i) {
    for (int j = 0; j <= H.m; ++j) text << (j ? " " : "") << H.at(i, j);
    text << "\n";
  }
  emit(out, text.str());
  return 0;
}

int cmd_candidates(const std::string& xs, const std::string& ys, int q, bool check) {
  const Sequence x = parse_sequence(xs, q), y = parse_sequence(ys, q);
  const EditMatrix H = edit_matrix(x, y);
  const auto [s1, s2] = candidate_insertion_indices(x, y);
  std::cout << "distance = " << H.distance() << "\nS1 = " << s1.to_string()
            << "\nS2 = " << s2.to_string()
            << "\nunion = " << set_union(s1, s2).to_string() << "\n";
  if (check) {
    if (x.size() != y.size()) {
      std::cerr << "--check needs |x| = |y|\n";
      return 2;
    }
    const IndexSet oracle = ball_overlap_indices(x, y);
    std::cout << "enumerated = " << oracle.to_string() << "\n";
    if (!(set_union(s1, s2) == oracle)) {
      std::cout << "MISMATCH\n";
      return 1;
    }
  }
  return 0;
}

MHCode build_code(const std::string& base_ref, int t) {
  const CodeIsometry base = resolve_base_code(base_ref);
  return make_mh_code(base.n0, base.l, t, base);
}

int cmd_encode(const std::string& base_ref, int t, std::uint64_t seed, int basis,
               const std::string& out, const std::string& message_out) {
  const MHCode code = build_code(base_ref, t);
  PureState mu;
  if (basis >= 0) {
    if (basis >= code.l) throw std::invalid_argument("basis message must lie in [0, l)");
    mu = basis_state(code.logical_spec(), {basis});
  } else {
    mu = random_pure_state(code.logical_spec(), seed);
  }
  const PureState cw = mh_encode(code, mu);
  emit(out, to_json(cw).dump(2));
  if (!message_out.empty()) {
    write_file(message_out, to_json(mu).dump(2));
    std::cerr << "wrote " << message_out << "\n";
  }
  return 0;
}

int cmd_channel(const std::string& in, int insert_index, int delete_index,
                const std::string& sigma_label, std::uint64_t seed,
                const std::string& out) {
  const nlohmann::json j = nlohmann::json::parse(read_file(in));
  if (j.contains("components"))
    throw std::invalid_argument("the channel acts on a pure codeword (encode output)");
  const PureState cw = pure_state_from_json(j);
  if (cw.spec.sites() == 0) throw std::invalid_argument("empty input state");
  const int dim = cw.spec.dim(1);
  const ChannelSpec ch{insert_index, SigmaSpec::parse(sigma_label).build(dim, seed),
                       delete_index};
  emit(out, to_json(canonical(apply_insdel(cw, ch))).dump(2));
  return 0;
}

int cmd_decode(const std::string& base_ref, const std::string& in, int t,
               std::uint64_t seed, const std::string& expect, double threshold,
               bool branches, const std::string& out) {
  const MHCode code = build_code(base_ref, t);
  const Ensemble rho = load_state(in);

  PureState mu;
  bool have_mu = false;
  if (!expect.empty()) {
    mu = pure_state_from_json(nlohmann::json::parse(read_file(expect)));
    have_mu = true;
  }

  nlohmann::json result;
  double min_fidelity = 1;
  if (branches) {
    nlohmann::json rows = nlohmann::json::array();
    for (const DecodeBranchResult& br : decode_branches(code, rho)) {
      nlohmann::json row = {{"probability", br.probability},
                            {"report", to_json(br.report)}};
      if (have_mu) {
        const double f = fidelity(mu, br.message);
        row["fidelity"] = f;
        min_fidelity = std::min(min_fidelity, f);
      }
      rows.push_back(std::move(row));
    }
    result = {{"branches", rows}};
  } else {
    const auto [message, report] = decode(code, rho, seed);
    result = {{"report", to_json(report)}};
    if (have_mu) {
      min_fidelity = fidelity(mu, message);
      result["fidelity"] = min_fidelity;
    }
  }
  if (have_mu) result["min_fidelity"] = min_fidelity;
  emit(out, result.dump(2));
  if (have_mu && min_fidelity < threshold) {
    std::cerr << "fidelity " << min_fidelity << " below threshold " << threshold
              << "\n";
    return 1;
  }
  return 0;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& json_out,
                   const std::string& csv_out) {
  const SweepReport report = run_experiment(cfg);
  std::cout << "runs=" << report.runs.size() << " pass=" << report.pass_count
            << " fail=" << report.fail_count
            << " min_fidelity=" << report.min_fidelity << "\n";
  std::cerr << "wall_seconds=" << report.wall_seconds << "\n";
  if (!json_out.empty()) {
    write_file(json_out, to_json(report).dump(2) + "\n");
    std::cerr << "wrote " << json_out << "\n";
  }
  if (!csv_out.empty()) {
    write_file(csv_out, sweep_csv(report));
    std::cerr << "wrote " << csv_out << "\n";
  }
  return report.all_pass ? 0 : 1;
}

int finish_verify(const VerifySummary& sum) {
  for (const auto& msg : sum.failure_messages) std::cout << "FAIL " << msg << "\n";
  std::cout << "checks=" << sum.checks << " failures=" << sum.failures << "\n";
  return sum.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indel-correcting quantum code toolkit"};
  app.require_subcommand(1);

  std::string xs, ys;
  int q = 0;
  bool check = false, matrix_json = false;
  std::string matrix_out;

  auto* matrix = app.add_subcommand("matrix", "print the distance DP table");
  matrix->add_option("--x", xs, "first sequence, e.g. '0,1,2'")->required();
  matrix->add_option("--y", ys, "second sequence")->required();
  matrix->add_option("--q", q, "alphabet size (0: infer)");
  matrix->add_flag("--json", matrix_json, "dump table and typed arcs as JSON");
  matrix->add_option("--out", matrix_out, "output path (default stdout)");

  auto* cand = app.add_subcommand("candidates",
                                  "insertion-index candidates from the two traces");
  cand->add_option("--x", xs, "first sequence")->required();
  cand->add_option("--y", ys, "second sequence")->required();
  cand->add_option("--q", q, "alphabet size (0: infer)");
  cand->add_flag("--check", check, "compare against exhaustive enumeration");

  int t = 2;
  std::uint64_t seed = 1;
  int basis = -1;
  std::string out, message_out, base_ref = "five-qubit", code_name = "five-qubit";

  auto* code_cmd = app.add_subcommand("code", "export a base code as JSON");
  code_cmd->add_option("--name", code_name, "built-in code name or JSON file");
  code_cmd->add_option("--out", out, "code JSON path (default stdout)");

  auto* encode_cmd = app.add_subcommand("encode", "encode a logical message");
  encode_cmd->add_option("--code", base_ref, "base code name or isometry JSON file");
  encode_cmd->add_option("--t", t, "deletion capability (>= 2)");
  encode_cmd->add_option("--seed", seed, "random message seed");
  encode_cmd->add_option("--basis", basis, "use a basis message instead (0 or 1)");
  encode_cmd->add_option("--out", out, "codeword JSON path (default stdout)");
  encode_cmd->add_option("--message-out", message_out, "also save the message");

  std::string in, sigma_label = "basis:0";
  int insert_index = 1, delete_index = 1;

  auto* channel = app.add_subcommand("channel", "insert one site, delete one site");
  channel->add_option("--in", in, "codeword JSON (encode output)")->required();
  channel->add_option("--insert", insert_index, "insertion index in [1, n+1]")
      ->required();
  channel->add_option("--delete", delete_index, "deletion index in [1, n+1]")
      ->required();
  channel->add_option("--sigma", sigma_label, "inserted state: basis:<k>, random:<k>, mixed");
  channel->add_option("--seed", seed, "seed for random sigma");
  channel->add_option("--out", out, "output ensemble JSON path (default stdout)");

  std::string expect;
  double threshold = 1.0 - 1e-9;
  bool branches = false;

  auto* decode_cmd = app.add_subcommand("decode", "run the full decoding pipeline");
  decode_cmd->add_option("--in", in, "received state JSON")->required();
  decode_cmd->add_option("--code", base_ref, "base code name or isometry JSON file");
  decode_cmd->add_option("--t", t, "deletion capability (>= 2)");
  decode_cmd->add_option("--seed", seed, "measurement sampling seed");
  decode_cmd->add_option("--expect", expect, "message JSON to score fidelity against");
  decode_cmd->add_option("--threshold", threshold, "pass threshold on fidelity");
  decode_cmd->add_flag("--branches", branches, "enumerate all measurement branches");
  decode_cmd->add_option("--out", out, "report JSON path (default stdout)");

  ExperimentConfig ecfg;
  std::string json_out, csv_out, config_path;
  std::vector<std::string> sigma_labels;
  bool sample = false;

  auto* exp = app.add_subcommand("experiment", "full channel/decode sweep");
  exp->add_option("--config", config_path,
                  "config JSON (a past report works); flags override");
  exp->add_option("--code", ecfg.base_code, "base code name or isometry JSON file");
  exp->add_option("--t", ecfg.t, "deletion capability (>= 2)");
  exp->add_option("--messages", ecfg.messages, "random logical messages");
  exp->add_option("--seed", ecfg.master_seed, "master seed");
  exp->add_option("--threads", ecfg.threads, "worker threads (0: hardware)");
  exp->add_option("--threshold", ecfg.threshold, "per-branch fidelity threshold");
  exp->add_option("--insert", ecfg.insert_indices, "insertion indices (default all)");
  exp->add_option("--delete", ecfg.delete_indices, "deletion indices (default all)");
  exp->add_option("--sigma", sigma_labels, "sigma labels (default full catalogue)");
  exp->add_flag("--sample", sample, "sample one branch per run instead of enumerating");
  exp->add_option("--json", json_out, "write the full report as JSON");
  exp->add_option("--csv", csv_out, "write per-branch rows as CSV");

  auto* verify = app.add_subcommand("verify", "property-based verification");
  verify->require_subcommand(1);

  ClassicalVerifyConfig ccfg;
  bool inject_swap = false;
  auto* vc = verify->add_subcommand("classical", "DP-table and candidate checks");
  vc->add_option("--t", ccfg.ts, "capabilities to sweep (repeatable)");
  vc->add_option("--n-min", ccfg.n_min, "periodic sweep lower bound");
  vc->add_option("--n-max", ccfg.n_max, "periodic sweep upper bound");
  vc->add_option("--bruteforce-n-max", ccfg.bruteforce_n_max,
                 "exhaustive enumeration length bound");
  vc->add_option("--bruteforce-q-max", ccfg.bruteforce_q_max,
                 "exhaustive enumeration alphabet bound");
  vc->add_option("--random-pairs", ccfg.random_pairs, "random pair trials");
  vc->add_option("--len-max", ccfg.random_len_max, "random pair length bound");
  vc->add_option("--seed", ccfg.seed, "random pair seed");
  vc->add_option("--budget", ccfg.budget, "enumeration word budget");
  vc->add_flag("--inject-swapped-priorities", inject_swap,
               "deliberately swap the trace priorities; checks must fail");

  QuantumVerifyConfig qcfg;
  auto* vq = verify->add_subcommand("quantum", "code and channel certificates");
  vq->add_option("--n", qcfg.n, "code length");
  vq->add_option("--l", qcfg.l, "base site dimension");
  vq->add_option("--t", qcfg.t, "deletion capability (>= 2)");
  vq->add_option("--messages", qcfg.messages, "random logical messages");
  vq->add_option("--seed", qcfg.seed, "sweep seed");

  try {
    app.parse(argc, argv);

    if (matrix->parsed()) return cmd_matrix(xs, ys, q, matrix_json, matrix_out);
    if (cand->parsed()) return cmd_candidates(xs, ys, q, check);
    if (code_cmd->parsed()) {
      emit(out, to_json(resolve_base_code(code_name)).dump(2));
      return 0;
    }
    if (encode_cmd->parsed())
      return cmd_encode(base_ref, t, seed, basis, out, message_out);
    if (channel->parsed())
      return cmd_channel(in, insert_index, delete_index, sigma_label, seed, out);
    if (decode_cmd->parsed())
      return cmd_decode(base_ref, in, t, seed, expect, threshold, branches, out);
    if (exp->parsed()) {
      for (const auto& label : sigma_labels)
        ecfg.sigmas.push_back(SigmaSpec::parse(label));
      ecfg.branch_mode = !sample;
      if (!config_path.empty()) {
        ExperimentConfig merged =
            experiment_config_from_json(nlohmann::json::parse(read_file(config_path)));
        merged.threads = ecfg.threads;
        if (exp->count("--code")) merged.base_code = ecfg.base_code;
        if (exp->count("--t")) merged.t = ecfg.t;
        if (exp->count("--messages")) merged.messages = ecfg.messages;
        if (exp->count("--seed")) merged.master_seed = ecfg.master_seed;
        if (exp->count("--threshold")) merged.threshold = ecfg.threshold;
        if (exp->count("--insert")) merged.insert_indices = ecfg.insert_indices;
        if (exp->count("--delete")) merged.delete_indices = ecfg.delete_indices;
        if (exp->count("--sigma")) merged.sigmas = ecfg.sigmas;
        if (exp->count("--sample")) merged.branch_mode = false;
        ecfg = merged;
      }
      return cmd_experiment(ecfg, json_out, csv_out);
    }
    if (vc->parsed()) {
      if (inject_swap) ccfg.fault = FaultInjection::SwapSubroutinePriorities;
      return finish_verify(verify_classical(ccfg, std::cout));
    }
    if (vq->parsed()) return finish_verify(verify_quantum(qcfg, std::cout));
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
