#include "qindel/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qindel {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

template <typename Ints>
std::string joined_or_dash(const Ints& vals) {
  if (vals.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(vals[i]);
  }
  return out;
}

nlohmann::json amp_to_json(const Eigen::VectorXcd& amp) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < amp.size(); ++i)
    arr.push_back({amp[i].real(), amp[i].imag()});
  return arr;
}

Eigen::VectorXcd amp_from_json(const nlohmann::json& arr, std::int64_t want) {
  if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != want)
    throw std::invalid_argument("amplitude array has wrong length");
  Eigen::VectorXcd amp(want);
  for (std::int64_t i = 0; i < want; ++i) {
    const auto& pair = arr[static_cast<std::size_t>(i)];
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("amplitude entries must be [re, im] pairs");
    amp[i] = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  return amp;
}

nlohmann::json mat_to_json(const Eigen::MatrixXcd& mat) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c)
      row.push_back({mat(r, c).real(), mat(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd mat_from_json(const nlohmann::json& rows, std::int64_t want_rows,
                               std::int64_t want_cols) {
  if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != want_rows)
    throw std::invalid_argument("matrix has wrong row count");
  Eigen::MatrixXcd mat(want_rows, want_cols);
  for (std::int64_t r = 0; r < want_rows; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != want_cols)
      throw std::invalid_argument("matrix has wrong column count");
    for (std::int64_t c = 0; c < want_cols; ++c) {
      const auto& pair = row[static_cast<std::size_t>(c)];
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      mat(r, c) = cplx(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return mat;
}

bool amp_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

Sequence parse_sequence(const std::string& text, int q) {
  std::vector<int> symbols;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                  "' at position " + std::to_string(i + 1));
    std::size_t start = i;
    long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000)
        throw std::invalid_argument("symbol at position " + std::to_string(start + 1) +
                                    " is implausibly large");
      ++i;
    }
    symbols.push_back(static_cast<int>(value));
  }
  int alphabet = q;
  if (alphabet == 0) {
    alphabet = 2;
    for (int s : symbols) alphabet = std::max(alphabet, s + 1);
  }
  for (std::size_t k = 0; k < symbols.size(); ++k)
    if (symbols[k] >= alphabet)
      throw std::invalid_argument("symbol " + std::to_string(symbols[k]) +
                                  " (entry " + std::to_string(k + 1) +
                                  ") exceeds alphabet size " + std::to_string(alphabet));
  return Sequence(alphabet, std::move(symbols));
}

Ensemble canonical(const Ensemble& rho) {
  Ensemble out = rho;
  std::sort(out.components.begin(), out.components.end(),
            [](const Ensemble::Component& a, const Ensemble::Component& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return amp_less(a.state.amp, b.state.amp);
            });
  return out;
}

nlohmann::json to_json(const Sequence& x) {
  return {{"q", x.q}, {"symbols", x.symbols}};
}

nlohmann::json to_json(const IndexSet& S) {
  return {{"bound", S.bound}, {"indices", S.indices}};
}

nlohmann::json to_json(const PureState& psi) {
  return {{"dims", psi.spec.dims}, {"amp", amp_to_json(psi.amp)}};
}

nlohmann::json to_json(const Ensemble& rho) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : rho.components)
    comps.push_back({{"weight", c.weight}, {"amp", amp_to_json(c.state.amp)}});
  return {{"dims", rho.spec.dims}, {"components", comps}};
}

nlohmann::json to_json(const CodeIsometry& code) {
  nlohmann::json stabs = nlohmann::json::array();
  for (const auto& s : code.stabilizers) stabs.push_back(mat_to_json(s));
  return {{"schema", "qindel.code.v1"},
          {"name", code.name},
          {"n0", code.n0},
          {"l", code.l},
          {"k", code.k},
          {"max_erasures", code.max_erasures},
          {"encoder", mat_to_json(code.encoder)},
          {"stabilizers", stabs}};
}

CodeIsometry code_isometry_from_json(const nlohmann::json& j) {
  CodeIsometry code;
  code.n0 = j.at("n0").get<int>();
  code.l = j.at("l").get<int>();
  code.k = j.at("k").get<int>();
  code.max_erasures = j.value("max_erasures", 0);
  code.name = j.value("name", std::string("unnamed"));
  const std::int64_t phys = code.physical_spec().total_dim();
  const std::int64_t logi = code.logical_spec().total_dim();
  code.encoder = mat_from_json(j.at("encoder"), phys, logi);
  for (const auto& s : j.value("stabilizers", nlohmann::json::array()))
    code.stabilizers.push_back(mat_from_json(s, phys, phys));
  code.validate();
  return code;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json sigma_labels = nlohmann::json::array();
  for (const auto& s : cfg.sigmas) sigma_labels.push_back(s.label());
  // threads (like wall time) is an execution detail; the serialized report
  // must be identical however the same sweep was scheduled
  return {{"n", cfg.n},
          {"l", cfg.l},
          {"t", cfg.t},
          {"base_code", cfg.base_code},
          {"insert_indices", cfg.insert_indices},
          {"delete_indices", cfg.delete_indices},
          {"sigmas", sigma_labels},
          {"messages", cfg.messages},
          {"master_seed", cfg.master_seed},
          {"threshold", cfg.threshold},
          {"branch_mode", cfg.branch_mode}};
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  const nlohmann::json& c = j.contains("config") ? j.at("config") : j;
  ExperimentConfig cfg;
  cfg.n = c.value("n", cfg.n);
  cfg.l = c.value("l", cfg.l);
  cfg.t = c.value("t", cfg.t);
  cfg.base_code = c.value("base_code", cfg.base_code);
  cfg.insert_indices = c.value("insert_indices", cfg.insert_indices);
  cfg.delete_indices = c.value("delete_indices", cfg.delete_indices);
  for (const auto& label : c.value("sigmas", nlohmann::json::array()))
    cfg.sigmas.push_back(SigmaSpec::parse(label.get<std::string>()));
  cfg.messages = c.value("messages", cfg.messages);
  cfg.master_seed = c.value("master_seed", cfg.master_seed);
  cfg.threshold = c.value("threshold", cfg.threshold);
  cfg.branch_mode = c.value("branch_mode", cfg.branch_mode);
  return cfg;
}

CodeIsometry resolve_base_code(const std::string& ref) {
  if (ref == "five-qubit") return five_qudit_code();
  std::string text;
  try {
    text = read_file(ref);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("base code '" + ref +
                                "' is neither a built-in name nor a readable file");
  }
  return code_isometry_from_json(nlohmann::json::parse(text));
}

nlohmann::json edit_graph_json(const Sequence& x, const Sequence& y) {
  const EditMatrix H = edit_matrix(x, y);
  const EditGraph G = build_graph(x, y, H);
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= H.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j <= H.m; ++j) row.push_back(H.at(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (int i = 0; i <= G.n; ++i)
    for (int j = 0; j <= G.m; ++j)
      for (const ArcType t : {ArcType::Up, ArcType::Diag, ArcType::Left}) {
        if (!G.has_arc(i, j, t)) continue;
        const int di = t == ArcType::Left ? 0 : 1;
        const int dj = t == ArcType::Up ? 0 : 1;
        arcs.push_back({{"from", {i, j}},
                        {"to", {i - di, j - dj}},
                        {"type", static_cast<int>(t)}});
      }
  return {{"x", to_json(x)},
          {"y", to_json(y)},
          {"distance", H.distance()},
          {"h", rows},
          {"arcs", arcs}};
}

nlohmann::json to_json(const DecodeReport& report) {
  return {{"n", report.n},
          {"l", report.l},
          {"t", report.t},
          {"seed", report.seed},
          {"results", to_json(report.results)},
          {"branch", to_string(report.branch)},
          {"s1", to_json(report.S1)},
          {"s2", to_json(report.S2)},
          {"deleted", to_json(report.deleted)},
          {"output_fidelity", report.output_fidelity}};
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& rec : report.runs) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BranchRow& row : rec.rows)
      rows.push_back({{"branch", to_string(row.branch)},
                      {"probability", row.probability},
                      {"s1", to_json(row.s1)},
                      {"s2", to_json(row.s2)},
                      {"deleted", to_json(row.deleted)},
                      {"results", to_json(row.results)},
                      {"fidelity", row.fidelity},
                      {"pass", row.pass}});
    runs.push_back({{"run_id", rec.run_id},
                    {"msg", rec.msg},
                    {"insert", rec.insert_index},
                    {"delete", rec.delete_index},
                    {"sigma", rec.sigma.label()},
                    {"seed", rec.seed},
                    {"rows", rows},
                    {"min_fidelity", rec.min_fidelity},
                    {"probability_sum", rec.probability_sum},
                    {"pass", rec.pass}});
  }

  return {{"schema", "qindel.sweep.v1"},
          {"config", to_json(report.config)},
          {"runs", runs},
          {"pass_count", report.pass_count},
          {"fail_count", report.fail_count},
          {"min_fidelity", report.min_fidelity},
          {"all_pass", report.all_pass}};
}

PureState pure_state_from_json(const nlohmann::json& j) {
  PureState psi;
  psi.spec = QuditSpec(j.at("dims").get<std::vector<int>>());
  psi.amp = amp_from_json(j.at("amp"), psi.spec.total_dim());
  return psi;
}

Ensemble ensemble_from_json(const nlohmann::json& j) {
  Ensemble rho;
  rho.spec = QuditSpec(j.at("dims").get<std::vector<int>>());
  for (const auto& c : j.at("components")) {
    Ensemble::Component comp;
    comp.weight = c.at("weight").get<double>();
    comp.state.spec = rho.spec;
    comp.state.amp = amp_from_json(c.at("amp"), rho.spec.total_dim());
    rho.components.push_back(std::move(comp));
  }
  rho.validate();
  return rho;
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "run_id,msg,insert,delete,sigma,branch,probability,results,s1,s2,"
         "deleted,fidelity,pass\n";
  for (const RunRecord& rec : report.runs)
    for (const BranchRow& row : rec.rows)
      out << rec.run_id << ',' << rec.msg << ',' << rec.insert_index << ','
          << rec.delete_index << ',' << rec.sigma.label() << ','
          << to_string(row.branch) << ',' << fmt_double(row.probability) << ','
          << joined_or_dash(row.results.symbols) << ','
          << joined_or_dash(row.s1.indices) << ','
          << joined_or_dash(row.s2.indices) << ','
          << joined_or_dash(row.deleted.indices) << ','
          << fmt_double(row.fidelity) << ',' << (row.pass ? 1 : 0) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace qindel
