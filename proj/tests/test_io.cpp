#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "qindel/io.hpp"

using namespace qindel;

TEST_CASE("sequence parsing") {
  CHECK(parse_sequence("0,1,2") == Sequence(3, {0, 1, 2}));
  CHECK(parse_sequence(" 0 1\t2 ") == Sequence(3, {0, 1, 2}));
  CHECK(parse_sequence("0, 1, 0", 4).q == 4);
  CHECK(parse_sequence("").empty());
  CHECK(parse_sequence("1").q == 2);

  CHECK_THROWS_WITH_AS(parse_sequence("0,x,2"), doctest::Contains("position 3"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_sequence("3", 2), std::invalid_argument);
}

TEST_CASE("pure states round trip through JSON") {
  const PureState psi = random_pure_state(QuditSpec({2, 3}), 41);
  const PureState back = pure_state_from_json(to_json(psi));
  CHECK(back.spec == psi.spec);
  CHECK((back.amp - psi.amp).norm() == doctest::Approx(0.0));

  nlohmann::json j = to_json(psi);
  j["amp"].erase(0);
  CHECK_THROWS_AS(pure_state_from_json(j), std::invalid_argument);
}

TEST_CASE("ensembles round trip and canonicalize") {
  Ensemble rho;
  rho.spec = QuditSpec::uniform(1, 2);
  rho.components.push_back({0.25, basis_state(rho.spec, {1})});
  rho.components.push_back({0.75, basis_state(rho.spec, {0})});

  const Ensemble sorted = canonical(rho);
  CHECK(sorted.components.front().weight == doctest::Approx(0.75));

  const Ensemble back = ensemble_from_json(to_json(sorted));
  CHECK(back.components.size() == 2);
  CHECK(trace(back) == doctest::Approx(1.0));
  CHECK(to_json(canonical(back)).dump() == to_json(sorted).dump());
}

TEST_CASE("decode reports serialize their fields") {
  DecodeReport report;
  report.n = 5;
  report.l = 2;
  report.t = 2;
  report.seed = 99;
  report.results = monotone_periodic(5, 2);
  report.branch = DecodeBranch::DeletionPath;
  report.S1 = IndexSet({2}, 6);
  report.S2 = IndexSet({3}, 6);
  report.deleted = IndexSet({2, 3}, 6);

  const nlohmann::json j = to_json(report);
  CHECK(j.at("branch") == "deletion");
  CHECK(j.at("s1").at("indices") == nlohmann::json::array({2}));
  CHECK(j.at("deleted").at("indices") == nlohmann::json::array({2, 3}));
  CHECK(j.at("seed") == 99);
}

TEST_CASE("sweep CSV layout") {
  SweepReport report;
  RunRecord rec;
  rec.run_id = 0;
  rec.msg = 0;
  rec.insert_index = 2;
  rec.delete_index = 5;
  rec.sigma = {SigmaSpec::Kind::Basis, 1};
  BranchRow row;
  row.branch = DecodeBranch::DeletionPath;
  row.probability = 0.5;
  row.s1 = IndexSet({1}, 6);
  row.s2 = IndexSet({2}, 6);
  row.deleted = IndexSet({1, 2}, 6);
  row.results = Sequence(3, {0, 0, 1, 2, 0});
  row.fidelity = 1.0;
  row.pass = true;
  rec.rows = {row, row};
  report.runs = {rec};

  const std::string csv = sweep_csv(report);
  CHECK(csv.substr(0, 7) == "run_id,");
  CHECK(csv.find("0,0,2,5,basis:1,deletion,5.000000000000e-01,0;0;1;2;0,1,2,1;2,") !=
        std::string::npos);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 3);  // header plus two branch rows
}

TEST_CASE("code isometries round trip through JSON") {
  const CodeIsometry code = five_qudit_code();
  const nlohmann::json j = to_json(code);
  CHECK(j.at("schema") == "qindel.code.v1");
  CHECK(j.at("n0") == 5);

  const CodeIsometry back = code_isometry_from_json(j);
  CHECK(back.name == code.name);
  CHECK(back.max_erasures == code.max_erasures);
  CHECK(back.stabilizers.size() == code.stabilizers.size());
  CHECK((back.encoder - code.encoder).norm() < 1e-12);  // validated on load

  nlohmann::json bad = j;
  bad["encoder"].erase(0);
  CHECK_THROWS_AS(code_isometry_from_json(bad), std::invalid_argument);
}

TEST_CASE("base codes resolve by name or file") {
  CHECK(resolve_base_code("five-qubit").n0 == 5);
  CHECK_THROWS_AS(resolve_base_code("seven-qubit"), std::invalid_argument);

  const std::string path = "qindel_code_test.tmp";
  write_file(path, to_json(five_qudit_code()).dump());
  const CodeIsometry loaded = resolve_base_code(path);
  CHECK(loaded.l == 2);
  CHECK(loaded.k == 1);
  std::remove(path.c_str());
}

TEST_CASE("experiment configs round trip through JSON") {
  ExperimentConfig cfg;
  cfg.t = 3;
  cfg.insert_indices = {1, 4};
  cfg.delete_indices = {2};
  cfg.sigmas = {{SigmaSpec::Kind::Basis, 5}, {SigmaSpec::Kind::MaximallyMixed, 0}};
  cfg.messages = 2;
  cfg.master_seed = 77;
  cfg.branch_mode = false;

  const ExperimentConfig back = experiment_config_from_json(to_json(cfg));
  CHECK(back.t == 3);
  CHECK(back.insert_indices == cfg.insert_indices);
  CHECK(back.delete_indices == cfg.delete_indices);
  CHECK(back.sigmas.size() == 2);
  CHECK(back.sigmas[0].label() == "basis:5");
  CHECK(back.master_seed == 77);
  CHECK_FALSE(back.branch_mode);

  // a whole report wraps the config; missing keys keep their defaults
  const nlohmann::json wrapped = {{"schema", "qindel.sweep.v1"},
                                  {"config", to_json(cfg)}};
  CHECK(experiment_config_from_json(wrapped).master_seed == 77);
  CHECK(experiment_config_from_json(nlohmann::json::object()).n == 5);
  CHECK_THROWS_AS(
      experiment_config_from_json(nlohmann::json{{"sigmas", {"color:7"}}}),
      std::invalid_argument);
}

TEST_CASE("edit graph JSON carries the table and every typed arc") {
  const Sequence x(3, {0, 1, 2}), y(3, {1, 1, 2});
  const nlohmann::json j = edit_graph_json(x, y);
  CHECK(j.at("distance") == 2);
  CHECK(j.at("h") == nlohmann::json({{0, 1, 2, 3}, {1, 2, 3, 4}, {2, 1, 2, 3}, {3, 2, 3, 2}}));

  const EditMatrix H = edit_matrix(x, y);
  const EditGraph G = build_graph(x, y, H);
  std::size_t expected = 0;
  for (int i = 0; i <= G.n; ++i)
    for (int jj = 0; jj <= G.m; ++jj)
      for (const ArcType t : {ArcType::Up, ArcType::Diag, ArcType::Left})
        if (G.has_arc(i, jj, t)) ++expected;
  CHECK(j.at("arcs").size() == expected);

  for (const auto& arc : j.at("arcs")) {
    const int i = arc.at("from")[0], jj = arc.at("from")[1];
    const auto type = static_cast<ArcType>(arc.at("type").get<int>());
    CHECK(G.has_arc(i, jj, type));
    const int di = type == ArcType::Left ? 0 : 1;
    const int dj = type == ArcType::Up ? 0 : 1;
    CHECK(arc.at("to")[0] == i - di);
    CHECK(arc.at("to")[1] == jj - dj);
  }
}

TEST_CASE("file helpers") {
  const std::string path = "qindel_io_test.tmp";
  write_file(path, "payload");
  CHECK(read_file(path) == "payload");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely/not/here.json"), std::runtime_error);
}
