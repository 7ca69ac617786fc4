#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef QINDEL_CLI
#error "QINDEL_CLI must point at the built command-line binary"
#endif

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = "cli_capture_" + std::to_string(counter++);
  const std::string out_path = tag + ".out", err_path = tag + ".err";
  const std::string cmd =
      std::string(QINDEL_CLI) + " " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  CmdResult res;
  res.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

}  // namespace

TEST_CASE("matrix subcommand prints the reference table") {
  const CmdResult res = run_cli("matrix --x 0,1,2 --y 1,1,2");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("distance = 2") != std::string::npos);
  CHECK(res.out.find("3 2 3 2") != std::string::npos);
}

TEST_CASE("matrix subcommand dumps arc-annotated JSON") {
  const CmdResult res = run_cli("matrix --x 0,1,2 --y 1,1,2 --json");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"distance\": 2") != std::string::npos);
  CHECK(res.out.find("\"arcs\"") != std::string::npos);
  CHECK(res.out.find("\"type\": 2") != std::string::npos);

  const CmdResult again = run_cli("matrix --x 0,1,2 --y 1,1,2 --json");
  CHECK(again.out == res.out);
}

TEST_CASE("candidates subcommand checks against enumeration") {
  const CmdResult res = run_cli("candidates --x 0,1,2 --y 1,1,2 --check");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("S1 =") != std::string::npos);
  CHECK(res.out.find("enumerated =") != std::string::npos);
  CHECK(res.out.find("MISMATCH") == std::string::npos);

  // identical sequences: the trace indices are empty but every deletion of x
  // overlaps, so the cross-check reports the mismatch
  const CmdResult same = run_cli("candidates --x 0,1,2 --y 0,1,2 --check");
  CHECK(same.exit_code == 1);
  CHECK(same.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("encode, corrupt and decode through files") {
  const CmdResult enc = run_cli(
      "encode --seed 5 --out cli_cw.json --message-out cli_mu.json");
  CHECK(enc.exit_code == 0);

  const CmdResult ch = run_cli(
      "channel --in cli_cw.json --insert 2 --delete 5 --sigma basis:3 "
      "--out cli_recv.json");
  CHECK(ch.exit_code == 0);

  const CmdResult dec = run_cli(
      "decode --in cli_recv.json --branches --expect cli_mu.json");
  CHECK(dec.exit_code == 0);
  CHECK(dec.out.find("\"branches\"") != std::string::npos);
  CHECK(dec.out.find("deletion") != std::string::npos);

  const CmdResult sampled = run_cli(
      "decode --in cli_recv.json --seed 9 --expect cli_mu.json");
  CHECK(sampled.exit_code == 0);

  std::remove("cli_cw.json");
  std::remove("cli_mu.json");
  std::remove("cli_recv.json");
}

TEST_CASE("codes export to files and load back everywhere") {
  const CmdResult exp = run_cli("code --out cli_code.json");
  CHECK(exp.exit_code == 0);
  CHECK(slurp("cli_code.json").find("\"qindel.code.v1\"") != std::string::npos);

  const CmdResult enc = run_cli(
      "encode --code cli_code.json --basis 1 --out cli_code_cw.json "
      "--message-out cli_code_mu.json");
  CHECK(enc.exit_code == 0);

  const CmdResult ch = run_cli(
      "channel --in cli_code_cw.json --insert 1 --delete 4 --sigma mixed "
      "--out cli_code_recv.json");
  CHECK(ch.exit_code == 0);

  const CmdResult dec = run_cli(
      "decode --in cli_code_recv.json --code cli_code.json --branches "
      "--expect cli_code_mu.json");
  CHECK(dec.exit_code == 0);

  CHECK(run_cli("code --name no-such-code").exit_code == 2);

  std::remove("cli_code.json");
  std::remove("cli_code_cw.json");
  std::remove("cli_code_mu.json");
  std::remove("cli_code_recv.json");
}

TEST_CASE("experiment subcommand writes reports") {
  const CmdResult res = run_cli(
      "experiment --messages 1 --insert 3 --delete 3 --delete 4 "
      "--sigma basis:2 --sigma mixed --json cli_sweep.json --csv cli_sweep.csv");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("fail=0") != std::string::npos);
  const std::string json = slurp("cli_sweep.json");
  CHECK(json.find("\"schema\": \"qindel.sweep.v1\"") != std::string::npos);
  const std::string csv = slurp("cli_sweep.csv");
  CHECK(csv.rfind("run_id,", 0) == 0);

  // a report is a valid --config; the rerun reproduces it byte for byte and
  // explicit flags override the file
  const CmdResult rerun = run_cli(
      "experiment --config cli_sweep.json --json cli_sweep2.json");
  CHECK(rerun.exit_code == 0);
  CHECK(slurp("cli_sweep2.json") == json);

  const CmdResult overridden = run_cli(
      "experiment --config cli_sweep.json --seed 9 --json cli_sweep3.json");
  CHECK(overridden.exit_code == 0);
  CHECK(slurp("cli_sweep3.json") != json);

  std::remove("cli_sweep.json");
  std::remove("cli_sweep.csv");
  std::remove("cli_sweep2.json");
  std::remove("cli_sweep3.json");
}

TEST_CASE("verification subcommands succeed and fault injection fails") {
  const CmdResult ok = run_cli(
      "verify classical --t 2 --n-min 5 --n-max 6 --bruteforce-n-max 5 "
      "--random-pairs 40 --len-max 5");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("failures=0") != std::string::npos);

  const CmdResult bad = run_cli(
      "verify classical --t 2 --n-min 5 --n-max 5 --bruteforce-n-max 5 "
      "--random-pairs 10 --len-max 5 --inject-swapped-priorities");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("usage errors exit with the parse code") {
  CHECK(run_cli("matrix --x 0,1,2").exit_code == 2);          // missing --y
  CHECK(run_cli("nonsense").exit_code == 2);                  // unknown command
  CHECK(run_cli("decode --in nowhere.json --t 1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
