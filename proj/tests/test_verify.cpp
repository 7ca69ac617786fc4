#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "qindel/verify.hpp"

using namespace qindel;

TEST_CASE("summary bookkeeping") {
  VerifySummary sum;
  CHECK(sum.ok());
  sum.checks = 3;
  sum.fail("first");
  CHECK(!sum.ok());
  CHECK(sum.failures == 1);

  VerifySummary other;
  other.checks = 2;
  for (int i = 0; i < 60; ++i) other.fail("bulk " + std::to_string(i));
  CHECK(other.failures == 60);
  CHECK(other.failure_messages.size() == 50);  // messages are capped, counts exact

  sum.merge(other);
  CHECK(sum.checks == 5);
  CHECK(sum.failures == 61);
  CHECK(sum.failure_messages.size() == 50);
}

TEST_CASE("classical sweep passes on a reduced configuration") {
  ClassicalVerifyConfig cfg;
  cfg.ts = {2};
  cfg.n_min = 5;
  cfg.n_max = 6;
  cfg.bruteforce_n_max = 5;
  cfg.random_pairs = 60;
  cfg.random_len_max = 5;
  std::ostringstream log;
  const VerifySummary sum = verify_classical(cfg, log);
  CHECK(sum.ok());
  CHECK(sum.checks > 1000);
  CHECK(log.str().find("random pairs: 60") != std::string::npos);
}

TEST_CASE("capability below two is rejected") {
  ClassicalVerifyConfig cfg;
  cfg.ts = {1};
  std::ostringstream log;
  CHECK_THROWS_AS(verify_classical(cfg, log), std::invalid_argument);
  cfg.ts = {};
  CHECK_THROWS_AS(verify_classical(cfg, log), std::invalid_argument);

  QuantumVerifyConfig qcfg;
  qcfg.t = 1;
  CHECK_THROWS_AS(verify_quantum(qcfg, log), std::invalid_argument);
}

TEST_CASE("swapped trace priorities are caught") {
  ClassicalVerifyConfig cfg;
  cfg.ts = {2};
  cfg.n_min = 5;
  cfg.n_max = 5;
  cfg.bruteforce_n_max = 4;
  cfg.random_pairs = 0;
  cfg.fault = FaultInjection::SwapSubroutinePriorities;
  std::ostringstream log;
  const VerifySummary sum = verify_classical(cfg, log);
  CHECK(!sum.ok());
  CHECK(sum.failures > 0);
  REQUIRE(!sum.failure_messages.empty());
}

TEST_CASE("quantum certificates pass on one message") {
  QuantumVerifyConfig cfg;
  cfg.messages = 1;
  std::ostringstream log;
  const VerifySummary sum = verify_quantum(cfg, log);
  for (const auto& msg : sum.failure_messages) MESSAGE(msg);
  CHECK(sum.ok());
  CHECK(sum.checks > 100);
}
