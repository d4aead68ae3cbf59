#include <gtest/gtest.h>

#include <filesystem>

#include "tpsctl/error.hpp"
#include "tpsctl/report.hpp"

using namespace tpsctl;

namespace {

const std::filesystem::path kFixtures = TPSCTL_FIXTURE_DIR;

NetworkFile fixture(const std::string& name) { return load_network(kFixtures / name); }

}  // namespace

TEST(Report, DriversOnBranching) {
  const Report r = cmd_drivers(fixture("branching.tps"), "drivers branching.tps");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.text,
            "command: drivers branching.tps\n"
            "targets: o=1\n"
            "intervenable: {t3, t4}\n"
            "drivers: {t3, t4}\n"
            "trace:\n"
            "  o expanded\n"
            "  t1 expanded\n"
            "  t2 expanded\n"
            "  t3 terminal (intervenable)\n"
            "  t4 terminal (intervenable)\n"
            "  t5 root\n"
            "intervenable not reached: {}\n");
}

TEST(Report, DriversWhenTargetsAreIntervenable) {
  const NetworkFile f = parse_network("tpsnet 1\nnode a\nnode o\nedge a o\nintervenable a o\ntarget o 1\n");
  const Report r = cmd_drivers(f, "drivers");
  EXPECT_NE(r.text.find("drivers: {o}\n"), std::string::npos);
  EXPECT_NE(r.text.find("intervenable not reached: {a}\n"), std::string::npos);
}

TEST(Report, EvalXor) {
  EXPECT_NE(cmd_eval(fixture("xor_negate.tps"), "eval").text.find("= 1.000000000\n"), std::string::npos);
  EXPECT_NE(cmd_eval(fixture("xor.tps"), "eval").text.find("P(o=1) = 1.000000000\n"), std::string::npos);
  EXPECT_NE(cmd_eval(fixture("xor_do_y1.tps"), "eval").text.find("= 0.300000000\n"), std::string::npos);
  EXPECT_THROW(cmd_eval(fixture("branching.tps"), "eval"), ValidationError);
}

TEST(Report, SolveObjectives) {
  const Report structural = cmd_solve(fixture("branching.tps"), {Objective::MaxMax}, "solve");
  EXPECT_NE(structural.text.find("drivers: {t3, t4}\n"), std::string::npos);
  EXPECT_NE(structural.text.find("value: structural-only\n"), std::string::npos);

  const Report minmax = cmd_solve(fixture("xor.tps"), {Objective::MinMax}, "solve");
  EXPECT_NE(minmax.text.find("drivers: {}\n"), std::string::npos);
  EXPECT_NE(minmax.text.find("value: 1.000000000\n"), std::string::npos);

  const NetworkFile f = parse_network(
      "tpsnet 1\nnode x\nnode o\nedge x o\nintervenable o\ntarget o 1\ncpd x : 0.5 0.5\ncpd o | x : 0.2 0.8 ; 0.6 0.4\n");
  const Report minmin = cmd_solve(f, {Objective::MinMin}, "solve");
  EXPECT_NE(minmin.text.find("value: 0.000000000\n"), std::string::npos);
  EXPECT_NE(minmin.text.find("  o : 1 0\n"), std::string::npos);

  const Report table = cmd_solve(fixture("screened_chain.tps"), {Objective::MaxMax, kDefaultSearchBudget, true}, "solve");
  EXPECT_NE(table.text.find("subsets (class-inf max):\n"), std::string::npos);
}

TEST(Report, VerifyNeedsSeedWithoutCpds) {
  VerifyRequest req;
  req.suite = Suite::Sufficiency;
  EXPECT_THROW(cmd_verify(fixture("branching.tps"), req, "verify"), ValidationError);
  req.seed = 4;
  const Report r = cmd_verify(fixture("branching.tps"), req, "verify");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NE(r.text.find("seed: 4\n"), std::string::npos);
  EXPECT_NE(r.text.find("parametrization: random (seed 4)\n"), std::string::npos);
  EXPECT_EQ(r.text, cmd_verify(fixture("branching.tps"), req, "verify").text);
}

TEST(Report, VerifyUsmNeedsNoParametrization) {
  VerifyRequest req;
  req.suite = Suite::Usm;
  const Report r = cmd_verify(fixture("branching.tps"), req, "verify");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NE(r.text.find("verdict: PASS\n"), std::string::npos);
}

TEST(Report, VerifyRandomFixture) {
  VerifyRequest req;
  req.suite = Suite::All;
  const Report r = cmd_verify(fixture("random5.tps"), req, "verify");
  EXPECT_EQ(r.exit_code, kExitOk) << r.text;
  EXPECT_EQ(r.text.find("FAIL"), std::string::npos);
}

TEST(Report, UsmWritesAdversarialNetwork) {
  const auto out = std::filesystem::temp_directory_path() / "tpsctl_usm.tps";
  const Report r = cmd_usm(fixture("branching.tps"), out, "usm");
  EXPECT_NE(r.text.find("drivers: {t3, t4}\n"), std::string::npos);
  const NetworkFile adv = load_network(out);
  ASSERT_TRUE(adv.cbn.has_value());
  EXPECT_EQ(marginal_prob(*adv.cbn, adv.targets), 0.0);
  std::filesystem::remove(out);
}

TEST(Report, ExitCodes) {
  EXPECT_EQ(exit_code_for(BudgetError("x", 5)), kExitBudget);
  EXPECT_EQ(exit_code_for(ValidationError("x")), kExitInvalid);
  EXPECT_EQ(exit_code_for(ParseError(3, "x")), kExitInvalid);
}
