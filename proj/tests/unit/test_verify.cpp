#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tpsctl/error.hpp"
#include "tpsctl/random_network.hpp"
#include "tpsctl/verify.hpp"

using namespace tpsctl;

namespace {

Cbn xor_net(double px) {
  Dag g = Dag::from_names({"x", "y", "o"}, {{"x", "y"}, {"x", "o"}, {"y", "o"}});
  return Cbn(g, {2, 2, 2},
             {Cpd(0, 2, {}, {}, {1 - px, px}), Cpd(1, 2, {0}, {2}, {0, 1, 1, 0}),
              Cpd(2, 2, {0, 1}, {2, 2}, {1, 0, 0, 1, 0, 1, 1, 0})});
}

void expect_all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks) EXPECT_TRUE(c.pass) << c.property << ": " << c.detail;
  EXPECT_FALSE(checks.empty());
}

}  // namespace

TEST(Verify, XorAllSuites) {
  const Cbn cbn = xor_net(0.7);
  const Instance in{cbn, {1}, {{2, 1}}};
  expect_all_pass(verify_lemma3(in));
  expect_all_pass(verify_sufficiency(in));
  expect_all_pass(verify_extremality(in));
  expect_all_pass(verify_minimax(in));
  expect_all_pass(verify_min_min(in));
  expect_all_pass(verify_usm(cbn.dag(), {1}, {2}));
}

TEST(Verify, Lemma3RefusesClassZero) {
  const Cbn cbn = xor_net(0.7);
  VerifyOptions options;
  options.lemma3_classes = {IpClass{0}};
  EXPECT_THROW(verify_lemma3({cbn, {1}, {{2, 1}}}, options), ValidationError);
}

TEST(Verify, MinMinWithIntervenableTarget) {
  const Cbn cbn = xor_net(0.7);
  const auto checks = verify_min_min({cbn, {1, 2}, {{2, 1}}});
  ASSERT_EQ(checks.size(), 2u);
  expect_all_pass(checks);
}

TEST(Verify, UsmOnBranchingStructure) {
  const Dag g = Dag::from_names({"o", "t1", "t2", "t3", "t4", "t5"},
                                {{"t1", "o"}, {"t2", "t1"}, {"t3", "t1"}, {"t4", "t2"}, {"t5", "t2"}});
  const auto checks = verify_usm(g, {3, 4}, {0});
  ASSERT_EQ(checks.size(), 2u);
  expect_all_pass(checks);
  EXPECT_NE(checks[1].detail.find("3 proper subsets"), std::string::npos);
}

TEST(Verify, ExtremalitySamplesLargeGrids) {
  const RandomNetwork net = random_network(8, {.min_nodes = 6, .max_nodes = 6, .intervenable_probability = 0.9});
  VerifyOptions options;
  options.grid_budget = 64;
  options.seed = 3;
  const auto checks = verify_extremality({net.cbn, net.intervenable, net.desired}, options);
  expect_all_pass(checks);
  bool sampled = false;
  for (const Check& c : checks) sampled = sampled || c.detail.find("sampled") != std::string::npos;
  EXPECT_TRUE(sampled);
}

TEST(Verify, StochasticValueMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomNetwork net = random_network(seed);
    Rng rng(seed);
    std::map<NodeIndex, Cpd> policies;
    std::map<NodeIndex, oracle::Table> tables;
    for (NodeIndex v : net.intervenable) {
      const double u = rng.uniform();
      policies.emplace(v, Cpd(v, 2, {}, {}, {u, 1 - u}));
      tables[v] = {{}, {u, 1 - u}};
    }
    EXPECT_NEAR(stochastic_value(net.cbn, policies, net.desired),
                oracle::event_prob(net.cbn, oracle::joint(net.cbn, tables), net.desired), 1e-12);
  }
}

TEST(Verify, SuiteNames) {
  EXPECT_EQ(parse_suite("usm"), Suite::Usm);
  EXPECT_EQ(to_string(Suite::Sufficiency), "sufficiency");
  EXPECT_THROW(parse_suite("bogus"), ValidationError);
}
