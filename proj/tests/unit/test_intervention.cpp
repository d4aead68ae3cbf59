#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tpsctl/error.hpp"
#include "tpsctl/intervention.hpp"
#include "tpsctl/random_network.hpp"

using namespace tpsctl;

namespace {

Dag chain() { return Dag::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Cbn xor_net(double px) {
  Dag g = Dag::from_names({"x", "y", "o"}, {{"x", "y"}, {"x", "o"}, {"y", "o"}});
  return Cbn(g, {2, 2, 2},
             {Cpd(0, 2, {}, {}, {1 - px, px}), Cpd(1, 2, {0}, {2}, {0, 1, 1, 0}),
              Cpd(2, 2, {0, 1}, {2, 2}, {1, 0, 0, 1, 0, 1, 1, 0})});
}

InterventionPolicy negate_x() { return InterventionPolicy(Cpd(1, 2, {0}, {2}, {0, 1, 1, 0})); }

InterventionPair pair_of(std::initializer_list<InterventionPolicy> policies) {
  InterventionPair p;
  for (const auto& pol : policies) p.add(pol);
  return p;
}

// Random stochastic table for v over `scope`.
Cpd random_table(NodeIndex v, const NodeSet& scope, const std::vector<std::size_t>& cards, Rng& rng) {
  std::vector<std::size_t> pc;
  std::size_t rows = 1;
  for (NodeIndex s : scope) {
    pc.push_back(cards[s]);
    rows *= cards[s];
  }
  std::vector<double> t;
  for (std::size_t r = 0; r < rows; ++r) {
    const double u = rng.uniform();
    t.push_back(u);
    t.push_back(1 - u);
  }
  return Cpd(v, cards[v], scope, pc, t);
}

}  // namespace

TEST(IpClass, ParseAndPrint) {
  EXPECT_EQ(IpClass::parse("inf"), IpClass::infinite());
  EXPECT_EQ(IpClass::parse("infinity"), IpClass::infinite());
  EXPECT_EQ(IpClass::parse("2").level, 2u);
  EXPECT_EQ(IpClass::infinite().to_string(), "inf");
  EXPECT_THROW(IpClass::parse("two"), ValidationError);
}

TEST(Scope, PerClass) {
  const Dag g = chain();
  EXPECT_EQ(scope_for_class(g, 2, IpClass{0}), NodeSet{});
  EXPECT_EQ(scope_for_class(g, 2, IpClass{1}), NodeSet{1});
  EXPECT_EQ(scope_for_class(g, 2, IpClass::infinite()), (NodeSet{0, 1}));
}

TEST(Policy, AtomicRows) {
  EXPECT_EQ(atomic_policy(1, 1, 2).table().table(), (std::vector<double>{0, 1}));
  EXPECT_EQ(atomic_policy(1, 0, 2).table().table(), (std::vector<double>{1, 0}));
  EXPECT_THROW(atomic_policy(1, 3, 2), ValidationError);
}

TEST(Policy, Classification) {
  const Dag g = chain();
  EXPECT_EQ(classify_policy(g, atomic_policy(2, 0, 2)), IpClass{0});
  EXPECT_EQ(classify_policy(xor_net(0.7).dag(), negate_x()), IpClass{1});
  EXPECT_EQ(classify_policy(g, InterventionPolicy(Cpd(2, 2, {0}, {2}, {1, 0, 0, 1}))), IpClass{2});
}

TEST(Policy, ValidationRejectsBadScopes) {
  const Dag g = chain();
  const std::vector<std::size_t> cards{2, 2, 2};
  // Scope outside the ancestry.
  EXPECT_THROW(validate_policy(g, cards, InterventionPolicy(Cpd(0, 2, {2}, {2}, {1, 0, 0, 1}))),
               ValidationError);
  // Wrong cardinality.
  EXPECT_THROW(validate_policy(g, cards, InterventionPolicy(Cpd(1, 3, {}, {}, {1, 0, 0}))),
               ValidationError);
  InterventionPair p;
  p.add(atomic_policy(1, 0, 2));
  EXPECT_THROW(p.add(atomic_policy(1, 1, 2)), ValidationError);
}

TEST(IDagBuild, EmptyPairKeepsEverything) {
  const Dag g = chain();
  const IDag id = build_idag(g, {});
  EXPECT_EQ(id.solid, g.edges());
  EXPECT_TRUE(id.dashed.empty());
}

TEST(IDagBuild, ScopeEdgesBecomeDashed) {
  const Cbn cbn = xor_net(0.7);
  const IDag id = build_idag(cbn.dag(), pair_of({negate_x()}));
  EXPECT_EQ(id.solid, (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(id.dashed, (std::vector<Edge>{{0, 1}, {kClamp, 1}}));
}

TEST(IDagBuild, AtomicOnRootUsesClamp) {
  const Dag g = chain();
  const IDag id = build_idag(g, pair_of({atomic_policy(0, 1, 2)}));
  EXPECT_EQ(id.dashed, (std::vector<Edge>{{kClamp, 0}}));
  EXPECT_EQ(id.solid, g.edges());
}

TEST(Subsumption, Plain) {
  const Dag diamond = Dag::from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  const Dag thinner = Dag::from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "d"}});
  EXPECT_TRUE(subsumes(diamond, thinner));
  EXPECT_FALSE(subsumes(thinner, diamond));
  EXPECT_TRUE(subsumes(diamond, diamond));
  EXPECT_TRUE(surplus(diamond, diamond).empty());
  EXPECT_EQ(surplus(diamond, thinner).size(), 2u);
  EXPECT_FALSE(subsumes(diamond, Dag::from_names({"a", "b", "c"}, {})));
}

TEST(Subsumption, ISubsumesExamples) {
  const Dag g = chain();
  const std::vector<std::size_t> cards{2, 2, 2};
  const auto inf = deterministic_policy(g, cards, 2, {0, 1}, [](auto s) { return s[0] ^ s[1]; });
  const IDag full = build_idag(g, pair_of({inf}));
  const IDag atomic = build_idag(g, pair_of({atomic_policy(2, 1, 2)}));
  EXPECT_TRUE(i_subsumes(full, full));
  EXPECT_TRUE(i_subsumes(full, atomic));
  EXPECT_FALSE(i_subsumes(atomic, full));

  const Dag ayo = Dag::from_names({"a", "y", "o"}, {{"a", "y"}, {"y", "o"}});
  const IDag one = build_idag(ayo, pair_of({atomic_policy(0, 1, 2)}));
  const IDag two = build_idag(ayo, pair_of({atomic_policy(0, 1, 2), atomic_policy(1, 0, 2)}));
  EXPECT_FALSE(i_subsumes(one, two));
  EXPECT_THROW(i_subsumes(full, one), ValidationError);
}

TEST(Subsumption, ISubsumedPairsCanBeReproduced) {
  // Whenever A i-subsumes B, A's policies can be chosen to give B's joint.
  std::size_t reproduced = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed * 7 + 1);
    const RandomNetwork net = random_network(seed, {.min_nodes = 3, .max_nodes = 5});
    const Cbn& cbn = net.cbn;
    const Dag& g = cbn.dag();
    auto draw_pair = [&] {
      InterventionPair p;
      for (NodeIndex v = 0; v < g.size(); ++v) {
        if (!rng.bernoulli(0.4)) continue;
        const std::size_t level = rng.below(4);
        const IpClass cls = level == 3 ? IpClass::infinite() : IpClass{level};
        const NodeSet scope = scope_for_class(g, v, cls);
        p.add(InterventionPolicy(random_table(v, scope, cbn.cards(), rng)));
      }
      return p;
    };
    const InterventionPair b = draw_pair();
    InterventionPair a;
    if (seed % 2 == 0) {
      a = draw_pair();
      if (!i_subsumes(build_idag(g, a), build_idag(g, b))) continue;
    } else {
      // Class-infinity on a superset of B's targets always i-subsumes B.
      for (NodeIndex v = 0; v < g.size(); ++v)
        if (b.find(v) || rng.bernoulli(0.3))
          a.add(InterventionPolicy(
              random_table(v, scope_for_class(g, v, IpClass::infinite()), cbn.cards(), rng)));
      ASSERT_TRUE(i_subsumes(build_idag(g, a), build_idag(g, b))) << "seed " << seed;
    }
    std::map<NodeIndex, oracle::Table> embed_b, embed_a;
    for (const auto& [v, pol] : b.policies())
      embed_b[v] = {pol.scope(), pol.table().table()};
    for (const auto& [v, pol] : a.policies()) {
      const InterventionPolicy* in_b = b.find(v);
      const Cpd& source = in_b ? in_b->table() : cbn.cpd(v);
      const Cpd widened = widen_scope(source, pol.scope(), cbn.cards());
      embed_a[v] = {widened.parents(), widened.table()};
    }
    const auto ja = oracle::joint(cbn, embed_a), jb = oracle::joint(cbn, embed_b);
    for (std::size_t i = 0; i < ja.size(); ++i) ASSERT_NEAR(ja[i], jb[i], 1e-12) << "seed " << seed;
    ++reproduced;
  }
  EXPECT_GE(reproduced, 75u);
}

TEST(Apply, EmptyPairIsIdentity) {
  const Cbn cbn = xor_net(0.7);
  EXPECT_EQ(apply_intervention(cbn, {}), cbn);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomNetwork net = random_network(seed);
    EXPECT_EQ(interventional_prob(net.cbn, {}, net.desired), marginal_prob(net.cbn, net.desired));
  }
}

TEST(Apply, XorPolicies) {
  const Cbn cbn = xor_net(0.7);
  const Cbn atomic = apply_intervention(cbn, pair_of({atomic_policy(1, 1, 2)}));
  EXPECT_TRUE(atomic.dag().parents(1).empty());
  EXPECT_FALSE(atomic.dag().has_edge(0, 1));
  const double forced = oracle::event_prob(cbn, oracle::joint(cbn, {{1, {{}, {0, 1}}}}), {{2, 1}});
  EXPECT_NEAR(forced, 0.3, 1e-12);
  EXPECT_NEAR(interventional_prob(cbn, pair_of({atomic_policy(1, 1, 2)}), {{2, 1}}), forced, 1e-12);
  EXPECT_EQ(interventional_prob(cbn, pair_of({negate_x()}), {{2, 1}}), 1.0);
  const auto a = oracle::joint(cbn), b = oracle::joint(apply_intervention(cbn, pair_of({negate_x()})));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
}

TEST(Apply, MatchesOracleOnRandomPolicies) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed + 100);
    const RandomNetwork net = random_network(seed);
    const Dag& g = net.cbn.dag();
    InterventionPair pair;
    std::map<NodeIndex, oracle::Table> tables;
    for (NodeIndex v = 0; v < g.size(); ++v) {
      if (!rng.bernoulli(0.5)) continue;
      const NodeSet scope = scope_for_class(g, v, rng.bernoulli(0.5) ? IpClass::infinite() : IpClass{1});
      Cpd t = random_table(v, scope, net.cbn.cards(), rng);
      tables[v] = {t.parents(), t.table()};
      pair.add(InterventionPolicy(std::move(t)));
    }
    const Cbn applied = apply_intervention(net.cbn, pair);
    EXPECT_NO_THROW(topological_order(applied.dag()));
    EXPECT_NEAR(interventional_prob(net.cbn, pair, net.desired),
                oracle::event_prob(net.cbn, oracle::joint(net.cbn, tables), net.desired), 1e-12);
  }
}

TEST(Widen, IgnoresAddedScopeMembers) {
  const Cpd t(2, 2, {1}, {2}, {0.2, 0.8, 0.6, 0.4});
  const Cpd w = widen_scope(t, {0, 1}, {2, 2, 2});
  EXPECT_EQ(w.table(), (std::vector<double>{0.2, 0.8, 0.6, 0.4, 0.2, 0.8, 0.6, 0.4}));
  EXPECT_THROW(widen_scope(t, {0}, {2, 2, 2}), ValidationError);
}
