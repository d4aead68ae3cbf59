#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tpsctl/error.hpp"
#include "tpsctl/graph.hpp"
#include "tpsctl/random_network.hpp"

using namespace tpsctl;

namespace {

Dag branching() {
  return Dag::from_names({"o", "t1", "t2", "t3", "t4", "t5"},
                         {{"t1", "o"}, {"t2", "t1"}, {"t3", "t1"}, {"t4", "t2"}, {"t5", "t2"}});
}

}  // namespace

TEST(Dag, RejectsCycles) {
  EXPECT_THROW(Dag::from_names({"a", "b"}, {{"a", "b"}, {"b", "a"}}), ValidationError);
}

TEST(Dag, RejectsSelfLoopsDuplicatesAndUnknownNodes) {
  EXPECT_THROW(Dag::from_names({"a"}, {{"a", "a"}}), ValidationError);
  EXPECT_THROW(Dag::from_names({"a", "b"}, {{"a", "b"}, {"a", "b"}}), ValidationError);
  EXPECT_THROW(Dag::from_names({"a"}, {{"a", "zz"}}), ValidationError);
  EXPECT_THROW(Dag::from_names({"a", "a"}, {}), ValidationError);
  EXPECT_THROW(Dag::from_names({""}, {}), ValidationError);
}

TEST(Dag, ParentsAndChildrenAreSorted) {
  const Dag g = branching();
  EXPECT_EQ(g.parents(g.index("t1")), (NodeSet{g.index("t2"), g.index("t3")}));
  EXPECT_EQ(g.children(g.index("t2")), (NodeSet{g.index("t1")}));
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_THROW(g.index("missing"), ValidationError);
}

TEST(Dag, TopologicalOrderRespectsEdges) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Dag g = random_dag(7, 0.5, rng);
    const auto order = topological_order(g);
    std::vector<std::size_t> pos(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const Edge& e : g.edges()) EXPECT_LT(pos[e.parent], pos[e.child]);
  }
}

TEST(Dag, AncestorsByLevel) {
  const Dag g = branching();
  const NodeIndex o = g.index("o");
  EXPECT_EQ(ancestors(g, o, 1), (NodeSet{g.index("t1")}));
  EXPECT_EQ(ancestors(g, o, 2), (NodeSet{g.index("t1"), g.index("t2"), g.index("t3")}));
  EXPECT_EQ(ancestors(g, o).size(), 5u);
  EXPECT_THROW(ancestors(g, o, 0), ValidationError);
  EXPECT_EQ(descendants(g, g.index("t4")), (NodeSet{g.index("o"), g.index("t1"), g.index("t2")}));
}

TEST(Dag, AncestorLevelsMatchRepeatedParentExpansion) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const RandomNetwork net = random_network(seed);
    const Dag& g = net.cbn.dag();
    for (NodeIndex v = 0; v < g.size(); ++v)
      for (std::size_t level : {std::size_t{1}, std::size_t{2}, std::size_t{3}, kAllLevels})
        EXPECT_EQ(ancestors(g, v, level), oracle::class_scope(net.cbn, v, level));
  }
}

TEST(BackwardChain, StopsAtInterveneableNodes) {
  const Dag g = branching();
  const auto bc = backward_chain(g, {g.index("o")}, {g.index("t3"), g.index("t4")});
  EXPECT_EQ(bc.terminals, (NodeSet{g.index("t3"), g.index("t4")}));
  EXPECT_EQ(bc.visited.size(), 6u);
}

TEST(BackwardChain, StartNodeInStopSetTerminatesImmediately) {
  const Dag g = branching();
  const auto bc = backward_chain(g, {g.index("o")}, {g.index("o"), g.index("t3")});
  EXPECT_EQ(bc.terminals, (NodeSet{g.index("o")}));
  EXPECT_EQ(bc.visited, (NodeSet{g.index("o")}));
}

TEST(DSeparation, ClassicPatterns) {
  const Dag chain = Dag::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_FALSE(d_separated(chain, {0}, {2}, {}));
  EXPECT_TRUE(d_separated(chain, {0}, {2}, {1}));
  const Dag collider = Dag::from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "b"}, {"b", "d"}});
  EXPECT_TRUE(d_separated(collider, {0}, {2}, {}));
  EXPECT_FALSE(d_separated(collider, {0}, {2}, {1}));
  EXPECT_FALSE(d_separated(collider, {0}, {2}, {3}));
}

TEST(DSeparation, RejectsOverlappingOrEmptySets) {
  const Dag chain = Dag::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_THROW(d_separated(chain, {0}, {0}, {}), ValidationError);
  EXPECT_THROW(d_separated(chain, {0}, {2}, {0}), ValidationError);
  EXPECT_THROW(d_separated(chain, {}, {2}, {}), ValidationError);
}

TEST(DSeparation, AgreesWithPathEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RandomNetwork net = random_network(seed, {.min_nodes = 5, .max_nodes = 5});
    const Dag& g = net.cbn.dag();
    const std::size_t n = g.size();
    for (NodeIndex a = 0; a < n; ++a)
      for (NodeIndex b = a + 1; b < n; ++b)
        for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
          if ((mask >> a & 1) || (mask >> b & 1)) continue;
          NodeSet z;
          for (NodeIndex v = 0; v < n; ++v)
            if (mask >> v & 1) z.push_back(v);
          ASSERT_EQ(d_separated(g, {a}, {b}, z), oracle::d_separated_by_paths(net.cbn, a, b, z))
              << "seed " << seed << " pair " << a << "," << b << " mask " << mask;
        }
  }
}

TEST(DSeparation, IsSymmetric) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Dag g = random_dag(6, 0.4, rng);
    for (NodeIndex a = 0; a < g.size(); ++a)
      for (NodeIndex b = 0; b < g.size(); ++b)
        if (a != b) {
          NodeSet z;
          for (NodeIndex v = 0; v < g.size(); ++v)
            if (v != a && v != b && v % 2 == 0) z.push_back(v);
          EXPECT_EQ(d_separated(g, {a}, {b}, z), d_separated(g, {b}, {a}, z));
        }
  }
}

TEST(Sets, Helpers) {
  EXPECT_EQ(canonical({3, 1, 3, 2}), (NodeSet{1, 2, 3}));
  EXPECT_TRUE(is_subset({1, 3}, {1, 2, 3}));
  EXPECT_FALSE(is_subset({4}, {1, 2, 3}));
  EXPECT_EQ(set_union({1, 3}, {2, 3}), (NodeSet{1, 2, 3}));
  EXPECT_EQ(set_difference({1, 2, 3}, {2}), (NodeSet{1, 3}));
  EXPECT_EQ(set_intersection({1, 2, 3}, {2, 4}), (NodeSet{2}));
}

TEST(Dag, OrderAndReachabilityExamples) {
  const Dag chain = Dag::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(topological_order(chain), (std::vector<NodeIndex>{0, 1, 2}));
  const Dag diamond = Dag::from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  EXPECT_EQ(topological_order(diamond), (std::vector<NodeIndex>{0, 1, 2, 3}));
  EXPECT_EQ(descendants(diamond, 0), (NodeSet{1, 2, 3}));
  EXPECT_TRUE(descendants(chain, 2).empty());
  EXPECT_TRUE(ancestors(chain, 0).empty());
  EXPECT_EQ(topological_order(Dag::from_names({"x"}, {})), (std::vector<NodeIndex>{0}));
  EXPECT_THROW(Dag::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}), ValidationError);
  const auto bc = backward_chain(chain, {2}, {});
  EXPECT_EQ(bc.visited, (NodeSet{0, 1, 2}));
  EXPECT_TRUE(bc.terminals.empty());
}

TEST(Dag, AncestorLevelsAreNested) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Dag g = random_dag(7, 0.4, rng);
    for (NodeIndex v = 0; v < g.size(); ++v) {
      NodeSet prev;
      for (std::size_t j = 1; j <= 7; ++j) {
        const NodeSet cur = ancestors(g, v, j);
        EXPECT_TRUE(is_subset(prev, cur));
        prev = cur;
      }
      EXPECT_EQ(prev, ancestors(g, v));
    }
  }
}
