#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "itr/error.hpp"
#include "itr/graph.hpp"

namespace itr {
namespace {

using fixtures::kF;
using fixtures::kG;

TEST(ExpandEdge, SubstitutesFormalNodes) {
  const Grammar g = fixtures::example_grammar();
  const LabelId b = 2;
  EXPECT_EQ(expand_edge(g, {b, {12, 11, 13}}), (std::vector<Edge>{{kG, {11, 12}}, {kF, {12, 13}}}));
  EXPECT_EQ(expand_edge(g, {b, {10, 10, 11}}), (std::vector<Edge>{{kG, {10, 10}}, {kF, {10, 11}}}));
}

TEST(ExpandEdge, RankOneRule) {
  Grammar g;
  const LabelId x = g.add_terminal(1);
  const LabelId a = g.add_nonterminal(1);
  g.rules.push_back({a, {1, {{x, {0}}}}});
  EXPECT_EQ(expand_edge(g, {a, {5}}), (std::vector<Edge>{{x, {5}}}));
}

TEST(ExpandEdge, UnknownNonterminalThrows) {
  Grammar g;
  g.add_terminal(2);
  const LabelId a = g.add_nonterminal(2);
  try {
    expand_edge(g, {a, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_nonterminal);
  }
}

TEST(Decompress, ExampleGrammarGivesExampleGraph) {
  EXPECT_TRUE(graphs_equal(decompress(fixtures::example_grammar()), fixtures::example_graph()));
}

TEST(Decompress, HierarchicalRule) {
  Grammar g = fixtures::example_grammar();
  const LabelId c = g.add_nonterminal(3);
  g.rules.push_back({c, {3, {{2, {0, 1, 2}}}}});
  g.start.edges = {{c, {12, 11, 13}}};
  const Hypergraph out = decompress(g);
  EXPECT_EQ(out.edges, (std::vector<Edge>{{kG, {11, 12}}, {kF, {12, 13}}}));
}

TEST(Decompress, NoRulesLeavesStartGraph) {
  const Hypergraph h = fixtures::example_graph();
  const Grammar g = fixtures::flat_grammar(h, 2);
  EXPECT_EQ(decompress(g).edges, h.edges);
  EXPECT_EQ(decompress(g).node_count, 14u);
}

TEST(Validate, ExampleGrammarIsStraightLine) { EXPECT_FALSE(validate_straight_line(fixtures::example_grammar())); }

TEST(Validate, DetectsRecursion) {
  Grammar g;
  g.add_terminal(2);
  const LabelId a = g.add_nonterminal(2);
  g.rules.push_back({a, {2, {{a, {0, 1}}}}});
  const auto v = validate_straight_line(g);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Violation::Kind::recursion);
}

TEST(Validate, DetectsDuplicateRule) {
  Grammar g;
  g.add_terminal(2);
  const LabelId a = g.add_nonterminal(2);
  g.rules.push_back({a, {2, {{0, {0, 1}}}}});
  g.rules.push_back({a, {2, {{0, {1, 0}}}}});
  const auto v = validate_straight_line(g);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Violation::Kind::duplicate_rule);
}

TEST(Validate, DetectsInternalNodes) {
  Grammar g;
  g.add_terminal(2);
  const LabelId a = g.add_nonterminal(2);
  g.rules.push_back({a, {3, {{0, {0, 2}}}}});
  const auto v = validate_straight_line(g);
  ASSERT_TRUE(v);
}

TEST(GraphsEqual, DirectionAndMultiplicity) {
  Hypergraph a{2, {{0, {0, 1}}}};
  Hypergraph b{2, {{0, {1, 0}}}};
  EXPECT_TRUE(graphs_equal(a, a));
  EXPECT_FALSE(graphs_equal(a, b));
  Hypergraph twice{2, {{0, {0, 1}}, {0, {0, 1}}}};
  EXPECT_FALSE(graphs_equal(a, twice));
  Hypergraph reordered = fixtures::example_graph();
  std::reverse(reordered.edges.begin(), reordered.edges.end());
  EXPECT_TRUE(graphs_equal(reordered, fixtures::example_graph()));
}

TEST(Cost, EdgePlusRank) {
  EXPECT_EQ(graph_cost(fixtures::example_graph()), 15u);
  EXPECT_EQ(grammar_cost(fixtures::example_grammar()), 4u + 4u + 3u + 3u + 3u);
}

}  // namespace
}  // namespace itr
