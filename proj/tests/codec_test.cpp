#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "itr/codec.hpp"
#include "itr/error.hpp"
#include "itr/repair.hpp"

namespace itr {
namespace {

using fixtures::kF;
using fixtures::kG;

ErrorCode code_of(const std::vector<std::uint8_t>& bytes) {
  try {
    deserialize(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::usage;
}

TEST(IndexFunction, ExampleEdge) {
  const EdgeSpread s = compute_index_function({2, {10, 10, 11}});
  EXPECT_EQ(s.nodes, (std::vector<NodeId>{10, 11}));
  EXPECT_EQ(s.function.positions, (std::vector<std::uint32_t>{0, 0, 1}));
  EXPECT_EQ(compute_index_function({0, {3, 7}}).function.positions, (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(compute_index_function({0, {7, 3}}).function.positions, (std::vector<std::uint32_t>{1, 0}));
}

TEST(IndexFunction, Encoding) {
  EXPECT_EQ(encode_index_function({{0, 0, 1}}).to_string(), "0101" "1" "1" "0100");
  EXPECT_EQ(encode_index_function({{0}}).to_string(), "11");
}

TEST(IndexFunction, RandomRoundTrip) {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 500; ++round) {
    Edge e{0, {}};
    const std::size_t rank = 1 + rng() % 8;
    for (std::size_t m = 0; m < rank; ++m) e.nodes.push_back(static_cast<NodeId>(rng() % 4));
    const EdgeSpread s = compute_index_function(e);
    for (std::size_t m = 0; m < rank; ++m) ASSERT_EQ(s.nodes[s.function.positions[m]], e.nodes[m]);
    BitWriter w;
    write_index_function(w, s.function);
    BitReader r(w.bits());
    ASSERT_EQ(read_index_function(r), s.function);
  }
}

TEST(StartGraph, ColumnReconstruction) {
  const Grammar g = fixtures::example_grammar();
  const CompressedStartGraph sg = CompressedStartGraph::encode(g.start, g.labels.size());
  ASSERT_EQ(sg.edge_count(), 3u);
  EXPECT_EQ(sg.label(0), kF);
  EXPECT_EQ(sg.incidence().col_ones(2), (std::vector<std::uint64_t>{10, 11}));
  const IndexFunction& pi = sg.function_table()[sg.function_ids()[2]];
  EXPECT_EQ(pi.positions, (std::vector<std::uint32_t>{0, 0, 1}));
  EXPECT_EQ(sg.decode_edge(2), (Edge{2, {10, 10, 11}}));
  EXPECT_EQ(sg.decode_edge(1), (Edge{2, {12, 11, 13}}));
  EXPECT_EQ(sg.decode_edge(0), (Edge{kF, {10, 12}}));
}

TEST(StartGraph, SingleEdge) {
  const CompressedStartGraph sg = CompressedStartGraph::encode({2, {{0, {0, 1}}}}, 1);
  EXPECT_EQ(sg.label(0), 0u);
  EXPECT_EQ(sg.incidence().col_ones(0), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(sg.function_table().size(), 1u);
  EXPECT_EQ(sg.decode_edge(0), (Edge{0, {0, 1}}));
}

TEST(StartGraph, RandomRoundTripAndDedup) {
  std::mt19937_64 rng(10);
  for (int round = 0; round < 50; ++round) {
    Hypergraph h = fixtures::random_graph(rng, 20, 200, 4);
    for (int j = 0; j < 20; ++j) {
      const NodeId v = rng() % 20;
      h.edges.push_back({4, {v, v, static_cast<NodeId>(rng() % 20)}});
    }
    const CompressedStartGraph sg = CompressedStartGraph::encode(h, 5);
    std::vector<Edge> back;
    for (std::size_t j = 0; j < sg.edge_count(); ++j) back.push_back(sg.decode_edge(j));
    ASSERT_EQ(fixtures::sorted(back), fixtures::sorted(h.edges));
    const auto& fns = sg.function_table();
    ASSERT_EQ(std::set<IndexFunction>(fns.begin(), fns.end()).size(), fns.size());
  }
}

TEST(Rules, EncodingExample) {
  // Terminals a, b, d; B -> {a(0,1), b(1,2)}; C -> {d(0,1), B(1,2,0)}.
  const std::vector<Rule> rules{{3, {3, {{0, {0, 1}}, {1, {1, 2}}}}}, {4, {3, {{2, {0, 1}}, {3, {1, 2, 0}}}}}};
  const DeltaStream c = encode_rules(std::span(rules).subspan(1));
  // delta(x + 1) of 2, d=2, 0, 1, B=3, 1, 2, 0
  EXPECT_EQ(c.bits.to_string(), "0101" "0101" "1" "0100" "01100" "0100" "0101" "1");
  EXPECT_EQ(delta_decode(c), (std::vector<std::uint64_t>{2, 2, 0, 1, 3, 1, 2, 0}));
}

TEST(Rules, ExampleRuleStream) {
  const Grammar g = fixtures::example_grammar();
  EXPECT_EQ(delta_decode(encode_rules(g.rules)), (std::vector<std::uint64_t>{2, kG, 1, 0, kF, 0, 2}));
  EXPECT_TRUE(encode_rules(std::vector<Rule>{}).bits.empty());
}

TEST(Rules, DecodeDerivesRanks) {
  const Grammar g = fixtures::example_grammar();
  BitWriter w;
  write_rules(w, g.rules);
  std::vector<LabelInfo> labels(g.labels.begin(), g.labels.begin() + 2);
  BitReader r(w.bits());
  const auto rules = read_rules(r, 1, labels);
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[2].rank, 3u);
  EXPECT_EQ(rules[0].rhs.edges, g.rules[0].rhs.edges);
}

TEST(Rules, DecodeRejectsUnknownLabel) {
  const std::vector<Rule> bad{{2, {2, {{5, {0, 1}}}}}};
  BitWriter w;
  write_rules(w, bad);
  std::vector<LabelInfo> labels{{0, 2, LabelKind::terminal}, {1, 2, LabelKind::terminal}};
  BitReader r(w.bits());
  EXPECT_THROW(read_rules(r, 1, labels), Error);
}

TEST(NTMatrix, DirectAndTransitive) {
  Grammar h;
  h.add_terminal(2);
  h.add_terminal(2);
  h.add_terminal(2);
  const LabelId b = h.add_nonterminal(3);
  h.rules.push_back({b, {3, {{kG, {1, 0}}, {kF, {0, 2}}}}});
  const LabelId c = h.add_nonterminal(3);
  h.rules.push_back({c, {3, {{b, {0, 1, 2}}}}});
  const NTMatrix nt = NTMatrix::build(h);
  EXPECT_TRUE(nt.generates(b, kG));
  EXPECT_TRUE(nt.generates(b, kF));
  EXPECT_TRUE(nt.generates(c, kG));
  EXPECT_FALSE(nt.generates(c, 2));
}

TEST(Container, RoundTripIsBitExact) {
  std::mt19937_64 rng(14);
  const Hypergraph h = fixtures::random_graph(rng, 50, 500, 3);
  const Grammar g = prune(replace_digrams(fixtures::flat_grammar(h, 3)));
  const Dictionary dict = fixtures::numeric_dictionary(3);
  const auto bytes = serialize(g, dict);
  const CompressedGraph view = deserialize(bytes);
  EXPECT_EQ(serialize(view), bytes);
  EXPECT_TRUE(graphs_equal(decompress(view.to_grammar()), h));
  EXPECT_EQ(view.dict, dict);
}

TEST(Container, Corruption) {
  const auto good = serialize(fixtures::example_grammar(), fixtures::example_dictionary());
  auto bad = good;
  bad[0] = 'X';
  EXPECT_EQ(code_of(bad), ErrorCode::bad_magic);
  bad = good;
  bad[3] = '9';
  EXPECT_EQ(code_of(bad), ErrorCode::bad_version);
  bad.assign(good.begin(), good.begin() + 20);
  EXPECT_EQ(code_of(bad), ErrorCode::truncated);
  bad.assign(good.begin(), good.end() - 1);
  EXPECT_EQ(code_of(bad), ErrorCode::truncated);
  bad = good;
  bad.push_back(0);
  EXPECT_EQ(code_of(bad), ErrorCode::section_mismatch);
}

TEST(Container, SectionSizesAddUp) {
  const auto bytes = serialize(fixtures::example_grammar(), fixtures::example_dictionary());
  const SectionSizes s = read_section_sizes(bytes);
  std::uint64_t total = kHeaderSize;
  for (auto b : s.bytes) total += b;
  EXPECT_EQ(total, bytes.size());
}

}  // namespace
}  // namespace itr
