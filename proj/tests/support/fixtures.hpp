#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "itr/codec.hpp"
#include "itr/dictionary.hpp"
#include "itr/graph.hpp"
#include "itr/query.hpp"

namespace itr::fixtures {

inline constexpr LabelId kG = 0;
inline constexpr LabelId kF = 1;

/// The five-edge example graph: g(11,12), f(12,13), g(10,10), f(10,11), f(10,12).
inline Hypergraph example_graph() {
  Hypergraph h;
  h.node_count = 14;
  h.edges = {{kG, {11, 12}}, {kF, {12, 13}}, {kG, {10, 10}}, {kF, {10, 11}}, {kF, {10, 12}}};
  return h;
}

inline Dictionary example_dictionary() {
  Dictionary dict;
  dict.add_label("g", 2);
  dict.add_label("f", 2);
  dict.set_numeric_nodes(true);
  return dict;
}

/// Its compressed form: start B(12,11,13), B(10,10,11), f(10,12) with
/// B -> {g(1,0), f(0,2)}.
inline Grammar example_grammar() {
  Grammar g;
  g.add_terminal(2);
  g.add_terminal(2);
  const LabelId b = g.add_nonterminal(3);
  Rule rule{b, {3, {{kG, {1, 0}}, {kF, {0, 2}}}}};
  g.rules.push_back(rule);
  g.start.node_count = 14;
  g.start.edges = {{b, {12, 11, 13}}, {b, {10, 10, 11}}, {kF, {10, 12}}};
  return g;
}

inline Dictionary numeric_dictionary(std::uint32_t labels, std::uint32_t rank = 2) {
  Dictionary dict;
  for (std::uint32_t l = 0; l < labels; ++l) dict.add_label("p" + std::to_string(l), rank);
  dict.set_numeric_nodes(true);
  return dict;
}

inline Hypergraph random_graph(std::mt19937_64& rng, std::size_t nodes, std::size_t edges, std::uint32_t labels) {
  Hypergraph h;
  h.node_count = nodes;
  std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(nodes - 1));
  std::uniform_int_distribution<std::uint32_t> label(0, labels - 1);
  for (std::size_t j = 0; j < edges; ++j) h.edges.push_back({label(rng), {node(rng), node(rng)}});
  return h;
}

/// Grammar with no rules over `labels` rank-2 terminals.
inline Grammar flat_grammar(const Hypergraph& h, std::uint32_t labels) {
  Grammar g;
  for (std::uint32_t l = 0; l < labels; ++l) g.add_terminal(2);
  g.start = h;
  return g;
}

inline CompressedGraph load(const Grammar& grammar, const Dictionary& dict, bool itr_plus = false) {
  return deserialize(serialize(grammar, dict, ContainerFlags{itr_plus, 2}));
}

/// Rank-2 edges of a plain graph matching the pattern, in edge order.
inline std::vector<Edge> naive_answer(const Hypergraph& h, const TriplePattern& q) {
  std::vector<Edge> out;
  for (const Edge& e : h.edges) {
    if (e.rank() != 2) continue;
    if (q.s && e.nodes[0] != *q.s) continue;
    if (q.p && e.label != *q.p) continue;
    if (q.o && e.nodes[1] != *q.o) continue;
    out.push_back(e);
  }
  return out;
}

inline std::vector<Edge> sorted(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace itr::fixtures
