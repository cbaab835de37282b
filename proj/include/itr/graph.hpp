#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace itr {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

enum class LabelKind : std::uint8_t { terminal, nonterminal };

struct LabelInfo {
  LabelId id = 0;
  std::uint32_t rank = 0;
  LabelKind kind = LabelKind::terminal;
};

/// A (hyper)edge: a label plus an ordered node sequence whose length is the
/// label's rank. For rank-2 terminals position 0 is the source and position 1
/// the destination.
struct Edge {
  LabelId label = 0;
  std::vector<NodeId> nodes;

  std::uint32_t rank() const { return static_cast<std::uint32_t>(nodes.size()); }
  bool touches(NodeId v) const;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Hypergraph {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
};

/// A rule A -> G_A. All rule nodes are external: rhs.node_count equals the
/// rank of the head and node i is the i-th attachment node.
struct Rule {
  LabelId head = 0;
  Hypergraph rhs;
};

/// Straight-line hyperedge replacement grammar. Terminal labels come first,
/// nonterminals follow in creation order; rules[i] defines the i-th
/// nonterminal.
struct Grammar {
  std::vector<LabelInfo> labels;
  std::vector<Rule> rules;
  Hypergraph start;

  LabelId add_terminal(std::uint32_t rank);
  LabelId add_nonterminal(std::uint32_t rank);

  std::size_t terminal_count() const;
  bool is_terminal(LabelId id) const {
    return id < labels.size() && labels[id].kind == LabelKind::terminal;
  }
  std::uint32_t rank(LabelId id) const { return labels.at(id).rank; }

  /// Rule index per label (-1 for terminals and undefined nonterminals).
  std::vector<std::ptrdiff_t> rule_index() const;
};

/// Cost model used throughout: every edge costs 1 + rank.
std::uint64_t edge_cost(const Edge& e);
std::uint64_t graph_cost(const Hypergraph& g);
std::uint64_t grammar_cost(const Grammar& g);

/// Applies the rule of `e`'s label once, substituting formal node i by
/// e.nodes[i]. The result may contain nonterminal edges.
std::vector<Edge> expand_edge(const Grammar& grammar, const Edge& e);

/// Fully expands the start graph. Output order is depth-first in start-graph
/// order.
Hypergraph decompress(const Grammar& grammar);

struct Violation {
  enum class Kind {
    duplicate_rule,
    missing_rule,
    recursion,
    not_all_external,
    rank_mismatch,
    bad_node,
  };
  Kind kind;
  LabelId label;
  std::string message;
};

std::optional<Violation> validate_straight_line(const Grammar& grammar);

/// Labeled edge multiset equality plus equal node counts.
bool graphs_equal(const Hypergraph& a, const Hypergraph& b);

}  // namespace itr
