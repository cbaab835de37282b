#include "itr/graph.hpp"

#include <algorithm>

#include "itr/error.hpp"

namespace itr {

bool Edge::touches(NodeId v) const {
  return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
}

LabelId Grammar::add_terminal(std::uint32_t rank) {
  if (rank == 0) throw Error(ErrorCode::rank_mismatch, "terminal rank must be >= 1");
  if (!rules.empty() || labels.size() != terminal_count()) {
    throw Error(ErrorCode::format, "terminals must be declared before nonterminals");
  }
  const auto id = static_cast<LabelId>(labels.size());
  labels.push_back({id, rank, LabelKind::terminal});
  return id;
}

LabelId Grammar::add_nonterminal(std::uint32_t rank) {
  if (rank == 0) throw Error(ErrorCode::rank_mismatch, "nonterminal rank must be >= 1");
  const auto id = static_cast<LabelId>(labels.size());
  labels.push_back({id, rank, LabelKind::nonterminal});
  return id;
}

std::size_t Grammar::terminal_count() const {
  std::size_t n = 0;
  while (n < labels.size() && labels[n].kind == LabelKind::terminal) ++n;
  return n;
}

std::vector<std::ptrdiff_t> Grammar::rule_index() const {
  std::vector<std::ptrdiff_t> index(labels.size(), -1);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto head = rules[i].head;
    if (head < index.size() && index[head] < 0) index[head] = static_cast<std::ptrdiff_t>(i);
  }
  return index;
}

std::uint64_t edge_cost(const Edge& e) { return 1 + e.nodes.size(); }

std::uint64_t graph_cost(const Hypergraph& g) {
  std::uint64_t total = 0;
  for (const auto& e : g.edges) total += edge_cost(e);
  return total;
}

std::uint64_t grammar_cost(const Grammar& g) {
  std::uint64_t total = graph_cost(g.start);
  for (const auto& r : g.rules) total += graph_cost(r.rhs);
  return total;
}

namespace {

const Rule& rule_for(const Grammar& grammar, const std::vector<std::ptrdiff_t>& index,
                     const Edge& e) {
  if (e.label >= index.size() || index[e.label] < 0) {
    throw Error(ErrorCode::unknown_nonterminal,
                "no rule for label " + std::to_string(e.label));
  }
  const Rule& rule = grammar.rules[static_cast<std::size_t>(index[e.label])];
  if (rule.rhs.node_count != e.nodes.size()) {
    throw Error(ErrorCode::rank_mismatch,
                "edge rank " + std::to_string(e.nodes.size()) + " does not match rule for label " +
                    std::to_string(e.label));
  }
  return rule;
}

void substitute(const Rule& rule, const Edge& e, std::vector<Edge>& out) {
  for (const auto& child : rule.rhs.edges) {
    Edge generated{child.label, {}};
    generated.nodes.reserve(child.nodes.size());
    for (const auto formal : child.nodes) generated.nodes.push_back(e.nodes[formal]);
    out.push_back(std::move(generated));
  }
}

}  // namespace

std::vector<Edge> expand_edge(const Grammar& grammar, const Edge& e) {
  std::vector<Edge> out;
  substitute(rule_for(grammar, grammar.rule_index(), e), e, out);
  return out;
}

Hypergraph decompress(const Grammar& grammar) {
  const auto index = grammar.rule_index();
  Hypergraph out;
  out.node_count = grammar.start.node_count;
  out.edges.reserve(grammar.start.edges.size());

  std::vector<Edge> stack;
  std::vector<Edge> generated;
  for (const auto& top : grammar.start.edges) {
    if (grammar.is_terminal(top.label)) {
      out.edges.push_back(top);
      continue;
    }
    stack.push_back(top);
    while (!stack.empty()) {
      Edge e = std::move(stack.back());
      stack.pop_back();
      if (grammar.is_terminal(e.label)) {
        out.edges.push_back(std::move(e));
        continue;
      }
      generated.clear();
      substitute(rule_for(grammar, index, e), e, generated);
      for (auto it = generated.rbegin(); it != generated.rend(); ++it) stack.push_back(std::move(*it));
    }
  }
  return out;
}

namespace {

std::optional<Violation> check_edges(const Grammar& grammar, const Hypergraph& g, LabelId owner) {
  for (const auto& e : g.edges) {
    if (e.label >= grammar.labels.size()) {
      return Violation{Violation::Kind::missing_rule, e.label,
                       "edge uses undeclared label " + std::to_string(e.label)};
    }
    if (grammar.labels[e.label].rank != e.nodes.size()) {
      return Violation{Violation::Kind::rank_mismatch, e.label,
                       "edge of label " + std::to_string(e.label) + " has wrong rank"};
    }
    for (const auto v : e.nodes) {
      if (v >= g.node_count) {
        return Violation{Violation::Kind::bad_node, owner,
                         "node " + std::to_string(v) + " out of range"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate_straight_line(const Grammar& grammar) {
  const std::size_t n = grammar.labels.size();
  std::vector<std::ptrdiff_t> index(n, -1);
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    const auto head = grammar.rules[i].head;
    if (head >= n || grammar.labels[head].kind != LabelKind::nonterminal) {
      return Violation{Violation::Kind::missing_rule, head,
                       "rule head " + std::to_string(head) + " is not a nonterminal"};
    }
    if (index[head] >= 0) {
      return Violation{Violation::Kind::duplicate_rule, head,
                       "two rules for nonterminal " + std::to_string(head)};
    }
    index[head] = static_cast<std::ptrdiff_t>(i);
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (grammar.labels[id].kind == LabelKind::nonterminal && index[id] < 0) {
      return Violation{Violation::Kind::missing_rule, static_cast<LabelId>(id),
                       "no rule for nonterminal " + std::to_string(id)};
    }
  }
  for (const auto& rule : grammar.rules) {
    const auto rank = grammar.labels[rule.head].rank;
    if (rule.rhs.node_count != rank) {
      return Violation{Violation::Kind::not_all_external, rule.head,
                       "rule node count differs from rank of its head"};
    }
    if (auto v = check_edges(grammar, rule.rhs, rule.head)) return v;
    std::vector<bool> seen(rank, false);
    for (const auto& e : rule.rhs.edges) {
      for (const auto v : e.nodes) seen[v] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      return Violation{Violation::Kind::not_all_external, rule.head,
                       "rule has a node that is not attached"};
    }
  }
  if (auto v = check_edges(grammar, grammar.start, 0)) return v;

  // Acyclicity of the nonterminal reference graph (iterative DFS, 0/1/2 colors).
  std::vector<std::uint8_t> color(n, 0);
  std::vector<std::pair<LabelId, std::size_t>> stack;
  for (const auto& root : grammar.rules) {
    if (color[root.head] != 0) continue;
    stack.push_back({root.head, 0});
    color[root.head] = 1;
    while (!stack.empty()) {
      auto& [label, next] = stack.back();
      const auto& edges = grammar.rules[static_cast<std::size_t>(index[label])].rhs.edges;
      if (next == edges.size()) {
        color[label] = 2;
        stack.pop_back();
        continue;
      }
      const LabelId child = edges[next++].label;
      if (grammar.labels[child].kind != LabelKind::nonterminal) continue;
      if (color[child] == 1) {
        return Violation{Violation::Kind::recursion, child,
                         "nonterminal " + std::to_string(child) + " is recursive"};
      }
      if (color[child] == 0) {
        color[child] = 1;
        stack.push_back({child, 0});
      }
    }
  }
  return std::nullopt;
}

bool graphs_equal(const Hypergraph& a, const Hypergraph& b) {
  if (a.node_count != b.node_count || a.edges.size() != b.edges.size()) return false;
  std::vector<Edge> x = a.edges;
  std::vector<Edge> y = b.edges;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace itr
