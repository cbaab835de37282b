#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "itr/error.hpp"
#include "itr/log.hpp"
#include "itr/repair.hpp"

namespace itr {

namespace {

// Usage bookkeeping without materializing any graph. Owner index R stands for
// the start graph.
struct UsageModel {
  std::vector<std::unordered_map<std::size_t, std::uint64_t>> contents;  // owner -> rule -> multiplicity
  std::vector<std::unordered_set<std::size_t>> parents;                  // rule -> owners using it
  std::vector<std::uint64_t> usage;
  std::vector<std::uint64_t> cost;  // rhs cost per rule
};

}  // namespace

Grammar prune(const Grammar& grammar, PruneStats* stats) {
  const std::size_t terminals = grammar.terminal_count();
  const std::size_t rules = grammar.rules.size();
  for (std::size_t i = 0; i < rules; ++i) {
    if (grammar.rules[i].head != terminals + i) {
      throw Error(ErrorCode::format, "prune expects rules in creation order");
    }
  }

  UsageModel model;
  model.contents.resize(rules + 1);
  model.parents.resize(rules);
  model.usage.assign(rules, 0);
  model.cost.assign(rules, 0);
  auto record = [&](std::size_t owner, const Hypergraph& g) {
    for (const auto& e : g.edges) {
      if (e.label < terminals) continue;
      const std::size_t r = e.label - terminals;
      if (r >= rules) throw Error(ErrorCode::unknown_nonterminal, "edge references undefined rule");
      ++model.contents[owner][r];
      ++model.usage[r];
      model.parents[r].insert(owner);
    }
  };
  for (std::size_t i = 0; i < rules; ++i) {
    record(i, grammar.rules[i].rhs);
    model.cost[i] = graph_cost(grammar.rules[i].rhs);
  }
  record(rules, grammar.start);

  std::vector<bool> inlined(rules, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = rules; a-- > 0;) {
      if (inlined[a]) continue;
      const std::uint64_t uses = model.usage[a];
      const std::uint64_t use_cost = 1 + grammar.rank(grammar.rules[a].head);
      // Keeping costs cost[a] + uses * use_cost; inlining costs uses * cost[a].
      const bool drop = uses <= 1 || (uses - 1) * model.cost[a] < uses * use_cost;
      if (!drop) continue;

      for (const std::size_t owner : model.parents[a]) {
        const std::uint64_t k = model.contents[owner][a];
        model.contents[owner].erase(a);
        if (owner < rules) model.cost[owner] += k * model.cost[a] - k * use_cost;
        for (const auto& [child, m] : model.contents[a]) {
          model.contents[owner][child] += k * m;
          model.usage[child] += k * m;
          model.parents[child].insert(owner);
        }
      }
      for (const auto& [child, m] : model.contents[a]) {
        model.usage[child] -= m;
        model.parents[child].erase(a);
      }
      model.contents[a].clear();
      model.parents[a].clear();
      model.usage[a] = 0;
      inlined[a] = true;
      changed = true;
    }
  }

  // Materialize: every rhs is rewritten in creation order, so the expansion of
  // an inlined rule only references kept rules.
  std::vector<LabelId> renumber(grammar.labels.size());
  for (std::size_t t = 0; t < terminals; ++t) renumber[t] = static_cast<LabelId>(t);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < rules; ++i) {
    if (!inlined[i]) renumber[terminals + i] = static_cast<LabelId>(terminals + kept++);
  }

  std::vector<std::vector<Edge>> resolved(rules);
  auto rewrite = [&](const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.label < terminals || !inlined[e.label - terminals]) {
        out.push_back(Edge{renumber[e.label], e.nodes});
        continue;
      }
      for (const auto& child : resolved[e.label - terminals]) {
        Edge g{child.label, {}};
        g.nodes.reserve(child.nodes.size());
        for (const auto formal : child.nodes) g.nodes.push_back(e.nodes[formal]);
        out.push_back(std::move(g));
      }
    }
    return out;
  };

  Grammar out;
  out.labels.assign(grammar.labels.begin(), grammar.labels.begin() + static_cast<std::ptrdiff_t>(terminals));
  for (std::size_t i = 0; i < rules; ++i) {
    resolved[i] = rewrite(grammar.rules[i].rhs.edges);
    if (inlined[i]) continue;
    const LabelId head = out.add_nonterminal(grammar.rank(grammar.rules[i].head));
    Rule rule{head, {grammar.rules[i].rhs.node_count, resolved[i]}};
    out.rules.push_back(std::move(rule));
  }
  out.start.node_count = grammar.start.node_count;
  out.start.edges = rewrite(grammar.start.edges);

  const std::size_t dropped = rules - kept;
  log::info("prune: inlined ", dropped, " of ", rules, " rules");
  if (stats != nullptr) *stats = PruneStats{dropped, kept};
  return out;
}

}  // namespace itr
