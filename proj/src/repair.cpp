#include "itr/repair.hpp"

#include <algorithm>
#include <unordered_map>

#include "itr/error.hpp"
#include "itr/log.hpp"

namespace itr {

Rule make_digram_rule(const Digram& d, std::uint32_t rank1, std::uint32_t rank2, LabelId head) {
  Rule rule;
  rule.head = head;
  rule.rhs.node_count = rank1 + rank2 - 1;
  NodeId next = 1;
  auto formal_edge = [&](const IncidenceType& type, std::uint32_t rank) {
    Edge e{type.label, std::vector<NodeId>(rank)};
    for (std::uint32_t m = 0; m < rank; ++m) e.nodes[m] = m == type.conn ? 0 : next++;
    rule.rhs.edges.push_back(std::move(e));
  };
  formal_edge(d.first, rank1);
  formal_edge(d.second, rank2);
  return rule;
}

Edge make_digram_edge(const Digram& d, const Edge& first, const Edge& second, LabelId head) {
  if (first.nodes.at(d.first.conn) != second.nodes.at(d.second.conn)) {
    throw Error(ErrorCode::corrupt, "occurrence edges do not share the digram node");
  }
  Edge out{head, {}};
  out.nodes.reserve(first.nodes.size() + second.nodes.size() - 1);
  out.nodes.push_back(first.nodes[d.first.conn]);
  for (std::uint32_t m = 0; m < first.nodes.size(); ++m) {
    if (m != d.first.conn) out.nodes.push_back(first.nodes[m]);
  }
  for (std::uint32_t m = 0; m < second.nodes.size(); ++m) {
    if (m != d.second.conn) out.nodes.push_back(second.nodes[m]);
  }
  return out;
}

std::vector<Occurrence> scan_occurrences(std::span<const Edge> edges, std::span<const std::size_t> candidates,
                                         const Digram& d) {
  // Pending handles are per-node stacks threaded through `next`, holding
  // positions into `candidates`; consumed ones are skipped lazily.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  using Heads = std::unordered_map<NodeId, std::size_t>;
  Heads pending_first, pending_second;
  pending_first.reserve(candidates.size());
  if (!d.same_types()) pending_second.reserve(candidates.size());
  std::vector<std::size_t> next_first(candidates.size(), kNone), next_second(candidates.size(), kNone);
  std::vector<bool> used(candidates.size(), false);
  std::vector<Occurrence> out;

  auto take = [&](Heads& pending, std::vector<std::size_t>& next, NodeId v) -> std::optional<std::size_t> {
    auto it = pending.find(v);
    if (it == pending.end()) return std::nullopt;
    std::size_t p = it->second;
    while (p != kNone && used[p]) p = next[p];
    if (p == kNone) {
      pending.erase(it);
      return std::nullopt;
    }
    it->second = next[p];
    return p;
  };
  auto push = [&](Heads& pending, std::vector<std::size_t>& next, NodeId v, std::size_t pos) {
    auto [it, inserted] = pending.try_emplace(v, pos);
    if (!inserted) {
      next[pos] = it->second;
      it->second = pos;
    }
  };

  for (std::size_t pos = 0; pos < candidates.size(); ++pos) {
    const Edge& e = edges[candidates[pos]];
    const bool as_first = e.label == d.first.label && d.first.conn < e.nodes.size();
    const bool as_second = e.label == d.second.label && d.second.conn < e.nodes.size();
    if (!as_first && !as_second) continue;

    if (d.same_types()) {
      const NodeId v = e.nodes[d.first.conn];
      if (auto partner = take(pending_first, next_first, v)) {
        used[*partner] = used[pos] = true;
        out.emplace_back(candidates[*partner], candidates[pos]);
      } else {
        push(pending_first, next_first, v, pos);
      }
      continue;
    }
    if (as_first) {
      if (auto partner = take(pending_second, next_second, e.nodes[d.first.conn])) {
        used[*partner] = used[pos] = true;
        out.emplace_back(candidates[pos], candidates[*partner]);
        continue;
      }
    }
    if (as_second) {
      if (auto partner = take(pending_first, next_first, e.nodes[d.second.conn])) {
        used[*partner] = used[pos] = true;
        out.emplace_back(candidates[*partner], candidates[pos]);
        continue;
      }
    }
    if (as_first) push(pending_first, next_first, e.nodes[d.first.conn], pos);
    if (as_second) push(pending_second, next_second, e.nodes[d.second.conn], pos);
  }
  return out;
}

std::size_t replace_occurrences(Hypergraph& graph, const Digram& d, LabelId new_label,
                                std::span<const LabelInfo> labels) {
  const auto rank1 = labels[d.first.label].rank;
  const auto rank2 = labels[d.second.label].rank;
  if (new_label >= labels.size() || labels[new_label].rank != rank1 + rank2 - 1) {
    throw Error(ErrorCode::rank_mismatch, "new nonterminal must have rank " + std::to_string(rank1 + rank2 - 1));
  }
  std::vector<std::size_t> all(graph.edges.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto occurrences = scan_occurrences(graph.edges, all, d);

  std::vector<bool> removed(graph.edges.size(), false);
  std::vector<Edge> replacement(graph.edges.size());
  for (const auto& [f, s] : occurrences) {
    const auto anchor = std::min(f, s);
    replacement[anchor] = make_digram_edge(d, graph.edges[f], graph.edges[s], new_label);
    removed[std::max(f, s)] = true;
  }
  std::vector<bool> is_anchor(graph.edges.size(), false);
  for (const auto& [f, s] : occurrences) is_anchor[std::min(f, s)] = true;

  std::vector<Edge> out;
  out.reserve(graph.edges.size() - occurrences.size());
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (removed[i]) continue;
    out.push_back(is_anchor[i] ? std::move(replacement[i]) : std::move(graph.edges[i]));
  }
  graph.edges = std::move(out);
  return occurrences.size();
}

DigramReplacer::DigramReplacer(Grammar& grammar, RePairOptions options)
    : grammar_(grammar),
      options_(options),
      slots_(grammar.start.edges),
      live_(slots_.size(), true),
      by_label_(grammar.labels.size()) {
  for (std::size_t i = 0; i < slots_.size(); ++i) by_label_.at(slots_[i].label).push_back(i);
  table_ = count_incidence(grammar.start);
  auto eligible = [this](const Digram& d) {
    return grammar_.rank(d.first.label) + grammar_.rank(d.second.label) - 1 <= options_.max_rank;
  };
  counts_ = options_.parallel_count ? count_digrams_parallel(table_, eligible) : count_digrams(table_, eligible);
  cost_ = grammar_cost(grammar_);
}

std::vector<Occurrence> DigramReplacer::find_occurrences(const Digram& d) {
  auto refresh = [&](LabelId label) -> const std::vector<std::size_t>& {
    auto& list = by_label_[label];
    std::erase_if(list, [&](std::size_t s) { return !live_[s] || slots_[s].label != label; });
    return list;
  };
  std::vector<std::size_t> candidates;
  const auto& a = refresh(d.first.label);
  if (d.first.label == d.second.label) {
    candidates = a;
  } else {
    const auto& b = refresh(d.second.label);
    candidates.resize(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), candidates.begin());
  }
  return scan_occurrences(slots_, candidates, d);
}

LabelId DigramReplacer::replace(const Digram& d, const std::vector<Occurrence>& occurrences) {
  const auto rank1 = grammar_.rank(d.first.label);
  const auto rank2 = grammar_.rank(d.second.label);
  const LabelId head = grammar_.add_nonterminal(rank1 + rank2 - 1);
  grammar_.rules.push_back(make_digram_rule(d, rank1, rank2, head));
  by_label_.resize(grammar_.labels.size());
  counts_.mark_processed(d);

  auto& fresh = by_label_[head];
  for (const auto& [f, s] : occurrences) {
    Edge edge = make_digram_edge(d, slots_[f], slots_[s], head);
    remove_edge_counts(table_, counts_, slots_[f]);
    remove_edge_counts(table_, counts_, slots_[s]);
    add_edge_counts(table_, counts_, edge);
    const auto anchor = std::min(f, s);
    const auto other = std::max(f, s);
    slots_[anchor] = std::move(edge);
    live_[other] = false;
    slots_[other] = Edge{};
    fresh.push_back(anchor);
  }
  std::sort(fresh.begin(), fresh.end());
  cost_ = cost_ + graph_cost(grammar_.rules.back().rhs) - 2 * occurrences.size();
  return head;
}

Hypergraph DigramReplacer::current_graph() const {
  Hypergraph g;
  g.node_count = grammar_.start.node_count;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (live_[i]) g.edges.push_back(slots_[i]);
  }
  return g;
}

std::uint64_t DigramReplacer::current_cost() const { return cost_; }

void DigramReplacer::finish() {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (live_[i]) edges.push_back(std::move(slots_[i]));
  }
  grammar_.start.edges = std::move(edges);
  slots_.clear();
  live_.clear();
  by_label_.clear();
}

Grammar replace_digrams(Grammar grammar, const RePairOptions& options, RePairStats* stats) {
  RePairStats local;
  local.edges_before = grammar.start.edges.size();
  local.cost_before = grammar_cost(grammar);
  {
    DigramReplacer replacer(grammar, options);
    while (!options.max_iterations || local.iterations < *options.max_iterations) {
      const auto top = replacer.most_frequent();
      if (!top) break;
      const auto& [digram, estimate] = *top;
      if (size_gain(grammar, digram, estimate) <= 0) break;
      const auto occurrences = replacer.find_occurrences(digram);
      // The estimate is an upper bound; only the real count decides.
      if (size_gain(grammar, digram, occurrences.size()) <= 0) {
        replacer.skip(digram);
        ++local.skipped;
        continue;
      }
      replacer.replace(digram, occurrences);
      ++local.iterations;
      local.occurrences += occurrences.size();
      local.cost_trace.push_back(replacer.current_cost());
      log::debug("rule ", local.iterations, ": ", occurrences.size(), " occurrences (estimate ", estimate, ")");
    }
    replacer.finish();
  }
  local.edges_after = grammar.start.edges.size();
  local.cost_after = grammar_cost(grammar);
  log::info("replaced ", local.occurrences, " occurrences with ", local.iterations, " rules; edges ",
            local.edges_before, " -> ", local.edges_after);
  if (stats != nullptr) *stats = std::move(local);
  return grammar;
}

}  // namespace itr
