#include "itr/query.hpp"

#include <algorithm>
#include <exception>

#include "itr/error.hpp"

namespace itr {

namespace {

/// Worklist Z, processed as a stack so each seed is drained depth-first.
class Worklist {
 public:
  Worklist(const CompressedGraph& graph, const QueryHooks& hooks) : graph_(graph), hooks_(hooks) {}

  template <typename Expand, typename Emit>
  void drain(Edge seed, Expand&& should_expand, Emit&& emit) {
    if (hooks_.stats != nullptr) ++hooks_.stats->seeded;
    stack_.push_back(std::move(seed));
    while (!stack_.empty()) {
      Edge e = std::move(stack_.back());
      stack_.pop_back();
      if (graph_.is_terminal(e.label)) {
        emit(e);
        continue;
      }
      if (!should_expand(e)) {
        if (hooks_.stats != nullptr) ++hooks_.stats->pruned;
        continue;
      }
      if (hooks_.stats != nullptr) ++hooks_.stats->expanded;
      if (hooks_.on_expand) hooks_.on_expand(e);
      const Rule& rule = graph_.rule_of(e.label);
      for (auto it = rule.rhs.edges.rbegin(); it != rule.rhs.edges.rend(); ++it) {
        Edge child{it->label, std::vector<NodeId>(it->nodes.size())};
        for (std::size_t m = 0; m < it->nodes.size(); ++m) child.nodes[m] = e.nodes[it->nodes[m]];
        stack_.push_back(std::move(child));
      }
    }
  }

 private:
  const CompressedGraph& graph_;
  const QueryHooks& hooks_;
  std::vector<Edge> stack_;
};

std::vector<std::size_t> seed_columns(const CompressedGraph& graph, const TriplePattern& q) {
  const auto& start = graph.start;
  std::vector<std::size_t> columns;
  if (q.s || q.o) {
    for (const auto c : start.columns_of_node(q.s ? *q.s : *q.o)) columns.push_back(static_cast<std::size_t>(c));
  } else if (q.p) {
    const auto [begin, end] = start.columns_with_label(*q.p);
    for (std::size_t c = begin; c < end; ++c) columns.push_back(c);
    for (std::size_t c = start.first_column_from(static_cast<LabelId>(graph.terminal_count()));
         c < start.edge_count(); ++c) {
      if (graph.nt.generates(start.label(c), *q.p)) columns.push_back(c);
    }
  } else {
    columns.resize(start.edge_count());
    for (std::size_t c = 0; c < columns.size(); ++c) columns[c] = c;
  }
  return columns;
}

bool in_range(const CompressedGraph& graph, const TriplePattern& q) {
  const auto nodes = graph.start.node_count();
  if ((q.s && *q.s >= nodes) || (q.o && *q.o >= nodes)) return false;
  if (q.p && (!graph.is_terminal(*q.p) || graph.labels[*q.p].rank != 2)) return false;
  return true;
}

}  // namespace

void answer(const CompressedGraph& graph, const TriplePattern& q, const EdgeSink& sink, const QueryHooks& hooks) {
  if (!in_range(graph, q)) return;
  auto should_expand = [&](const Edge& e) {
    return (!q.s || e.touches(*q.s)) && (!q.o || e.touches(*q.o)) && (!q.p || graph.nt.generates(e.label, *q.p));
  };
  auto emit = [&](const Edge& e) {
    if (e.nodes.size() != 2) return;
    if ((q.s && e.nodes[0] != *q.s) || (q.p && e.label != *q.p) || (q.o && e.nodes[1] != *q.o)) return;
    if (hooks.stats != nullptr) ++hooks.stats->emitted;
    sink(e);
  };
  Worklist z(graph, hooks);
  for (const auto column : seed_columns(graph, q)) z.drain(graph.start.decode_edge(column), should_expand, emit);
}

std::vector<Edge> answer(const CompressedGraph& graph, const TriplePattern& pattern) {
  std::vector<Edge> out;
  answer(graph, pattern, [&](const Edge& e) { out.push_back(e); });
  return out;
}

std::vector<Edge> neighborhood(const CompressedGraph& graph, NodeId v, Direction direction) {
  std::vector<Edge> out;
  auto sink = [&](const Edge& e) { out.push_back(e); };
  if (direction != Direction::in) answer(graph, TriplePattern{v, std::nullopt, std::nullopt}, sink);
  if (direction != Direction::out) answer(graph, TriplePattern{std::nullopt, std::nullopt, v}, sink);
  return out;
}

std::optional<std::string> node_label(const CompressedGraph& graph, NodeId v) {
  if (!graph.itr_plus) throw Error(ErrorCode::not_itr_plus, "container was not compressed with node-label edges");
  if (v >= graph.start.node_count()) return std::nullopt;
  std::optional<LabelId> found;
  QueryHooks hooks;
  Worklist z(graph, hooks);
  auto should_expand = [&](const Edge& e) { return e.touches(v); };
  auto emit = [&](const Edge& e) {
    if (e.nodes.size() != 1 || e.nodes[0] != v) return;
    if (found && *found != e.label) {
      throw Error(ErrorCode::conflicting_labels, "node " + std::to_string(v) + " has more than one label");
    }
    found = e.label;
  };
  for (const auto c : graph.start.columns_of_node(v)) z.drain(graph.start.decode_edge(static_cast<std::size_t>(c)), should_expand, emit);
  if (!found) return std::nullopt;
  return graph.dict.lookup(*found, TermKind::node_label);
}

std::vector<std::vector<Edge>> answer_batch(const CompressedGraph& graph, std::span<const TriplePattern> patterns) {
  std::vector<std::vector<Edge>> out(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) out[i] = answer(graph, patterns[i]);
  return out;
}

std::vector<std::vector<Edge>> answer_batch_parallel(const CompressedGraph& graph,
                                                     std::span<const TriplePattern> patterns) {
  std::vector<std::vector<Edge>> out(patterns.size());
  const auto n = static_cast<std::int64_t>(patterns.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = answer(graph, patterns[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(itr_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace itr
