#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itr/codec.hpp"
#include "itr/graph.hpp"

namespace itr {

struct TriplePattern {
  std::optional<NodeId> s;
  std::optional<LabelId> p;
  std::optional<NodeId> o;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct QueryStats {
  std::size_t seeded = 0;
  std::size_t expanded = 0;
  std::size_t pruned = 0;  // nonterminal edges dropped without expansion
  std::size_t emitted = 0;
};

using EdgeSink = std::function<void(const Edge&)>;

struct QueryHooks {
  QueryStats* stats = nullptr;
  /// Called for every nonterminal edge just before it is expanded.
  EdgeSink on_expand;
};

/// Streams every terminal rank-2 edge of the uncompressed graph that matches
/// the pattern, in start-graph column order and depth-first through
/// expansions. Bound IDs outside the graph give an empty result.
void answer(const CompressedGraph& graph, const TriplePattern& pattern, const EdgeSink& sink,
            const QueryHooks& hooks = {});
std::vector<Edge> answer(const CompressedGraph& graph, const TriplePattern& pattern);

enum class Direction { out, in, both };

/// out = (v ? ?), in = (? ? v), both = out followed by in.
std::vector<Edge> neighborhood(const CompressedGraph& graph, NodeId v, Direction direction);

/// Label of v under ITR+ (its rank-1 label edge), if any.
std::optional<std::string> node_label(const CompressedGraph& graph, NodeId v);

/// Runs independent patterns; the parallel variant spreads them over OpenMP
/// threads and returns the same results.
std::vector<std::vector<Edge>> answer_batch(const CompressedGraph& graph, std::span<const TriplePattern> patterns);
std::vector<std::vector<Edge>> answer_batch_parallel(const CompressedGraph& graph,
                                                     std::span<const TriplePattern> patterns);

}  // namespace itr
