#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "itr/digram.hpp"
#include "itr/graph.hpp"

namespace itr {

struct RePairOptions {
  /// Digrams whose nonterminal would exceed this rank are never selected.
  std::uint32_t max_rank = 8;
  /// Stop after this many rules (used to force short runs in tests).
  std::optional<std::size_t> max_iterations;
  bool parallel_count = true;
};

struct RePairStats {
  std::size_t iterations = 0;
  std::size_t skipped = 0;
  std::size_t occurrences = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::uint64_t cost_before = 0;
  std::uint64_t cost_after = 0;
  /// Grammar cost after every iteration.
  std::vector<std::uint64_t> cost_trace;
};

/// An occurrence as (edge in the first role, edge in the second role).
using Occurrence = std::pair<std::size_t, std::size_t>;

/// Rule for a digram: the shared node is formal node 0, then the remaining
/// nodes of the first edge in position order, then those of the second.
Rule make_digram_rule(const Digram& d, std::uint32_t rank1, std::uint32_t rank2, LabelId head);

/// Replacement edge head(v, rest(e1), rest(e2)) for one occurrence.
Edge make_digram_edge(const Digram& d, const Edge& first, const Edge& second, LabelId head);

/// Left-to-right occurrence scan over `candidates` (ascending indices into
/// `edges`). Each edge takes part in at most one occurrence; an edge never
/// pairs with itself.
std::vector<Occurrence> scan_occurrences(std::span<const Edge> edges, std::span<const std::size_t> candidates,
                                         const Digram& d);

/// Replaces all occurrences found by the scan in place. The new edge takes
/// the position of the earlier edge of each pair. Returns the number of
/// replaced occurrences.
std::size_t replace_occurrences(Hypergraph& graph, const Digram& d, LabelId new_label,
                                std::span<const LabelInfo> labels);

/// Stateful RePair loop over a grammar's start graph with incrementally
/// maintained counts. replace_digrams drives it; tests can force steps.
class DigramReplacer {
 public:
  DigramReplacer(Grammar& grammar, RePairOptions options = {});
  DigramReplacer(const DigramReplacer&) = delete;
  DigramReplacer& operator=(const DigramReplacer&) = delete;

  std::optional<std::pair<Digram, std::uint64_t>> most_frequent() const { return counts_.top(); }
  std::vector<Occurrence> find_occurrences(const Digram& d);

  /// Adds the rule, rewrites the occurrences and updates counts. The digram
  /// is marked processed. Returns the new nonterminal.
  LabelId replace(const Digram& d, const std::vector<Occurrence>& occurrences);
  void skip(const Digram& d) { counts_.mark_processed(d); }

  const CountTable& incidence() const { return table_; }
  const DigramCounts& counts() const { return counts_; }
  Hypergraph current_graph() const;
  std::uint64_t current_cost() const;

  /// Writes the live edges back as the grammar's start graph.
  void finish();

 private:
  Grammar& grammar_;
  RePairOptions options_;
  std::vector<Edge> slots_;
  std::vector<bool> live_;
  std::vector<std::vector<std::size_t>> by_label_;
  CountTable table_;
  DigramCounts counts_;
  std::uint64_t cost_ = 0;
};

Grammar replace_digrams(Grammar grammar, const RePairOptions& options = {}, RePairStats* stats = nullptr);

struct PruneStats {
  std::size_t inlined = 0;
  std::size_t kept = 0;
};

/// Inlines rules used once, or whose removal lowers the grammar cost, then
/// renumbers the remaining nonterminals in creation order. Rules must be in
/// creation order (rules[i] defines terminal_count() + i).
Grammar prune(const Grammar& grammar, PruneStats* stats = nullptr);

}  // namespace itr
