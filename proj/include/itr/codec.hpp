#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itr/bits.hpp"
#include "itr/dictionary.hpp"
#include "itr/elias_fano.hpp"
#include "itr/graph.hpp"
#include "itr/k2tree.hpp"

namespace itr {

/// pi(m) = index of e[m] in the sorted, duplicate-free node list of e.
struct IndexFunction {
  std::vector<std::uint32_t> positions;

  std::size_t rank() const { return positions.size(); }
  friend auto operator<=>(const IndexFunction&, const IndexFunction&) = default;
  friend bool operator==(const IndexFunction&, const IndexFunction&) = default;
};

struct EdgeSpread {
  std::vector<NodeId> nodes;  // sorted, distinct
  IndexFunction function;
};

EdgeSpread compute_index_function(const Edge& e);

/// delta(rank - 1) followed by delta(pi(m)) for every position (+1 shift).
void write_index_function(BitWriter& out, const IndexFunction& pi);
IndexFunction read_index_function(BitReader& in);
BitVector encode_index_function(const IndexFunction& pi);

/// Start graph as label sequence (Elias-Fano over label-sorted edges),
/// node x edge incidence k^2-tree, deduplicated index functions and one
/// function id per edge.
class CompressedStartGraph {
 public:
  CompressedStartGraph() = default;
  static CompressedStartGraph encode(const Hypergraph& graph, std::uint64_t label_universe, unsigned k = 2);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return labels_.size(); }

  LabelId label(std::size_t column) const { return static_cast<LabelId>(labels_.access(column)); }
  Edge decode_edge(std::size_t column) const;
  std::vector<std::uint64_t> columns_of_node(NodeId v) const;
  std::pair<std::size_t, std::size_t> columns_with_label(LabelId label) const {
    return labels_.range_of_value(label);
  }
  std::size_t first_column_from(LabelId label) const { return labels_.lower_bound(label); }

  const EliasFano& labels() const { return labels_; }
  const K2Tree& incidence() const { return incidence_; }
  const std::vector<IndexFunction>& function_table() const { return functions_; }
  const std::vector<std::uint32_t>& function_ids() const { return function_ids_; }

  void write(BitWriter& out) const;
  static CompressedStartGraph read(BitReader& in);

 private:
  std::size_t node_count_ = 0;
  EliasFano labels_;
  K2Tree incidence_;
  std::vector<IndexFunction> functions_;
  std::vector<std::uint32_t> function_ids_;
};

/// Per rule: delta(edge count), then delta(label) and delta(node) for every
/// position of every edge. The nonterminal is implied by the rule position.
DeltaStream encode_rules(std::span<const Rule> rules);
void write_rules(BitWriter& out, std::span<const Rule> rules);

/// Decodes `count` rules. `labels` holds the terminal labels on entry; the
/// nonterminal labels are appended as their ranks become known.
std::vector<Rule> read_rules(BitReader& in, std::size_t count, std::vector<LabelInfo>& labels);

/// Nonterminal x terminal reachability: bit (A, a) is set iff expanding A
/// eventually yields an a-labeled edge.
class NTMatrix {
 public:
  NTMatrix() = default;
  static NTMatrix build(const Grammar& grammar, unsigned k = 2);

  bool generates(LabelId nonterminal, LabelId terminal) const;
  std::size_t first_nonterminal() const { return first_nonterminal_; }
  const K2Tree& tree() const { return tree_; }

  void write(BitWriter& out) const;
  static NTMatrix read(BitReader& in, std::size_t terminals);

 private:
  std::size_t first_nonterminal_ = 0;
  K2Tree tree_;
};

struct ContainerFlags {
  bool itr_plus = false;
  unsigned k = 2;
};

/// Loaded container: the start graph stays in succinct form; rules are
/// decoded since expansion needs them.
struct CompressedGraph {
  Dictionary dict;
  bool itr_plus = false;
  std::vector<LabelInfo> labels;
  std::vector<Rule> rules;
  CompressedStartGraph start;
  NTMatrix nt;

  std::size_t terminal_count() const { return nt.first_nonterminal(); }
  bool is_terminal(LabelId id) const { return id < terminal_count(); }
  const Rule& rule_of(LabelId nonterminal) const { return rules.at(nonterminal - terminal_count()); }
  Grammar to_grammar() const;
};

inline constexpr std::array<char, 4> kMagic{'I', 'T', 'R', '1'};
inline constexpr std::size_t kSectionCount = 5;
inline constexpr std::size_t kHeaderSize = 4 + 1 + 8 * kSectionCount;

struct SectionSizes {
  std::array<std::uint64_t, kSectionCount> bytes{};  // dictionary, labels, rules, start graph, NT
  static constexpr std::array<const char*, kSectionCount> names{"dictionary", "label table", "rules",
                                                                  "start graph", "nt matrix"};
};

std::vector<std::uint8_t> serialize(const Grammar& grammar, const Dictionary& dict, ContainerFlags flags = {});
std::vector<std::uint8_t> serialize(const CompressedGraph& graph);
CompressedGraph deserialize(std::span<const std::uint8_t> bytes);
SectionSizes read_section_sizes(std::span<const std::uint8_t> bytes);

}  // namespace itr
