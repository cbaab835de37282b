#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "itr/graph.hpp"

namespace itr {

/// Terms in insertion order with an exact-string lookup index.
class TermTable {
 public:
  std::uint32_t intern(std::string_view term);
  std::optional<std::uint32_t> find(std::string_view term) const;
  const std::string& at(std::uint32_t id) const { return terms_.at(id); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

enum class TermKind { node, edge_label, node_label };

using NodeLabels = std::map<NodeId, std::string>;

/// Text side of a compressed graph. Nodes and terminal labels map to dense
/// IDs. Edge labels have rank 2; node labels (ITR+) live in the same label
/// table with rank 1 and their own lookup index. Without ITR+, node labels
/// are kept as one positional attribute per node.
class Dictionary {
 public:
  std::uint32_t intern(std::string_view term, TermKind kind);
  std::optional<std::uint32_t> find(std::string_view term, TermKind kind) const;
  const std::string& lookup(std::uint32_t id, TermKind kind) const;

  const TermTable& nodes() const { return nodes_; }
  std::size_t label_count() const { return labels_.size(); }
  const std::vector<std::string>& label_terms() const { return labels_; }
  std::uint32_t label_rank(LabelId id) const { return ranks_.at(id); }
  const std::vector<std::uint32_t>& label_ranks() const { return ranks_; }

  /// Edge-list inputs use numeric node IDs directly; the node table stays empty.
  bool numeric_nodes() const { return numeric_nodes_; }
  void set_numeric_nodes(bool numeric) { numeric_nodes_ = numeric; }

  /// Per-node label strings for non-ITR+ storage ("" = unlabeled).
  const std::vector<std::string>& node_attributes() const { return node_attributes_; }
  void set_node_attributes(const NodeLabels& labels, std::size_t node_count);
  NodeLabels node_attribute_labels() const;

  /// Number of stored strings that describe node labels, whichever way they
  /// are stored.
  std::size_t node_label_entry_count() const;

  /// Raw setters used by the container decoder.
  void add_label(std::string term, std::uint32_t rank);
  void add_node(std::string term);
  void add_node_attribute(std::string term) { node_attributes_.push_back(std::move(term)); }

  friend bool operator==(const Dictionary& a, const Dictionary& b) {
    return a.nodes_.terms() == b.nodes_.terms() && a.labels_ == b.labels_ && a.ranks_ == b.ranks_ &&
           a.numeric_nodes_ == b.numeric_nodes_ && a.node_attributes_ == b.node_attributes_;
  }

 private:
  TermTable nodes_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> ranks_;
  std::unordered_map<std::string, std::uint32_t> edge_label_index_;
  std::unordered_map<std::string, std::uint32_t> node_label_index_;
  std::vector<std::string> node_attributes_;
  bool numeric_nodes_ = false;
};

/// Appends a rank-1 edge label(v) for every labeled node v.
Hypergraph apply_itr_plus(const Hypergraph& graph, const NodeLabels& labels, Dictionary& dict);

struct StripResult {
  Hypergraph graph;
  NodeLabels labels;
  /// Nodes that carried the same label edge more than once.
  std::vector<NodeId> duplicates;
};

/// Removes rank-1 terminal edges and rebuilds the node-label map. Throws
/// conflicting_labels if a node carries two different label edges.
StripResult strip_itr_plus(const Hypergraph& graph, const Dictionary& dict);

/// Builds a grammar with no rules whose terminal labels mirror `dict`.
Grammar make_grammar(const Hypergraph& graph, const Dictionary& dict);

}  // namespace itr
