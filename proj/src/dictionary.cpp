#include "itr/dictionary.hpp"

#include "itr/error.hpp"
#include "itr/log.hpp"

namespace itr {

std::uint32_t TermTable::intern(std::string_view term) {
  std::string key(term);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<std::uint32_t> TermTable::find(std::string_view term) const {
  if (auto it = index_.find(std::string(term)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::uint32_t Dictionary::intern(std::string_view term, TermKind kind) {
  if (kind == TermKind::node) return nodes_.intern(term);
  auto& index = kind == TermKind::edge_label ? edge_label_index_ : node_label_index_;
  std::string key(term);
  if (auto it = index.find(key); it != index.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.push_back(key);
  ranks_.push_back(kind == TermKind::edge_label ? 2 : 1);
  index.emplace(std::move(key), id);
  return id;
}

std::optional<std::uint32_t> Dictionary::find(std::string_view term, TermKind kind) const {
  if (kind == TermKind::node) return nodes_.find(term);
  const auto& index = kind == TermKind::edge_label ? edge_label_index_ : node_label_index_;
  if (auto it = index.find(std::string(term)); it != index.end()) return it->second;
  return std::nullopt;
}

const std::string& Dictionary::lookup(std::uint32_t id, TermKind kind) const {
  if (kind == TermKind::node) {
    if (id >= nodes_.size()) throw Error(ErrorCode::dangling_id, "unknown node id " + std::to_string(id));
    return nodes_.at(id);
  }
  if (id >= labels_.size()) throw Error(ErrorCode::dangling_id, "unknown label id " + std::to_string(id));
  return labels_[id];
}

void Dictionary::set_node_attributes(const NodeLabels& labels, std::size_t node_count) {
  node_attributes_.assign(labels.empty() ? 0 : node_count, std::string());
  for (const auto& [v, text] : labels) {
    if (v >= node_attributes_.size()) node_attributes_.resize(v + 1);
    node_attributes_[v] = text;
  }
}

NodeLabels Dictionary::node_attribute_labels() const {
  NodeLabels out;
  for (std::size_t v = 0; v < node_attributes_.size(); ++v) {
    if (!node_attributes_[v].empty()) out.emplace(static_cast<NodeId>(v), node_attributes_[v]);
  }
  return out;
}

std::size_t Dictionary::node_label_entry_count() const {
  std::size_t rank_one = 0;
  for (const auto r : ranks_) rank_one += r == 1 ? 1 : 0;
  return rank_one + node_attributes_.size();
}

void Dictionary::add_label(std::string term, std::uint32_t rank) {
  auto& index = rank == 1 ? node_label_index_ : edge_label_index_;
  index.emplace(term, static_cast<std::uint32_t>(labels_.size()));
  labels_.push_back(std::move(term));
  ranks_.push_back(rank);
}

void Dictionary::add_node(std::string term) {
  const auto before = nodes_.size();
  if (nodes_.intern(term) != before) {
    throw Error(ErrorCode::corrupt, "duplicate node term in dictionary");
  }
}

Hypergraph apply_itr_plus(const Hypergraph& graph, const NodeLabels& labels, Dictionary& dict) {
  Hypergraph out = graph;
  out.edges.reserve(graph.edges.size() + labels.size());
  for (const auto& [v, text] : labels) {
    const auto label = dict.intern(text, TermKind::node_label);
    out.edges.push_back(Edge{label, {v}});
    if (v >= out.node_count) out.node_count = static_cast<std::size_t>(v) + 1;
  }
  return out;
}

StripResult strip_itr_plus(const Hypergraph& graph, const Dictionary& dict) {
  StripResult result;
  result.graph.node_count = graph.node_count;
  std::map<NodeId, LabelId> seen;
  for (const auto& e : graph.edges) {
    if (e.label >= dict.label_count() || dict.label_rank(e.label) != 1) {
      result.graph.edges.push_back(e);
      continue;
    }
    const NodeId v = e.nodes.at(0);
    auto [it, inserted] = seen.emplace(v, e.label);
    if (inserted) {
      result.labels.emplace(v, dict.lookup(e.label, TermKind::node_label));
    } else if (it->second == e.label) {
      result.duplicates.push_back(v);
    } else {
      throw Error(ErrorCode::conflicting_labels,
                  "node " + std::to_string(v) + " carries labels '" +
                      dict.lookup(it->second, TermKind::node_label) + "' and '" +
                      dict.lookup(e.label, TermKind::node_label) + "'");
    }
  }
  if (!result.duplicates.empty()) {
    log::info("collapsed ", result.duplicates.size(), " duplicate node-label edge(s)");
  }
  return result;
}

Grammar make_grammar(const Hypergraph& graph, const Dictionary& dict) {
  Grammar g;
  for (std::size_t i = 0; i < dict.label_count(); ++i) g.add_terminal(dict.label_rank(static_cast<LabelId>(i)));
  g.start = graph;
  return g;
}

}  // namespace itr
