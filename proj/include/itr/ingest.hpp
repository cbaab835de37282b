#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "itr/dictionary.hpp"
#include "itr/graph.hpp"

namespace itr {

enum class Format { ntriples, edgelist };

Format parse_format(std::string_view name);

struct ParsedGraph {
  Hypergraph graph;
  Dictionary dict;
  NodeLabels labels;
};

/// N-Triples subset: `<iri>`, `_:blank` and `"literal"` (with any `@lang` or
/// `^^<type>` suffix) intern by surface syntax. Edge lists are
/// `src<TAB>label<TAB>dst` with numeric node IDs used as-is. The optional
/// node-label text has lines `node<TAB>label`.
ParsedGraph parse(std::string_view text, Format format,
                  std::optional<std::string_view> node_label_text = std::nullopt);

/// Writes rank-2 edges back in the given format, one per line.
std::string emit(const Hypergraph& graph, const Dictionary& dict, Format format);

std::string emit_node_labels(const NodeLabels& labels, const Dictionary& dict, Format format);

}  // namespace itr
