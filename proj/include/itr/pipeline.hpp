#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itr/codec.hpp"
#include "itr/ingest.hpp"
#include "itr/query.hpp"
#include "itr/repair.hpp"

namespace itr {

struct CompressOptions {
  bool itr_plus = false;
  bool prune = true;
  unsigned k = 2;
  RePairOptions repair;
};

struct CompressReport {
  std::vector<std::uint8_t> bytes;
  std::size_t input_edges = 0;
  std::size_t start_edges = 0;
  std::size_t rules = 0;
  RePairStats repair;
  PruneStats prune;
};

/// Full pipeline: optional node-label edges, RePair, prune, container bytes.
CompressReport compress(ParsedGraph input, const CompressOptions& options = {});

struct Decompressed {
  Hypergraph graph;  // rank-2 edges only
  Dictionary dict;
  NodeLabels labels;
};

Decompressed decompress_container(std::span<const std::uint8_t> bytes);

/// Parses "S P O". `?` is unbound, `#<digits>` is an internal ID, anything
/// else is looked up in the dictionary (numeric node IDs for edge lists).
/// Returns nullopt when a term is not in the dictionary; throws a usage
/// error for malformed text.
std::optional<TriplePattern> parse_pattern(const CompressedGraph& graph, std::string_view text);

/// "S P O", "S ? ?", ... describing which positions are bound.
std::string pattern_shape(const TriplePattern& pattern);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace itr
