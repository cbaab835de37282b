#include "itr/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "itr/error.hpp"
#include "itr/log.hpp"

namespace itr {

CompressReport compress(ParsedGraph input, const CompressOptions& options) {
  CompressReport report;
  report.input_edges = input.graph.edges.size();
  Hypergraph graph;
  if (options.itr_plus) {
    graph = apply_itr_plus(input.graph, input.labels, input.dict);
  } else {
    graph = std::move(input.graph);
    input.dict.set_node_attributes(input.labels, graph.node_count);
  }
  Grammar grammar = make_grammar(graph, input.dict);
  grammar = replace_digrams(std::move(grammar), options.repair, &report.repair);
  if (options.prune) grammar = prune(grammar, &report.prune);
  report.start_edges = grammar.start.edges.size();
  report.rules = grammar.rules.size();
  report.bytes = serialize(grammar, input.dict, ContainerFlags{options.itr_plus, options.k});
  return report;
}

Decompressed decompress_container(std::span<const std::uint8_t> bytes) {
  CompressedGraph view = deserialize(bytes);
  Decompressed out;
  Hypergraph full = decompress(view.to_grammar());
  if (view.itr_plus) {
    auto stripped = strip_itr_plus(full, view.dict);
    out.graph = std::move(stripped.graph);
    out.labels = std::move(stripped.labels);
  } else {
    out.graph = std::move(full);
    out.labels = view.dict.node_attribute_labels();
  }
  out.dict = std::move(view.dict);
  return out;
}

namespace {

std::vector<std::string_view> split_terms(std::string_view text) {
  std::vector<std::string_view> terms;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t end = i;
    if (text[i] == '"') {
      // Literals may contain spaces; skip to the closing quote first.
      ++end;
      while (end < text.size() && text[end] != '"') end += text[end] == '\\' ? 2 : 1;
      if (end >= text.size()) throw Error(ErrorCode::usage, "unterminated literal in query");
      ++end;
    }
    while (end < text.size() && !space(text[end])) ++end;
    terms.push_back(text.substr(i, end - i));
    i = end;
  }
  return terms;
}

std::optional<std::uint64_t> parse_number(std::string_view digits) {
  std::uint64_t v = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, v);
  if (digits.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::optional<TriplePattern> parse_pattern(const CompressedGraph& graph, std::string_view text) {
  const auto terms = split_terms(text);
  if (terms.size() != 3) throw Error(ErrorCode::usage, "query needs exactly three terms: S P O");

  bool unknown = false;
  auto resolve = [&](std::string_view term, bool is_node) -> std::optional<std::uint32_t> {
    if (term == "?") return std::nullopt;
    if (term.front() == '#') {
      const auto id = parse_number(term.substr(1));
      if (!id) throw Error(ErrorCode::usage, "malformed internal id '" + std::string(term) + "'");
      if (*id > 0xFFFFFFFFULL) {
        unknown = true;
        return 0;
      }
      return static_cast<std::uint32_t>(*id);
    }
    if (is_node && graph.dict.numeric_nodes()) {
      const auto id = parse_number(term);
      if (!id) throw Error(ErrorCode::usage, "edge-list node ids are numeric, got '" + std::string(term) + "'");
      if (*id > 0xFFFFFFFFULL) {
        unknown = true;
        return 0;
      }
      return static_cast<std::uint32_t>(*id);
    }
    const auto found = graph.dict.find(term, is_node ? TermKind::node : TermKind::edge_label);
    if (!found) {
      unknown = true;
      return 0;
    }
    return *found;
  };
  TriplePattern q{resolve(terms[0], true), resolve(terms[1], false), resolve(terms[2], true)};
  if (unknown) return std::nullopt;
  return q;
}

std::string pattern_shape(const TriplePattern& q) {
  std::string s;
  s += q.s ? "S" : "?";
  s += q.p ? " P" : " ?";
  s += q.o ? " O" : " ?";
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "error reading '" + path + "'");
  return buffer.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::io, "error writing '" + path + "'");
}

}  // namespace itr
