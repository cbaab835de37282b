#include "itr/ingest.hpp"

#include <charconv>

#include "itr/error.hpp"

namespace itr {

Format parse_format(std::string_view name) {
  if (name == "nt" || name == "ntriples") return Format::ntriples;
  if (name == "el" || name == "edgelist") return Format::edgelist;
  throw Error(ErrorCode::usage, "unknown format '" + std::string(name) + "' (expected nt or el)");
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Walks lines of a text buffer, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

class TripleTokenizer {
 public:
  TripleTokenizer(std::string_view line, std::size_t number) : line_(line), number_(number) {}

  void skip_space() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size() || line_[pos_] == '#';
  }

  std::string_view iri() {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != '<') fail(number_, "expected '<'");
    const auto close = line_.find('>', pos_);
    if (close == std::string_view::npos) fail(number_, "unterminated IRI");
    return take(close + 1);
  }

  std::string_view subject() {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == '_') return blank();
    return iri();
  }

  std::string_view object() {
    skip_space();
    if (pos_ >= line_.size()) fail(number_, "missing object");
    switch (line_[pos_]) {
      case '<': return iri();
      case '_': return blank();
      case '"': return literal();
      default: fail(number_, "unexpected character in object position");
    }
  }

  void dot() {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != '.') fail(number_, "expected '.'");
    ++pos_;
    if (!at_end()) fail(number_, "trailing characters after '.'");
  }

 private:
  std::string_view take(std::size_t end) {
    auto token = line_.substr(pos_, end - pos_);
    pos_ = end;
    return token;
  }

  std::string_view blank() {
    if (line_.substr(pos_, 2) != "_:") fail(number_, "expected blank node '_:'");
    auto end = pos_ + 2;
    while (end < line_.size() && !is_space(line_[end])) ++end;
    if (end == pos_ + 2) fail(number_, "empty blank node label");
    return take(end);
  }

  std::string_view literal() {
    auto end = pos_ + 1;
    while (end < line_.size() && line_[end] != '"') end += line_[end] == '\\' ? 2 : 1;
    if (end >= line_.size()) fail(number_, "unterminated literal");
    ++end;
    if (end < line_.size() && line_[end] == '@') {
      ++end;
      while (end < line_.size() && !is_space(line_[end])) ++end;
    } else if (line_.substr(end, 3) == "^^<") {
      const auto close = line_.find('>', end);
      if (close == std::string_view::npos) fail(number_, "unterminated datatype IRI");
      end = close + 1;
    }
    return take(end);
  }

  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

NodeId parse_node_number(std::string_view token, std::size_t line) {
  NodeId value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    fail(line, "invalid node id '" + std::string(token) + "'");
  }
  return value;
}

bool skippable(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  return i == line.size() || line[i] == '#';
}

void grow(Hypergraph& g, NodeId v) {
  if (v >= g.node_count) g.node_count = static_cast<std::size_t>(v) + 1;
}

}  // namespace

ParsedGraph parse(std::string_view text, Format format,
                  std::optional<std::string_view> node_label_text) {
  ParsedGraph out;
  auto& g = out.graph;
  auto& dict = out.dict;
  dict.set_numeric_nodes(format == Format::edgelist);

  LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    if (skippable(line)) continue;
    if (format == Format::ntriples) {
      TripleTokenizer tok(line, reader.number());
      const auto s = tok.subject();
      const auto p = tok.iri();
      const auto o = tok.object();
      tok.dot();
      const NodeId sid = dict.intern(s, TermKind::node);
      const LabelId pid = dict.intern(p, TermKind::edge_label);
      const NodeId oid = dict.intern(o, TermKind::node);
      g.edges.push_back(Edge{pid, {sid, oid}});
    } else {
      const auto fields = split_tabs(line);
      if (fields.size() != 3) fail(reader.number(), "expected src<TAB>label<TAB>dst");
      if (fields[1].empty()) fail(reader.number(), "empty edge label");
      const NodeId src = parse_node_number(fields[0], reader.number());
      const NodeId dst = parse_node_number(fields[2], reader.number());
      const LabelId label = dict.intern(fields[1], TermKind::edge_label);
      g.edges.push_back(Edge{label, {src, dst}});
      grow(g, src);
      grow(g, dst);
    }
  }
  if (format == Format::ntriples) g.node_count = dict.nodes().size();

  if (node_label_text) {
    LineReader labels(*node_label_text);
    while (labels.next(line)) {
      if (skippable(line)) continue;
      const auto fields = split_tabs(line);
      if (fields.size() != 2 || fields[1].empty()) fail(labels.number(), "expected node<TAB>label");
      NodeId v = 0;
      if (format == Format::edgelist) {
        v = parse_node_number(fields[0], labels.number());
        grow(g, v);
      } else {
        v = dict.intern(fields[0], TermKind::node);
        g.node_count = dict.nodes().size();
      }
      auto [it, inserted] = out.labels.emplace(v, std::string(fields[1]));
      if (!inserted && it->second != fields[1]) {
        fail(labels.number(), "node has two different labels");
      }
    }
  }
  return out;
}

namespace {

void append_node(std::string& out, const Dictionary& dict, NodeId v) {
  if (dict.numeric_nodes()) {
    out += std::to_string(v);
  } else {
    out += dict.lookup(v, TermKind::node);
  }
}

}  // namespace

std::string emit(const Hypergraph& graph, const Dictionary& dict, Format format) {
  std::string out;
  for (const auto& e : graph.edges) {
    if (e.nodes.size() != 2) {
      throw Error(ErrorCode::dangling_id, "cannot emit edge of rank " + std::to_string(e.nodes.size()));
    }
    const auto& label = dict.lookup(e.label, TermKind::edge_label);
    const char sep = format == Format::ntriples ? ' ' : '\t';
    append_node(out, dict, e.nodes[0]);
    out += sep;
    out += label;
    out += sep;
    append_node(out, dict, e.nodes[1]);
    out += format == Format::ntriples ? " .\n" : "\n";
  }
  return out;
}

std::string emit_node_labels(const NodeLabels& labels, const Dictionary& dict, Format) {
  std::string out;
  for (const auto& [v, text] : labels) {
    append_node(out, dict, v);
    out += '\t';
    out += text;
    out += '\n';
  }
  return out;
}

}  // namespace itr
