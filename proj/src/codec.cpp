#include "itr/codec.hpp"

#include <algorithm>
#include <cstring>
#include <map>

#include "itr/error.hpp"

namespace itr {

EdgeSpread compute_index_function(const Edge& e) {
  EdgeSpread out;
  out.nodes = e.nodes;
  std::sort(out.nodes.begin(), out.nodes.end());
  out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()), out.nodes.end());
  out.function.positions.reserve(e.nodes.size());
  for (const auto v : e.nodes) {
    const auto it = std::lower_bound(out.nodes.begin(), out.nodes.end(), v);
    out.function.positions.push_back(static_cast<std::uint32_t>(it - out.nodes.begin()));
  }
  return out;
}

void write_index_function(BitWriter& out, const IndexFunction& pi) {
  if (pi.positions.empty()) throw Error(ErrorCode::rank_mismatch, "index function of rank 0");
  out.write_delta(pi.positions.size() - 1);
  for (const auto p : pi.positions) out.write_delta(p);
}

IndexFunction read_index_function(BitReader& in) {
  const auto rank = in.read_delta() + 1;
  if (rank > in.remaining()) throw Error(ErrorCode::truncated, "index function exceeds stream");
  IndexFunction pi;
  pi.positions.reserve(static_cast<std::size_t>(rank));
  for (std::uint64_t m = 0; m < rank; ++m) {
    const auto p = in.read_delta();
    if (p >= rank) throw Error(ErrorCode::corrupt, "index function value exceeds its rank");
    pi.positions.push_back(static_cast<std::uint32_t>(p));
  }
  return pi;
}

BitVector encode_index_function(const IndexFunction& pi) {
  BitWriter w;
  write_index_function(w, pi);
  return w.bits();
}

CompressedStartGraph CompressedStartGraph::encode(const Hypergraph& graph, std::uint64_t label_universe,
                                                  unsigned k) {
  CompressedStartGraph out;
  out.node_count_ = graph.node_count;

  std::vector<std::size_t> order(graph.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return graph.edges[a].label < graph.edges[b].label; });

  std::vector<std::uint64_t> labels;
  labels.reserve(order.size());
  std::vector<K2Tree::Point> points;
  std::map<IndexFunction, std::uint32_t> function_ids;
  out.function_ids_.reserve(order.size());
  for (std::size_t column = 0; column < order.size(); ++column) {
    const Edge& e = graph.edges[order[column]];
    labels.push_back(e.label);
    auto spread = compute_index_function(e);
    for (const auto v : spread.nodes) {
      if (v >= graph.node_count) throw Error(ErrorCode::out_of_bounds, "edge references node beyond node count");
      points.emplace_back(v, column);
    }
    auto [it, inserted] =
        function_ids.emplace(spread.function, static_cast<std::uint32_t>(out.functions_.size()));
    if (inserted) out.functions_.push_back(std::move(spread.function));
    out.function_ids_.push_back(it->second);
  }
  out.labels_ = EliasFano(labels, label_universe);
  out.incidence_ = K2Tree(points, graph.node_count, graph.edges.size(), k);
  return out;
}

Edge CompressedStartGraph::decode_edge(std::size_t column) const {
  if (column >= edge_count()) throw Error(ErrorCode::out_of_bounds, "start-graph column out of range");
  const auto rows = incidence_.col_ones(column);
  const auto& pi = functions_[function_ids_[column]];
  Edge e{label(column), std::vector<NodeId>(pi.positions.size())};
  std::uint32_t highest = 0;
  for (std::size_t m = 0; m < pi.positions.size(); ++m) {
    const auto p = pi.positions[m];
    if (p >= rows.size()) throw Error(ErrorCode::corrupt, "index function does not match incidence column");
    highest = std::max(highest, p);
    e.nodes[m] = static_cast<NodeId>(rows[p]);
  }
  if (highest + 1 != rows.size()) throw Error(ErrorCode::corrupt, "incidence column has unused nodes");
  return e;
}

std::vector<std::uint64_t> CompressedStartGraph::columns_of_node(NodeId v) const {
  if (v >= node_count_) return {};
  return incidence_.row_ones(v);
}

void CompressedStartGraph::write(BitWriter& out) const {
  out.write_delta(node_count_);
  labels_.write(out);
  incidence_.write(out);
  out.write_delta(functions_.size());
  for (const auto& pi : functions_) write_index_function(out, pi);
  for (const auto id : function_ids_) out.write_delta(id);
  out.align();
}

CompressedStartGraph CompressedStartGraph::read(BitReader& in) {
  CompressedStartGraph g;
  g.node_count_ = static_cast<std::size_t>(in.read_delta());
  g.labels_ = EliasFano::read(in);
  g.incidence_ = K2Tree::read(in);
  if (g.incidence_.rows() != g.node_count_ || g.incidence_.cols() != g.labels_.size()) {
    throw Error(ErrorCode::corrupt, "incidence matrix shape does not match start graph");
  }
  const auto functions = in.read_delta();
  if (functions > in.remaining()) throw Error(ErrorCode::truncated, "function table exceeds stream");
  g.functions_.reserve(static_cast<std::size_t>(functions));
  for (std::uint64_t i = 0; i < functions; ++i) g.functions_.push_back(read_index_function(in));
  g.function_ids_.resize(g.labels_.size());
  for (auto& id : g.function_ids_) {
    const auto value = in.read_delta();
    if (value >= functions) throw Error(ErrorCode::corrupt, "unknown index function id");
    id = static_cast<std::uint32_t>(value);
  }
  in.align();
  return g;
}

void write_rules(BitWriter& out, std::span<const Rule> rules) {
  for (const auto& rule : rules) {
    out.write_delta(rule.rhs.edges.size());
    for (const auto& e : rule.rhs.edges) {
      out.write_delta(e.label);
      for (const auto v : e.nodes) out.write_delta(v);
    }
  }
}

DeltaStream encode_rules(std::span<const Rule> rules) {
  BitWriter w;
  write_rules(w, rules);
  return DeltaStream{w.bits()};
}

std::vector<Rule> read_rules(BitReader& in, std::size_t count, std::vector<LabelInfo>& labels) {
  std::vector<Rule> rules;
  rules.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto head = static_cast<LabelId>(labels.size());
    const auto edges = in.read_delta();
    if (edges == 0 || edges > in.remaining()) throw Error(ErrorCode::corrupt, "bad rule edge count");
    Rule rule{head, {}};
    std::uint64_t highest = 0;
    for (std::uint64_t j = 0; j < edges; ++j) {
      const auto label = in.read_delta();
      if (label >= head) {
        throw Error(ErrorCode::corrupt, "rule " + std::to_string(i) + " references label " + std::to_string(label) +
                                            " whose rank is not yet known");
      }
      Edge e{static_cast<LabelId>(label), std::vector<NodeId>(labels[label].rank)};
      for (auto& v : e.nodes) {
        const auto node = in.read_delta();
        if (node > 0xFFFFFFFFULL) throw Error(ErrorCode::corrupt, "rule node out of range");
        v = static_cast<NodeId>(node);
        highest = std::max(highest, node);
      }
      rule.rhs.edges.push_back(std::move(e));
    }
    const auto rank = static_cast<std::uint32_t>(highest + 1);
    std::vector<bool> seen(rank, false);
    for (const auto& e : rule.rhs.edges) {
      for (const auto v : e.nodes) seen[v] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::corrupt, "rule " + std::to_string(i) + " has internal nodes");
    }
    rule.rhs.node_count = rank;
    labels.push_back({head, rank, LabelKind::nonterminal});
    rules.push_back(std::move(rule));
  }
  return rules;
}

NTMatrix NTMatrix::build(const Grammar& grammar, unsigned k) {
  NTMatrix nt;
  const std::size_t terminals = grammar.terminal_count();
  const std::size_t words = (terminals + 63) / 64;
  nt.first_nonterminal_ = terminals;
  std::vector<std::vector<std::uint64_t>> reach(grammar.rules.size(), std::vector<std::uint64_t>(words, 0));
  // Rules reference only earlier nonterminals, so one pass in creation order
  // computes the closure.
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    if (grammar.rules[i].head != terminals + i) throw Error(ErrorCode::format, "rules not in creation order");
    for (const auto& e : grammar.rules[i].rhs.edges) {
      if (e.label < terminals) {
        reach[i][e.label / 64] |= 1ULL << (e.label % 64);
      } else if (e.label - terminals < i) {
        const auto& child = reach[e.label - terminals];
        for (std::size_t w = 0; w < words; ++w) reach[i][w] |= child[w];
      } else {
        throw Error(ErrorCode::format, "rule references a later nonterminal");
      }
    }
  }
  std::vector<K2Tree::Point> points;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    for (std::size_t t = 0; t < terminals; ++t) {
      if ((reach[i][t / 64] >> (t % 64)) & 1U) points.emplace_back(i, t);
    }
  }
  nt.tree_ = K2Tree(points, grammar.rules.size(), terminals, k);
  return nt;
}

bool NTMatrix::generates(LabelId nonterminal, LabelId terminal) const {
  if (nonterminal < first_nonterminal_ || terminal >= first_nonterminal_) return false;
  const std::uint64_t row = nonterminal - first_nonterminal_;
  if (row >= tree_.rows()) return false;
  return tree_.cell(row, terminal);
}

void NTMatrix::write(BitWriter& out) const {
  tree_.write(out);
}

NTMatrix NTMatrix::read(BitReader& in, std::size_t terminals) {
  NTMatrix nt;
  nt.first_nonterminal_ = terminals;
  nt.tree_ = K2Tree::read(in);
  if (nt.tree_.cols() != terminals) throw Error(ErrorCode::corrupt, "NT matrix width does not match terminals");
  return nt;
}

Grammar CompressedGraph::to_grammar() const {
  Grammar g;
  g.labels = labels;
  g.rules = rules;
  g.start.node_count = start.node_count();
  g.start.edges.reserve(start.edge_count());
  for (std::size_t j = 0; j < start.edge_count(); ++j) g.start.edges.push_back(start.decode_edge(j));
  return g;
}

namespace {

void write_terms(BitWriter& out, const std::vector<std::string>& terms) {
  out.write_delta(terms.size());
  for (const auto& t : terms) {
    out.write_delta(t.size());
    out.write_bytes({reinterpret_cast<const std::uint8_t*>(t.data()), t.size()});
  }
}

std::vector<std::string> read_terms(BitReader& in) {
  const auto count = in.read_delta();
  if (count > in.remaining()) throw Error(ErrorCode::truncated, "term list exceeds section");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto length = in.read_delta();
    if (length * 8 > in.remaining()) throw Error(ErrorCode::truncated, "term exceeds section");
    out.push_back(in.read_bytes(static_cast<std::size_t>(length)));
  }
  return out;
}

void put_u64(std::vector<std::uint8_t>& out, std::size_t at, std::uint64_t value) {
  for (int b = 0; b < 8; ++b) out[at + b] = static_cast<std::uint8_t>(value >> (8 * b));
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t value = 0;
  for (int b = 0; b < 8; ++b) value |= static_cast<std::uint64_t>(bytes[at + b]) << (8 * b);
  return value;
}

}  // namespace

std::vector<std::uint8_t> serialize(const Grammar& grammar, const Dictionary& dict, ContainerFlags flags) {
  const std::size_t terminals = grammar.terminal_count();
  if (terminals != dict.label_count()) throw Error(ErrorCode::format, "grammar terminals do not match dictionary");
  for (std::size_t t = 0; t < terminals; ++t) {
    if (grammar.labels[t].rank != dict.label_rank(static_cast<LabelId>(t))) {
      throw Error(ErrorCode::rank_mismatch, "terminal rank differs from dictionary");
    }
  }
  for (std::size_t i = 0; i < grammar.rules.size(); ++i) {
    if (grammar.rules[i].head != terminals + i) throw Error(ErrorCode::format, "rules not in creation order");
  }

  std::array<std::vector<std::uint8_t>, kSectionCount> sections;
  {
    BitWriter w;
    write_terms(w, dict.nodes().terms());
    write_terms(w, dict.label_terms());
    write_terms(w, dict.node_attributes());
    sections[0] = w.bytes();
  }
  {
    BitWriter w;
    w.write_delta(terminals);
    for (std::size_t t = 0; t < terminals; ++t) w.write_delta(grammar.labels[t].rank);
    sections[1] = w.bytes();
  }
  {
    BitWriter w;
    w.write_delta(grammar.rules.size());
    write_rules(w, grammar.rules);
    sections[2] = w.bytes();
  }
  {
    BitWriter w;
    CompressedStartGraph::encode(grammar.start, grammar.labels.size(), flags.k).write(w);
    sections[3] = w.bytes();
  }
  {
    BitWriter w;
    NTMatrix::build(grammar, flags.k).write(w);
    sections[4] = w.bytes();
  }

  std::vector<std::uint8_t> out(kHeaderSize, 0);
  std::memcpy(out.data(), kMagic.data(), kMagic.size());
  out[4] = static_cast<std::uint8_t>((flags.itr_plus ? 1U : 0U) | (dict.numeric_nodes() ? 2U : 0U));
  for (std::size_t s = 0; s < kSectionCount; ++s) {
    put_u64(out, 5 + 8 * s, sections[s].size());
    out.insert(out.end(), sections[s].begin(), sections[s].end());
  }
  return out;
}

std::vector<std::uint8_t> serialize(const CompressedGraph& graph) {
  return serialize(graph.to_grammar(), graph.dict,
                   ContainerFlags{graph.itr_plus, graph.start.incidence().arity()});
}

SectionSizes read_section_sizes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic.data(), 3) != 0) {
    throw Error(ErrorCode::bad_magic, "not an ITR container (bad magic)");
  }
  if (bytes[3] != static_cast<std::uint8_t>(kMagic[3])) {
    throw Error(ErrorCode::bad_version, "unsupported container version '" + std::string(1, static_cast<char>(bytes[3])) + "'");
  }
  if (bytes.size() < kHeaderSize) throw Error(ErrorCode::truncated, "container header truncated");
  SectionSizes sizes;
  std::uint64_t total = kHeaderSize;
  for (std::size_t s = 0; s < kSectionCount; ++s) {
    sizes.bytes[s] = get_u64(bytes, 5 + 8 * s);
    if (sizes.bytes[s] > bytes.size()) throw Error(ErrorCode::section_mismatch, "section length exceeds file");
    total += sizes.bytes[s];
  }
  if (total != bytes.size()) {
    throw Error(total > bytes.size() ? ErrorCode::truncated : ErrorCode::section_mismatch,
                "section lengths (" + std::to_string(total) + " bytes) do not match file size (" +
                    std::to_string(bytes.size()) + " bytes)");
  }
  return sizes;
}

CompressedGraph deserialize(std::span<const std::uint8_t> bytes) {
  const auto sizes = read_section_sizes(bytes);
  const std::uint8_t flags = bytes[4];
  if ((flags & ~3U) != 0) throw Error(ErrorCode::bad_version, "unknown container flags");

  std::array<std::span<const std::uint8_t>, kSectionCount> sections;
  std::size_t offset = kHeaderSize;
  for (std::size_t s = 0; s < kSectionCount; ++s) {
    sections[s] = bytes.subspan(offset, static_cast<std::size_t>(sizes.bytes[s]));
    offset += static_cast<std::size_t>(sizes.bytes[s]);
  }

  CompressedGraph out;
  out.itr_plus = (flags & 1U) != 0;

  std::vector<std::uint32_t> ranks;
  {
    BitReader r(sections[1]);
    const auto terminals = r.read_delta();
    if (terminals > r.remaining()) throw Error(ErrorCode::truncated, "label table truncated");
    for (std::uint64_t t = 0; t < terminals; ++t) {
      const auto rank = r.read_delta();
      if (rank == 0 || rank > 0xFFFF) throw Error(ErrorCode::corrupt, "invalid terminal rank");
      ranks.push_back(static_cast<std::uint32_t>(rank));
      out.labels.push_back({static_cast<LabelId>(t), static_cast<std::uint32_t>(rank), LabelKind::terminal});
    }
  }
  {
    BitReader r(sections[0]);
    for (auto& term : read_terms(r)) out.dict.add_node(std::move(term));
    auto labels = read_terms(r);
    if (labels.size() != ranks.size()) throw Error(ErrorCode::corrupt, "label terms do not match label table");
    for (std::size_t t = 0; t < labels.size(); ++t) out.dict.add_label(std::move(labels[t]), ranks[t]);
    for (auto& term : read_terms(r)) out.dict.add_node_attribute(std::move(term));
    out.dict.set_numeric_nodes((flags & 2U) != 0);
  }
  {
    BitReader r(sections[2]);
    const auto count = r.read_delta();
    if (count > r.remaining()) throw Error(ErrorCode::truncated, "rules section truncated");
    out.rules = read_rules(r, static_cast<std::size_t>(count), out.labels);
  }
  {
    BitReader r(sections[3]);
    out.start = CompressedStartGraph::read(r);
    if (out.start.labels().universe() != out.labels.size()) {
      throw Error(ErrorCode::corrupt, "start graph label universe does not match label table");
    }
    const auto& functions = out.start.function_table();
    const auto& ids = out.start.function_ids();
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (functions[ids[j]].rank() != out.labels[out.start.label(j)].rank) {
        throw Error(ErrorCode::corrupt, "index function rank differs from label rank");
      }
    }
  }
  {
    BitReader r(sections[4]);
    out.nt = NTMatrix::read(r, ranks.size());
    if (out.nt.tree().rows() != out.rules.size()) throw Error(ErrorCode::corrupt, "NT matrix height does not match rules");
  }
  return out;
}

}  // namespace itr
