#include "itr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "itr/error.hpp"
#include "itr/log.hpp"
#include "itr/pipeline.hpp"

namespace itr::cli {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  const std::string raw = read_file(path);
  return {raw.begin(), raw.end()};
}

CompressedGraph load(const std::string& path) {
  const auto bytes = read_bytes(path);
  return deserialize(bytes);
}

struct CompressArgs {
  std::string input, output, format = "nt", node_labels;
  bool plus = false;
  std::uint32_t max_rank = 8;
  unsigned k = 2;
};

int do_compress(const CompressArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const std::string text = read_file(a.input);
  std::optional<std::string> labels;
  if (!a.node_labels.empty()) labels = read_file(a.node_labels);
  ParsedGraph parsed = parse(text, parse_format(a.format), labels);
  if (a.plus && parsed.labels.empty()) log::info("--plus given but the input has no node labels");

  CompressOptions options;
  options.itr_plus = a.plus;
  options.k = a.k;
  options.repair.max_rank = a.max_rank;
  const CompressReport report = compress(std::move(parsed), options);
  write_file(a.output, std::string_view(reinterpret_cast<const char*>(report.bytes.data()), report.bytes.size()));

  const double ratio = text.empty() ? 0.0 : static_cast<double>(report.bytes.size()) / static_cast<double>(text.size());
  out << "rules            " << report.rules << '\n'
      << "edges before     " << report.repair.edges_before << '\n'
      << "edges after      " << report.start_edges << '\n'
      << "iterations       " << report.repair.iterations << '\n'
      << "rules inlined    " << report.prune.inlined << '\n'
      << "input bytes      " << text.size() << '\n'
      << "output bytes     " << report.bytes.size() << '\n'
      << "ratio            " << std::fixed << std::setprecision(4) << ratio << '\n'
      << "time ms          " << std::setprecision(1) << ms_since(start) << '\n';
  return 0;
}

int do_decompress(const std::string& input, const std::string& output, const std::string& format,
                  const std::string& node_labels) {
  const auto bytes = read_bytes(input);
  const Decompressed d = decompress_container(bytes);
  const Format f = parse_format(format);
  write_file(output, emit(d.graph, d.dict, f));
  if (!node_labels.empty()) write_file(node_labels, emit_node_labels(d.labels, d.dict, f));
  return 0;
}

Format format_of(const CompressedGraph& g) { return g.dict.numeric_nodes() ? Format::edgelist : Format::ntriples; }

std::string render(const std::vector<Edge>& edges, const CompressedGraph& g) {
  Hypergraph h;
  h.node_count = g.start.node_count();
  h.edges = edges;
  return emit(h, g.dict, format_of(g));
}

int do_query(const std::string& input, const std::string& text, std::ostream& out) {
  const CompressedGraph g = load(input);
  const auto pattern = parse_pattern(g, text);
  if (!pattern) {
    log::info("query term not in dictionary; empty result");
    return 0;
  }
  out << render(answer(g, *pattern), g);
  return 0;
}

int do_stats(const std::string& input, std::ostream& out) {
  const auto bytes = read_bytes(input);
  const SectionSizes sizes = read_section_sizes(bytes);
  const CompressedGraph g = deserialize(bytes);
  out << "file bytes       " << bytes.size() << '\n';
  for (std::size_t i = 0; i < kSectionCount; ++i) {
    out << std::left << std::setw(17) << SectionSizes::names[i] << sizes.bytes[i] << '\n';
  }
  out << "itr+             " << (g.itr_plus ? "yes" : "no") << '\n'
      << "nodes            " << g.start.node_count() << '\n'
      << "terminals        " << g.terminal_count() << '\n'
      << "rules            " << g.rules.size() << '\n'
      << "start edges      " << g.start.edge_count() << '\n'
      << "fn table         " << g.start.function_table().size() << '\n';
  return 0;
}

int do_bench(const std::string& input, const std::string& query_file, unsigned repeat, std::ostream& out) {
  const auto load_start = Clock::now();
  const CompressedGraph g = load(input);
  const double load_ms = ms_since(load_start);

  std::map<std::string, std::vector<double>> samples;
  std::size_t unknown = 0;
  std::istringstream lines(read_file(query_file));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    const auto pattern = parse_pattern(g, line);
    if (!pattern) {
      ++unknown;
      continue;
    }
    auto& bucket = samples[pattern_shape(*pattern)];
    for (unsigned r = 0; r < repeat; ++r) {
      const auto start = Clock::now();
      std::ostringstream sink;
      sink << render(answer(g, *pattern), g);
      bucket.push_back(ms_since(start));
    }
  }

  out << "load ms " << std::fixed << std::setprecision(3) << load_ms << '\n';
  if (unknown > 0) out << "skipped " << unknown << " queries with unknown terms\n";
  out << "shape    runs     mean_ms   median_ms\n";
  for (auto& [shape, times] : samples) {
    double sum = 0;
    for (double t : times) sum += t;
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    const double median = n % 2 ? times[n / 2] : (times[n / 2 - 1] + times[n / 2]) / 2;
    out << std::left << std::setw(9) << shape << std::right << std::setw(4) << n << std::setw(12) << sum / n
        << std::setw(12) << median << '\n';
  }
  return 0;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::usage:
      return 1;
    case ErrorCode::io:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incidence-type RePair graph compressor"};
  app.require_subcommand(1);

  CompressArgs c;
  auto* compress_cmd = app.add_subcommand("compress", "Compress a graph into an .itr container");
  compress_cmd->add_option("-i,--input", c.input, "Input graph")->required();
  compress_cmd->add_option("-o,--output", c.output, "Output container")->required();
  compress_cmd->add_option("-f,--format", c.format, "nt or el")->check(CLI::IsMember({"nt", "el"}));
  compress_cmd->add_flag("--plus", c.plus, "Store node labels as rank-1 edges");
  compress_cmd->add_option("--node-labels", c.node_labels, "Node label file (node<TAB>label)");
  compress_cmd->add_option("--max-rank", c.max_rank, "Largest nonterminal rank")->check(CLI::Range(2u, 64u));
  compress_cmd->add_option("--k", c.k, "k2-tree arity")->check(CLI::Range(2u, 16u));

  std::string d_in, d_out, d_format = "nt", d_labels;
  auto* decompress_cmd = app.add_subcommand("decompress", "Restore the original graph");
  decompress_cmd->add_option("-i,--input", d_in, "Input container")->required();
  decompress_cmd->add_option("-o,--output", d_out, "Output graph")->required();
  decompress_cmd->add_option("-f,--format", d_format, "nt or el")->check(CLI::IsMember({"nt", "el"}));
  decompress_cmd->add_option("--node-labels", d_labels, "Write node labels here");

  std::string q_in, q_text;
  auto* query_cmd = app.add_subcommand("query", "Answer a triple pattern");
  query_cmd->add_option("-i,--input", q_in, "Input container")->required();
  query_cmd->add_option("-q,--query", q_text, "Pattern \"S P O\", ? for unbound")->required();

  std::string s_in;
  auto* stats_cmd = app.add_subcommand("stats", "Show container statistics");
  stats_cmd->add_option("-i,--input", s_in, "Input container")->required();

  std::string b_in, b_queries;
  unsigned b_repeat = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Time a query file");
  bench_cmd->add_option("-i,--input", b_in, "Input container")->required();
  bench_cmd->add_option("-Q,--queries", b_queries, "One pattern per line")->required();
  bench_cmd->add_option("-n,--repeat", b_repeat, "Runs per query")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return 1;
  }

  try {
    if (*compress_cmd) return do_compress(c, out);
    if (*decompress_cmd) return do_decompress(d_in, d_out, d_format, d_labels);
    if (*query_cmd) return do_query(q_in, q_text, out);
    if (*stats_cmd) return do_stats(s_in, out);
    if (*bench_cmd) return do_bench(b_in, b_queries, b_repeat, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace itr::cli
