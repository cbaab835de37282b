#include "itr/digram.hpp"

#include <algorithm>

#include <omp.h>

#include "itr/error.hpp"

namespace itr {

namespace {

auto find_entry(const std::vector<CountTable::Entry>& entries, IncidenceType i) {
  return std::lower_bound(entries.begin(), entries.end(), i,
                          [](const CountTable::Entry& e, IncidenceType t) { return e.type < t; });
}

std::uint64_t pair_estimate(std::uint64_t c1, std::uint64_t c2, bool same) {
  return same ? c1 / 2 : std::min(c1, c2);
}

}  // namespace

std::uint32_t CountTable::get(NodeId v, IncidenceType i) const {
  if (v >= per_node_.size()) return 0;
  const auto& entries = per_node_[v];
  auto it = find_entry(entries, i);
  return it != entries.end() && it->type == i ? it->count : 0;
}

std::uint32_t CountTable::adjust(NodeId v, IncidenceType i, int delta) {
  if (v >= per_node_.size()) per_node_.resize(static_cast<std::size_t>(v) + 1);
  auto& entries = per_node_[v];
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const Entry& e, IncidenceType t) { return e.type < t; });
  if (it == entries.end() || it->type != i) {
    if (delta < 0) throw Error(ErrorCode::corrupt, "incidence count underflow");
    it = entries.insert(it, Entry{i, 0});
  }
  if (delta < 0 && it->count < static_cast<std::uint32_t>(-delta)) {
    throw Error(ErrorCode::corrupt, "incidence count underflow");
  }
  it->count = static_cast<std::uint32_t>(static_cast<std::int64_t>(it->count) + delta);
  const auto value = it->count;
  if (value == 0) entries.erase(it);
  return value;
}

bool operator==(const CountTable& a, const CountTable& b) {
  const auto n = std::max(a.per_node_.size(), b.per_node_.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto x = a.at(static_cast<NodeId>(v));
    auto y = b.at(static_cast<NodeId>(v));
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].type != y[k].type || x[k].count != y[k].count) return false;
    }
  }
  return true;
}

std::uint64_t DigramCounts::get(const Digram& d) const {
  auto it = counts_.find(d);
  return it == counts_.end() ? 0 : it->second.count;
}

void DigramCounts::add(const Digram& d, std::int64_t delta) {
  if (delta == 0 || processed_.contains(d)) return;
  auto [it, inserted] = counts_.try_emplace(d);
  Slot& slot = it->second;
  if (inserted) slot.eligible = !eligible_ || eligible_(d);
  if (delta < 0 && slot.count < static_cast<std::uint64_t>(-delta)) {
    throw Error(ErrorCode::corrupt, "digram count underflow");
  }
  slot.count = static_cast<std::uint64_t>(static_cast<std::int64_t>(slot.count) + delta);
  if (slot.count == 0) {
    if (slot.queued > 0) queue_.erase({slot.queued, d});
    counts_.erase(it);
    return;
  }
  if (slot.eligible && !slot.dirty) {
    slot.dirty = true;
    dirty_.push_back(d);
  }
}

void DigramCounts::mark_processed(const Digram& d) {
  if (auto it = counts_.find(d); it != counts_.end()) {
    if (it->second.queued > 0) queue_.erase({it->second.queued, d});
    counts_.erase(it);
  }
  processed_.insert(d);
}

void DigramCounts::flush() const {
  for (const Digram& d : dirty_) {
    auto it = counts_.find(d);
    if (it == counts_.end() || !it->second.dirty) continue;
    Slot& slot = it->second;
    slot.dirty = false;
    if (slot.queued == slot.count) continue;
    if (slot.queued > 0) queue_.erase({slot.queued, d});
    queue_.insert({slot.count, d});
    slot.queued = slot.count;
  }
  dirty_.clear();
}

std::optional<std::pair<Digram, std::uint64_t>> DigramCounts::top() const {
  flush();
  if (queue_.empty()) return std::nullopt;
  const auto& [count, d] = *queue_.begin();
  return std::make_pair(d, count);
}

std::map<Digram, std::uint64_t> DigramCounts::snapshot() const {
  std::map<Digram, std::uint64_t> out;
  for (const auto& [d, slot] : counts_) out.emplace(d, slot.count);
  return out;
}

CountTable count_incidence(const Hypergraph& graph) {
  CountTable table(graph.node_count);
  for (const auto& e : graph.edges) {
    for (std::uint32_t m = 0; m < e.nodes.size(); ++m) table.adjust(e.nodes[m], {e.label, m}, +1);
  }
  return table;
}

namespace {

template <typename Sink>
void node_estimates(std::span<const CountTable::Entry> entries, Sink&& sink) {
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a; b < entries.size(); ++b) {
      const bool same = a == b;
      const auto n = pair_estimate(entries[a].count, entries[b].count, same);
      if (n > 0) sink(Digram{entries[a].type, entries[b].type}, n);
    }
  }
}

}  // namespace

DigramCounts count_digrams(const CountTable& table, DigramCounts::Filter eligible) {
  std::unordered_map<Digram, std::uint64_t, DigramHash> totals;
  for (std::size_t v = 0; v < table.node_count(); ++v) {
    node_estimates(table.at(static_cast<NodeId>(v)),
                   [&](const Digram& d, std::uint64_t n) { totals[d] += n; });
  }
  DigramCounts counts(std::move(eligible));
  for (const auto& [d, n] : totals) counts.add(d, static_cast<std::int64_t>(n));
  return counts;
}

DigramCounts count_digrams_parallel(const CountTable& table, DigramCounts::Filter eligible) {
  const auto nodes = static_cast<std::int64_t>(table.node_count());
  std::vector<std::unordered_map<Digram, std::uint64_t, DigramHash>> partial(
      static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 4096)
    for (std::int64_t v = 0; v < nodes; ++v) {
      node_estimates(table.at(static_cast<NodeId>(v)),
                     [&](const Digram& d, std::uint64_t n) { local[d] += n; });
    }
  }
  auto& totals = partial.front();
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (const auto& [d, n] : partial[t]) totals[d] += n;
  }
  DigramCounts counts(std::move(eligible));
  for (const auto& [d, n] : totals) counts.add(d, static_cast<std::int64_t>(n));
  return counts;
}

std::uint64_t count_at(const CountTable& table, NodeId v, const Digram& d) {
  return pair_estimate(table.get(v, d.first), table.get(v, d.second), d.same_types());
}

std::pair<Digram, std::uint64_t> most_frequent(const DigramCounts& counts) {
  auto top = counts.top();
  if (!top) throw Error(ErrorCode::empty_counts, "no digram left to replace");
  return *top;
}

std::int64_t size_gain(std::uint32_t rank1, std::uint32_t rank2, std::uint64_t n) {
  return 2 * static_cast<std::int64_t>(n) - (2 + static_cast<std::int64_t>(rank1) + rank2);
}

std::int64_t size_gain(const Grammar& grammar, const Digram& d, std::uint64_t n) {
  return size_gain(grammar.rank(d.first.label), grammar.rank(d.second.label), n);
}

void shift_incidence(CountTable& table, DigramCounts& counts, NodeId v, IncidenceType i, int delta) {
  const std::uint64_t before = table.get(v, i);
  const std::uint64_t after = static_cast<std::uint64_t>(static_cast<std::int64_t>(before) + delta);
  for (const auto& entry : table.at(v)) {
    const bool same = entry.type == i;
    const auto old_n = pair_estimate(before, entry.count, same);
    const auto new_n = pair_estimate(after, entry.count, same);
    if (old_n != new_n) {
      counts.add(Digram::make(i, entry.type),
                 static_cast<std::int64_t>(new_n) - static_cast<std::int64_t>(old_n));
    }
  }
  table.adjust(v, i, delta);
}

void remove_edge_counts(CountTable& table, DigramCounts& counts, const Edge& e) {
  for (std::uint32_t m = 0; m < e.nodes.size(); ++m) shift_incidence(table, counts, e.nodes[m], {e.label, m}, -1);
}

void add_edge_counts(CountTable& table, DigramCounts& counts, const Edge& e) {
  for (std::uint32_t m = 0; m < e.nodes.size(); ++m) shift_incidence(table, counts, e.nodes[m], {e.label, m}, +1);
}

void update_counts(CountTable& table, DigramCounts& counts, const Edge& removed, const Edge* added) {
  remove_edge_counts(table, counts, removed);
  if (added != nullptr) add_edge_counts(table, counts, *added);
}

}  // namespace itr
