#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "itr/graph.hpp"

namespace itr {

/// How an edge touches a node: its label and the position (connection-type).
struct IncidenceType {
  LabelId label = 0;
  std::uint32_t conn = 0;

  friend auto operator<=>(const IncidenceType&, const IncidenceType&) = default;
  friend bool operator==(const IncidenceType&, const IncidenceType&) = default;
};

/// Unordered pair of incidence types, stored with first <= second.
struct Digram {
  IncidenceType first;
  IncidenceType second;

  static Digram make(IncidenceType a, IncidenceType b) {
    return b < a ? Digram{b, a} : Digram{a, b};
  }
  bool same_types() const { return first == second; }

  friend auto operator<=>(const Digram&, const Digram&) = default;
  friend bool operator==(const Digram&, const Digram&) = default;
};

struct DigramHash {
  std::size_t operator()(const Digram& d) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(d.first.label) << 32) ^ d.first.conn;
    h = h * 0x9E3779B97F4A7C15ULL ^ ((static_cast<std::uint64_t>(d.second.label) << 32) ^ d.second.conn);
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

/// c(v, i): number of (edge, position) pairs at node v with incidence type i.
/// Loops contribute once per position.
class CountTable {
 public:
  struct Entry {
    IncidenceType type;
    std::uint32_t count;
  };

  CountTable() = default;
  explicit CountTable(std::size_t node_count) : per_node_(node_count) {}

  std::uint32_t get(NodeId v, IncidenceType i) const;
  std::span<const Entry> at(NodeId v) const {
    if (v >= per_node_.size()) return {};
    return per_node_[v];
  }
  std::size_t node_count() const { return per_node_.size(); }

  /// Adds `delta` (+1/-1) and returns the new value. Underflow throws.
  std::uint32_t adjust(NodeId v, IncidenceType i, int delta);

  friend bool operator==(const CountTable& a, const CountTable& b);

 private:
  std::vector<std::vector<Entry>> per_node_;
};

/// Global digram estimates plus a max structure over eligible digrams.
/// Digrams that were already replaced are marked processed and ignored from
/// then on.
class DigramCounts {
 public:
  using Filter = std::function<bool(const Digram&)>;

  DigramCounts() = default;
  explicit DigramCounts(Filter eligible) : eligible_(std::move(eligible)) {}

  std::uint64_t get(const Digram& d) const;
  void add(const Digram& d, std::int64_t delta);
  void mark_processed(const Digram& d);
  bool processed(const Digram& d) const { return processed_.contains(d); }

  /// Eligible digram with the largest count; ties go to the smaller digram.
  std::optional<std::pair<Digram, std::uint64_t>> top() const;

  std::size_t size() const { return counts_.size(); }
  std::map<Digram, std::uint64_t> snapshot() const;

 private:
  struct Slot {
    std::uint64_t count = 0;
    std::uint64_t queued = 0;  // count under which the digram sits in queue_, 0 if absent
    bool eligible = true;
    bool dirty = false;
  };
  struct ByCount {
    bool operator()(const std::pair<std::uint64_t, Digram>& a,
                    const std::pair<std::uint64_t, Digram>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };

  void flush() const;

  // queue_ is brought up to date lazily from dirty_ when top() is asked.
  mutable std::unordered_map<Digram, Slot, DigramHash> counts_;
  mutable std::set<std::pair<std::uint64_t, Digram>, ByCount> queue_;
  mutable std::vector<Digram> dirty_;
  std::unordered_set<Digram, DigramHash> processed_;
  Filter eligible_;
};

CountTable count_incidence(const Hypergraph& graph);

/// Serial reference: sums per-node estimates min(c1, c2), or floor(c/2) for a
/// digram of two equal incidence types.
DigramCounts count_digrams(const CountTable& table, DigramCounts::Filter eligible = {});

/// OpenMP variant of count_digrams; produces identical counts.
DigramCounts count_digrams_parallel(const CountTable& table, DigramCounts::Filter eligible = {});

/// Per-node estimate for one digram.
std::uint64_t count_at(const CountTable& table, NodeId v, const Digram& d);

std::pair<Digram, std::uint64_t> most_frequent(const DigramCounts& counts);

/// 2n - (2 + rank1 + rank2): saving of n replacements minus the new rule's cost.
std::int64_t size_gain(std::uint32_t rank1, std::uint32_t rank2, std::uint64_t n);
std::int64_t size_gain(const Grammar& grammar, const Digram& d, std::uint64_t n);

/// Changes c(v, i) by delta and adjusts every affected digram so that counts
/// stay equal to a recount from scratch (processed digrams excepted).
void shift_incidence(CountTable& table, DigramCounts& counts, NodeId v, IncidenceType i, int delta);

void remove_edge_counts(CountTable& table, DigramCounts& counts, const Edge& e);
void add_edge_counts(CountTable& table, DigramCounts& counts, const Edge& e);
void update_counts(CountTable& table, DigramCounts& counts, const Edge& removed, const Edge* added);

}  // namespace itr
