#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "itr/bits.hpp"

namespace itr {

/// Elias-Fano encoding of a non-decreasing sequence over [0, universe).
class EliasFano {
 public:
  EliasFano() = default;
  EliasFano(std::span<const std::uint64_t> values, std::uint64_t universe);

  std::size_t size() const { return size_; }
  std::uint64_t universe() const { return universe_; }
  unsigned low_width() const { return low_width_; }

  std::uint64_t access(std::size_t i) const;
  /// First index whose value is >= v (size() if none).
  std::size_t lower_bound(std::uint64_t v) const;
  /// Half-open index interval holding exactly the value v.
  std::pair<std::size_t, std::size_t> range_of_value(std::uint64_t v) const;

  std::size_t size_in_bits() const { return low_.size() + high_.size(); }

  void write(BitWriter& out) const;
  static EliasFano read(BitReader& in);

  friend bool operator==(const EliasFano& a, const EliasFano& b) {
    return a.size_ == b.size_ && a.universe_ == b.universe_ && a.low_ == b.low_ && a.high_.bits() == b.high_.bits();
  }

 private:
  static unsigned width_for(std::size_t n, std::uint64_t universe);
  static std::size_t high_length(std::size_t n, std::uint64_t universe, unsigned width);

  std::size_t size_ = 0;
  std::uint64_t universe_ = 0;
  unsigned low_width_ = 0;
  BitVector low_;
  BitSequence high_;
};

}  // namespace itr
