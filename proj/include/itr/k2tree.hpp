#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "itr/bits.hpp"

namespace itr {

/// Static k^2-tree over a rows x cols boolean matrix embedded in the padded
/// k^h x k^h square. Internal levels are stored level-order in T, the last
/// level in L; an all-zero subtree is a single 0 bit.
class K2Tree {
 public:
  using Point = std::pair<std::uint64_t, std::uint64_t>;  // (row, col)

  K2Tree() = default;
  K2Tree(std::span<const Point> points, std::uint64_t rows, std::uint64_t cols, unsigned k = 2);

  std::uint64_t rows() const { return rows_; }
  std::uint64_t cols() const { return cols_; }
  unsigned arity() const { return k_; }
  unsigned height() const { return height_; }
  std::size_t size_in_bits() const { return internal_.size() + leaves_.size(); }

  bool cell(std::uint64_t row, std::uint64_t col) const;
  /// Sorted column indices of the set cells in one row.
  std::vector<std::uint64_t> row_ones(std::uint64_t row) const;
  /// Sorted row indices of the set cells in one column.
  std::vector<std::uint64_t> col_ones(std::uint64_t col) const;

  void write(BitWriter& out) const;
  static K2Tree read(BitReader& in);

  friend bool operator==(const K2Tree& a, const K2Tree& b) {
    return a.k_ == b.k_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.internal_.bits() == b.internal_.bits() &&
           a.leaves_ == b.leaves_;
  }

 private:
  void init_shape();
  bool bit_at(std::size_t pos) const;
  std::size_t children_of(std::size_t pos) const;
  void collect_line(bool by_row, std::uint64_t line, std::vector<std::uint64_t>& out) const;

  unsigned k_ = 2;
  std::uint64_t rows_ = 0;
  std::uint64_t cols_ = 0;
  unsigned height_ = 1;
  std::uint64_t side_ = 2;
  BitSequence internal_;
  BitVector leaves_;
};

}  // namespace itr
