#include "itr/k2tree.hpp"

#include <algorithm>
#include <limits>

#include "itr/error.hpp"

namespace itr {

void K2Tree::init_shape() {
  if (k_ < 2) throw Error(ErrorCode::format, "k2-tree arity must be >= 2");
  const std::uint64_t extent = std::max<std::uint64_t>({rows_, cols_, 1});
  height_ = 1;
  side_ = k_;
  while (side_ < extent) {
    if (side_ > std::numeric_limits<std::uint32_t>::max() / k_) {
      throw Error(ErrorCode::out_of_bounds, "k2-tree dimension too large");
    }
    side_ *= k_;
    ++height_;
  }
}

K2Tree::K2Tree(std::span<const Point> points, std::uint64_t rows, std::uint64_t cols, unsigned k)
    : k_(k), rows_(rows), cols_(cols) {
  init_shape();
  const std::uint64_t fan = static_cast<std::uint64_t>(k_) * k_;

  // Path key: base-k^2 digits (row digit * k + col digit), root level first.
  // Sorting keys puts every level's nonempty nodes in level order.
  std::vector<std::uint64_t> keys;
  keys.reserve(points.size());
  for (const auto& [r, c] : points) {
    if (r >= rows_ || c >= cols_) throw Error(ErrorCode::out_of_bounds, "k2-tree point out of bounds");
    std::uint64_t key = 0;
    std::uint64_t size = side_;
    for (unsigned level = 0; level < height_; ++level) {
      size /= k_;
      key = key * fan + ((r / size) % k_) * k_ + (c / size) % k_;
    }
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  BitVector internal;
  if (keys.empty()) {
    BitVector& root = height_ == 1 ? leaves_ : internal;
    root.append(0, static_cast<unsigned>(fan));
  }
  std::uint64_t below = 1;  // fan^(height - 1 - level)
  for (unsigned level = 1; level < height_; ++level) below *= fan;
  for (unsigned level = 0; level < height_ && !keys.empty(); ++level) {
    BitVector& target = level + 1 == height_ ? leaves_ : internal;
    std::size_t i = 0;
    while (i < keys.size()) {
      const std::uint64_t prefix = keys[i] / below / fan;
      const std::size_t base = target.size();
      target.append(0, static_cast<unsigned>(fan));
      while (i < keys.size() && keys[i] / below / fan == prefix) {
        target.set(base + (keys[i] / below) % fan);
        ++i;
      }
    }
    below /= fan;
  }
  internal_ = BitSequence(std::move(internal));
}

bool K2Tree::bit_at(std::size_t pos) const {
  return pos < internal_.size() ? internal_[pos] : leaves_.get(pos - internal_.size());
}

std::size_t K2Tree::children_of(std::size_t pos) const {
  return internal_.rank1(pos + 1) * static_cast<std::size_t>(k_) * k_;
}

bool K2Tree::cell(std::uint64_t row, std::uint64_t col) const {
  if (row >= rows_ || col >= cols_) throw Error(ErrorCode::out_of_bounds, "k2-tree cell out of bounds");
  std::size_t first = 0;
  std::uint64_t size = side_;
  for (unsigned level = 0; level < height_; ++level) {
    size /= k_;
    const std::size_t pos = first + ((row / size) % k_) * k_ + (col / size) % k_;
    if (!bit_at(pos)) return false;
    if (level + 1 == height_) return true;
    first = children_of(pos);
  }
  return false;
}

void K2Tree::collect_line(bool by_row, std::uint64_t line, std::vector<std::uint64_t>& out) const {
  struct Frame {
    std::size_t first;
    std::uint64_t offset;
    unsigned level;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  std::vector<std::uint64_t> sizes(height_ + 1, side_);
  for (unsigned level = 1; level <= height_; ++level) sizes[level] = sizes[level - 1] / k_;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const std::uint64_t size = sizes[f.level + 1];
    const std::uint64_t fixed = (line / size) % k_;
    const bool leaf_level = f.level + 1 == height_;
    for (unsigned step = 0; step < k_; ++step) {
      // Leaves are emitted in ascending order; inner children are pushed in
      // descending order so they pop ascending.
      const unsigned j = leaf_level ? step : k_ - 1 - step;
      const std::size_t pos = f.first + (by_row ? fixed * k_ + j : j * k_ + fixed);
      if (!bit_at(pos)) continue;
      const std::uint64_t offset = f.offset + j * size;
      if (leaf_level) {
        out.push_back(offset);
      } else {
        stack.push_back({children_of(pos), offset, f.level + 1});
      }
    }
  }
}

std::vector<std::uint64_t> K2Tree::row_ones(std::uint64_t row) const {
  if (row >= rows_) throw Error(ErrorCode::out_of_bounds, "k2-tree row out of bounds");
  std::vector<std::uint64_t> out;
  collect_line(true, row, out);
  return out;
}

std::vector<std::uint64_t> K2Tree::col_ones(std::uint64_t col) const {
  if (col >= cols_) throw Error(ErrorCode::out_of_bounds, "k2-tree column out of bounds");
  std::vector<std::uint64_t> out;
  collect_line(false, col, out);
  return out;
}

void K2Tree::write(BitWriter& out) const {
  out.write_delta(k_);
  out.write_delta(rows_);
  out.write_delta(cols_);
  out.write_delta(internal_.size());
  out.write_delta(leaves_.size());
  out.align();
  out.write_bitvector(internal_.bits());
  out.write_bitvector(leaves_);
  out.align();
}

K2Tree K2Tree::read(BitReader& in) {
  K2Tree t;
  t.k_ = static_cast<unsigned>(in.read_delta());
  t.rows_ = in.read_delta();
  t.cols_ = in.read_delta();
  const auto internal_bits = in.read_delta();
  const auto leaf_bits = in.read_delta();
  if (t.k_ < 2 || t.k_ > 16) throw Error(ErrorCode::corrupt, "bad k2-tree arity");
  t.init_shape();
  const std::uint64_t fan = static_cast<std::uint64_t>(t.k_) * t.k_;
  if (internal_bits % fan != 0 || leaf_bits % fan != 0 || (t.height_ == 1) != (internal_bits == 0)) {
    throw Error(ErrorCode::corrupt, "k2-tree bit lengths inconsistent");
  }
  in.align();
  if (internal_bits + leaf_bits > in.remaining()) throw Error(ErrorCode::corrupt, "truncated k2-tree");
  t.internal_ = BitSequence(in.read_bitvector(internal_bits));
  t.leaves_ = in.read_bitvector(leaf_bits);
  in.align();
  if (t.height_ > 1 && (t.internal_.ones() + 1) * fan != internal_bits + leaf_bits) {
    throw Error(ErrorCode::corrupt, "k2-tree structure inconsistent");
  }
  return t;
}

}  // namespace itr
