#include "itr/elias_fano.hpp"

#include <bit>

#include "itr/error.hpp"

namespace itr {

unsigned EliasFano::width_for(std::size_t n, std::uint64_t universe) {
  if (n == 0 || universe / n == 0) return 0;
  return static_cast<unsigned>(std::bit_width(universe / n)) - 1;
}

std::size_t EliasFano::high_length(std::size_t n, std::uint64_t universe, unsigned width) {
  return n + static_cast<std::size_t>(universe >> width) + 1;
}

EliasFano::EliasFano(std::span<const std::uint64_t> values, std::uint64_t universe)
    : size_(values.size()), universe_(universe), low_width_(width_for(values.size(), universe)) {
  BitVector high(high_length(size_, universe_, low_width_));
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = values[i];
    if (v >= universe) throw Error(ErrorCode::out_of_bounds, "value outside Elias-Fano universe");
    if (v < previous) throw Error(ErrorCode::not_monotone, "Elias-Fano input is not monotone");
    previous = v;
    low_.append(v, low_width_);
    high.set(static_cast<std::size_t>(v >> low_width_) + i);
  }
  high_ = BitSequence(std::move(high));
}

std::uint64_t EliasFano::access(std::size_t i) const {
  if (i >= size_) throw Error(ErrorCode::out_of_bounds, "Elias-Fano index out of range");
  const std::uint64_t hi = high_.select1(i) - i;
  return (hi << low_width_) | low_.read(i * low_width_, low_width_);
}

std::size_t EliasFano::lower_bound(std::uint64_t v) const {
  if (size_ == 0 || v >= universe_) return size_;
  const std::uint64_t bucket = v >> low_width_;
  const std::uint64_t low = v & ((1ULL << low_width_) - 1);
  std::size_t begin = bucket == 0 ? 0 : high_.select0(bucket - 1) - (bucket - 1);
  const std::size_t end = high_.select0(bucket) - bucket;
  // Lows inside one bucket are sorted.
  std::size_t count = end - begin;
  while (count > 0) {
    const std::size_t step = count / 2;
    const std::size_t mid = begin + step;
    if (low_.read(mid * low_width_, low_width_) < low) {
      begin = mid + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  return begin;
}

std::pair<std::size_t, std::size_t> EliasFano::range_of_value(std::uint64_t v) const {
  return {lower_bound(v), v + 1 >= universe_ ? size_ : lower_bound(v + 1)};
}

void EliasFano::write(BitWriter& out) const {
  out.write_delta(size_);
  out.write_delta(universe_);
  out.align();
  out.write_bitvector(low_);
  out.write_bitvector(high_.bits());
  out.align();
}

EliasFano EliasFano::read(BitReader& in) {
  EliasFano ef;
  ef.size_ = static_cast<std::size_t>(in.read_delta());
  ef.universe_ = in.read_delta();
  ef.low_width_ = width_for(ef.size_, ef.universe_);
  if (ef.size_ > 0 && ef.universe_ == 0) throw Error(ErrorCode::corrupt, "empty Elias-Fano universe");
  in.align();
  const auto high_bits = high_length(ef.size_, ef.universe_, ef.low_width_);
  if (ef.size_ * ef.low_width_ + high_bits > in.remaining()) {
    throw Error(ErrorCode::corrupt, "truncated Elias-Fano sequence");
  }
  ef.low_ = in.read_bitvector(ef.size_ * ef.low_width_);
  ef.high_ = BitSequence(in.read_bitvector(high_bits));
  in.align();
  if (ef.high_.ones() != ef.size_) throw Error(ErrorCode::corrupt, "Elias-Fano upper bits inconsistent");
  return ef;
}

}  // namespace itr
