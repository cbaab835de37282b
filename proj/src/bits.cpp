#include "itr/bits.hpp"

#include <algorithm>
#include <bit>

#include "itr/error.hpp"

namespace itr {

namespace {

std::uint64_t low_mask(unsigned width) { return width >= 64 ? ~0ULL : (1ULL << width) - 1; }

/// Position (from the MSB) of the k-th set bit of w.
unsigned select_in_word(std::uint64_t w, std::size_t k) {
  for (std::size_t t = 0; t < k; ++t) w &= ~(1ULL << (63 - std::countl_zero(w)));
  return static_cast<unsigned>(std::countl_zero(w));
}

}  // namespace

BitVector::BitVector(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~0ULL : 0ULL), size_(size) {
  if (value && (size & 63) != 0) words_.back() &= ~low_mask(64 - (size & 63));
}

void BitVector::set(std::size_t i, bool value) {
  const auto mask = 1ULL << (63 - (i & 63));
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitVector::push_back(bool bit) {
  if ((size_ & 63) == 0) words_.push_back(0);
  if (bit) words_.back() |= 1ULL << (63 - (size_ & 63));
  ++size_;
}

void BitVector::append(std::uint64_t value, unsigned width) {
  if (width == 0) return;
  value &= low_mask(width);
  const unsigned used = size_ & 63;
  if (used == 0) {
    words_.push_back(value << (64 - width));
  } else {
    const unsigned room = 64 - used;
    if (width <= room) {
      words_.back() |= value << (room - width);
    } else {
      words_.back() |= value >> (width - room);
      words_.push_back(value << (64 - (width - room)));
    }
  }
  size_ += width;
}

std::uint64_t BitVector::read(std::size_t pos, unsigned width) const {
  if (width == 0) return 0;
  const std::size_t word = pos >> 6;
  const unsigned offset = pos & 63;
  std::uint64_t hi = words_[word] << offset;
  if (offset + width > 64) hi |= words_[word + 1] >> (64 - offset);
  return hi >> (64 - width);
}

void BitVector::append(const BitVector& other) {
  if ((size_ & 63) == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
    size_ += other.size_;
    return;
  }
  std::size_t pos = 0;
  while (pos + 64 <= other.size_) {
    append(other.read(pos, 64), 64);
    pos += 64;
  }
  if (pos < other.size_) append(other.read(pos, static_cast<unsigned>(other.size_ - pos)), static_cast<unsigned>(other.size_ - pos));
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) s += get(i) ? '1' : '0';
  return s;
}

BitSequence::BitSequence(BitVector bits) : bits_(std::move(bits)) {
  const auto& words = bits_.words();
  const std::size_t blocks = (words.size() + kWordsPerBlock - 1) / kWordsPerBlock;
  block_ranks_.resize(blocks + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (w % kWordsPerBlock == 0) block_ranks_[w / kWordsPerBlock] = total;
    total += static_cast<std::uint64_t>(std::popcount(words[w]));
  }
  block_ranks_[blocks] = total;
  ones_ = total;
}

std::size_t BitSequence::rank1(std::size_t i) const {
  if (i >= size()) return ones_;
  const auto& words = bits_.words();
  const std::size_t word = i >> 6;
  const std::size_t block = word / kWordsPerBlock;
  std::size_t r = block_ranks_[block];
  for (std::size_t w = block * kWordsPerBlock; w < word; ++w) r += static_cast<std::size_t>(std::popcount(words[w]));
  const unsigned offset = i & 63;
  if (offset != 0) r += static_cast<std::size_t>(std::popcount(words[word] >> (64 - offset)));
  return r;
}

std::size_t BitSequence::select1(std::size_t j) const {
  if (j >= ones_) throw Error(ErrorCode::out_of_bounds, "select1 beyond number of ones");
  // Last block whose preceding-ones count is <= j.
  auto it = std::upper_bound(block_ranks_.begin(), block_ranks_.end() - 1, j);
  std::size_t block = static_cast<std::size_t>(it - block_ranks_.begin()) - 1;
  std::size_t remaining = j - block_ranks_[block];
  const auto& words = bits_.words();
  for (std::size_t w = block * kWordsPerBlock; w < words.size(); ++w) {
    const auto c = static_cast<std::size_t>(std::popcount(words[w]));
    if (remaining < c) return w * 64 + select_in_word(words[w], remaining);
    remaining -= c;
  }
  throw Error(ErrorCode::corrupt, "select1 directory inconsistent");
}

std::size_t BitSequence::select0(std::size_t j) const {
  if (j >= size() - ones_) throw Error(ErrorCode::out_of_bounds, "select0 beyond number of zeros");
  const std::size_t blocks = block_ranks_.size() - 1;
  std::size_t lo = 0;
  std::size_t hi = blocks;  // invariant: zeros before block lo <= j
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const std::size_t zeros = mid * kWordsPerBlock * 64 - block_ranks_[mid];
    if (zeros <= j) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::size_t remaining = j - (lo * kWordsPerBlock * 64 - block_ranks_[lo]);
  const auto& words = bits_.words();
  for (std::size_t w = lo * kWordsPerBlock; w < words.size(); ++w) {
    const auto c = static_cast<std::size_t>(std::popcount(~words[w]));
    if (remaining < c) return w * 64 + select_in_word(~words[w], remaining);
    remaining -= c;
  }
  throw Error(ErrorCode::corrupt, "select0 directory inconsistent");
}

void BitWriter::write_delta(std::uint64_t value) {
  const std::uint64_t x = value + 1;
  if (x == 0) throw Error(ErrorCode::out_of_bounds, "delta code value too large");
  const auto n = static_cast<unsigned>(std::bit_width(x));
  const auto l = static_cast<unsigned>(std::bit_width(n)) - 1;
  bits_.append(0, l);
  bits_.append(n, l + 1);
  bits_.append(x, n - 1);
}

void BitWriter::write_bytes(std::span<const std::uint8_t> bytes) {
  for (const auto b : bytes) bits_.append(b, 8);
}

void BitWriter::align() {
  const auto rest = bits_.size() & 7;
  if (rest != 0) bits_.append(0, static_cast<unsigned>(8 - rest));
}

std::vector<std::uint8_t> BitWriter::bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8);
  const auto& words = bits_.words();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words[i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

BitReader::BitReader(const BitVector& bits) : vector_(&bits), limit_(bits.size()) {}

void BitReader::need(std::size_t count) const {
  if (count > limit_ - pos_) throw Error(ErrorCode::corrupt, "truncated bit stream");
}

bool BitReader::read_bit() {
  need(1);
  const std::size_t i = pos_++;
  if (vector_ != nullptr) return vector_->get(i);
  return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U;
}

std::uint64_t BitReader::read_bits(unsigned width) {
  need(width);
  if (vector_ != nullptr) {
    const auto v = vector_->read(pos_, width);
    pos_ += width;
    return v;
  }
  std::uint64_t v = 0;
  unsigned left = width;
  while (left > 0) {
    const unsigned offset = pos_ & 7;
    const unsigned take = std::min(left, 8 - offset);
    const unsigned byte = bytes_[pos_ >> 3];
    v = (v << take) | ((byte >> (8 - offset - take)) & ((1U << take) - 1));
    pos_ += take;
    left -= take;
  }
  return v;
}

std::uint64_t BitReader::read_delta() {
  unsigned zeros = 0;
  while (!read_bit()) {
    if (++zeros > 6) throw Error(ErrorCode::corrupt, "malformed delta code");
  }
  const auto n = static_cast<unsigned>((1ULL << zeros) | read_bits(zeros));
  if (n > 64) throw Error(ErrorCode::corrupt, "malformed delta code");
  return ((1ULL << (n - 1)) | read_bits(n - 1)) - 1;
}

std::string BitReader::read_bytes(std::size_t count) {
  need(count * 8);
  std::string out(count, '\0');
  for (auto& c : out) c = static_cast<char>(read_bits(8));
  return out;
}

BitVector BitReader::read_bitvector(std::size_t count) {
  need(count);
  BitVector out;
  std::size_t left = count;
  while (left >= 64) {
    out.append(read_bits(64), 64);
    left -= 64;
  }
  if (left > 0) out.append(read_bits(static_cast<unsigned>(left)), static_cast<unsigned>(left));
  return out;
}

void BitReader::align() {
  const auto rest = pos_ & 7;
  if (rest != 0) {
    need(8 - rest);
    pos_ += 8 - rest;
  }
}

DeltaStream delta_encode(std::span<const std::uint64_t> values) {
  BitWriter w;
  for (const auto v : values) w.write_delta(v);
  return DeltaStream{w.bits()};
}

std::vector<std::uint64_t> delta_decode(const DeltaStream& stream) {
  BitReader r(stream.bits);
  std::vector<std::uint64_t> out;
  while (!r.at_end()) out.push_back(r.read_delta());
  return out;
}

}  // namespace itr
