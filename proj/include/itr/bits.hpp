#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace itr {

/// Growable bit array. Bit i lives in word i/64 counting from the most
/// significant bit, so the big-endian byte image is the MSB-first bit stream.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (63 - (i & 63))) & 1U; }
  void set(std::size_t i, bool value = true);
  void push_back(bool bit);
  /// Appends the low `width` bits of `value`, most significant first.
  void append(std::uint64_t value, unsigned width);
  /// Reads `width` bits starting at `pos` as an unsigned number.
  std::uint64_t read(std::size_t pos, unsigned width) const;
  void append(const BitVector& other);

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::string to_string() const;

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Immutable bit sequence with rank/select support.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(BitVector bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_.get(i); }
  const BitVector& bits() const { return bits_; }
  std::size_t ones() const { return ones_; }

  /// Number of ones in [0, i).
  std::size_t rank1(std::size_t i) const;
  std::size_t rank0(std::size_t i) const { return i - rank1(i); }
  /// Position of the j-th one (0-based). Requires j < ones().
  std::size_t select1(std::size_t j) const;
  /// Position of the j-th zero (0-based). Requires j < size() - ones().
  std::size_t select0(std::size_t j) const;

 private:
  static constexpr std::size_t kWordsPerBlock = 8;

  BitVector bits_;
  std::vector<std::uint64_t> block_ranks_;  // ones before each 512-bit block
  std::size_t ones_ = 0;
};

class BitWriter {
 public:
  void write_bit(bool bit) { bits_.push_back(bit); }
  void write_bits(std::uint64_t value, unsigned width) { bits_.append(value, width); }
  /// Elias delta code of value + 1, so zero is encodable.
  void write_delta(std::uint64_t value);
  void write_bytes(std::span<const std::uint8_t> bytes);
  void write_bitvector(const BitVector& bits) { bits_.append(bits); }
  void align();

  std::size_t bit_size() const { return bits_.size(); }
  const BitVector& bits() const { return bits_; }
  /// Byte image, zero-padded to a byte boundary.
  std::vector<std::uint8_t> bytes() const;

 private:
  BitVector bits_;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes), limit_(bytes.size() * 8) {}
  /// Reader over the first `bit_count` bits of a bit vector.
  explicit BitReader(const BitVector& bits);

  bool read_bit();
  std::uint64_t read_bits(unsigned width);
  std::uint64_t read_delta();
  std::string read_bytes(std::size_t count);
  BitVector read_bitvector(std::size_t count);
  void align();

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return limit_ - pos_; }
  bool at_end() const { return pos_ >= limit_; }

 private:
  void need(std::size_t count) const;

  std::span<const std::uint8_t> bytes_;
  const BitVector* vector_ = nullptr;
  std::size_t limit_ = 0;
  std::size_t pos_ = 0;
};

/// Concatenated Elias delta codewords with the +1 shift applied.
struct DeltaStream {
  BitVector bits;
};

DeltaStream delta_encode(std::span<const std::uint64_t> values);
/// Decodes until the stream is exhausted; a partial codeword throws.
std::vector<std::uint64_t> delta_decode(const DeltaStream& stream);

}  // namespace itr
