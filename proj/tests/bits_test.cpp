#include <gtest/gtest.h>

#include <random>

#include "itr/bits.hpp"
#include "itr/error.hpp"

namespace itr {
namespace {

std::string delta_bits(std::vector<std::uint64_t> xs) { return delta_encode(xs).bits.to_string(); }

TEST(Delta, ShiftedCodewords) {
  EXPECT_EQ(delta_bits({0}), "1");
  EXPECT_EQ(delta_bits({1}), "0100");
  EXPECT_EQ(delta_bits({2}), "0101");
  EXPECT_EQ(delta_bits({3}), "01100");
  EXPECT_EQ(delta_bits({0, 0, 1}), "110100");
}

TEST(Delta, RoundTrip) {
  const std::vector<std::uint64_t> xs{0, 1, 2, 7};
  EXPECT_EQ(delta_decode(delta_encode(xs)), xs);
  const std::vector<std::uint64_t> big{0, ~0ULL - 1, 1ULL << 40, 123456789};
  EXPECT_EQ(delta_decode(delta_encode(big)), big);
}

TEST(Delta, TruncatedStreamThrows) {
  DeltaStream s = delta_encode(std::vector<std::uint64_t>{1000});
  BitVector cut;
  for (std::size_t i = 0; i + 1 < s.bits.size(); ++i) cut.push_back(s.bits.get(i));
  try {
    delta_decode(DeltaStream{cut});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::corrupt);
  }
}

TEST(Delta, SelfDelimiting) {
  BitWriter w;
  w.write_delta(77);
  const std::size_t used = w.bit_size();
  w.write_bits(0b101, 3);
  BitReader r(w.bits());
  EXPECT_EQ(r.read_delta(), 77u);
  EXPECT_EQ(r.position(), used);
  EXPECT_EQ(r.read_bits(3), 0b101u);
}

TEST(BitWriter, MsbFirstBytes) {
  BitWriter w;
  w.write_bits(0b1011, 4);
  w.align();
  w.write_bits(0xFF, 8);
  EXPECT_EQ(w.bytes(), (std::vector<std::uint8_t>{0xB0, 0xFF}));
}

TEST(BitSequence, RankSelectDuality) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = rng() % 3000;
    const double density = (rng() % 100) / 100.0;
    std::bernoulli_distribution bit(density);
    BitVector v;
    std::vector<std::size_t> ones, zeros;
    for (std::size_t i = 0; i < n; ++i) {
      const bool b = bit(rng);
      v.push_back(b);
      (b ? ones : zeros).push_back(i);
    }
    const BitSequence s(v);
    ASSERT_EQ(s.ones(), ones.size());
    for (std::size_t j = 0; j < ones.size(); ++j) {
      ASSERT_EQ(s.select1(j), ones[j]);
      ASSERT_EQ(s.rank1(ones[j]), j);
    }
    for (std::size_t j = 0; j < zeros.size(); ++j) ASSERT_EQ(s.select0(j), zeros[j]);
    ASSERT_EQ(s.rank1(n), ones.size());
  }
}

}  // namespace
}  // namespace itr
