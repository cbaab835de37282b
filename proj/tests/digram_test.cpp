#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "itr/digram.hpp"
#include "itr/error.hpp"
#include "oracle.hpp"

namespace itr {
namespace {

using fixtures::kF;
using fixtures::kG;

Digram dg(IncidenceType a, IncidenceType b) { return Digram::make(a, b); }

TEST(CountIncidence, Example) {
  const CountTable t = count_incidence(fixtures::example_graph());
  EXPECT_EQ(t.get(10, {kF, 0}), 2u);
  EXPECT_EQ(t.get(10, {kG, 0}), 1u);
  EXPECT_EQ(t.get(10, {kG, 1}), 1u);
  EXPECT_EQ(t.get(12, {kF, 1}), 1u);
  EXPECT_EQ(t.get(13, {kG, 0}), 0u);
}

TEST(CountIncidence, EmptyGraph) {
  const CountTable t = count_incidence(Hypergraph{});
  EXPECT_EQ(t.node_count(), 0u);
}

TEST(CountAt, ExampleNodeTen) {
  const CountTable t = count_incidence(fixtures::example_graph());
  EXPECT_EQ(count_at(t, 10, dg({kF, 0}, {kF, 0})), 1u);
  EXPECT_EQ(count_at(t, 10, dg({kF, 0}, {kG, 0})), 1u);
  EXPECT_EQ(count_at(t, 10, dg({kG, 0}, {kG, 0})), 0u);
}

TEST(CountDigrams, ExampleSharedTypeDigram) {
  const DigramCounts c = count_digrams(count_incidence(fixtures::example_graph()));
  EXPECT_EQ(c.get(dg({kG, 1}, {kF, 0})), 2u);
  const auto [top, n] = most_frequent(c);
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(top, dg({kG, 1}, {kF, 0}));
}

TEST(CountDigrams, SingleEdgeHasNoDigrams) {
  const DigramCounts c = count_digrams(count_incidence(Hypergraph{2, {{0, {0, 1}}}}));
  EXPECT_EQ(c.get(dg({0, 0}, {0, 1})), 0u);
  EXPECT_FALSE(c.top());
}

TEST(Digram, CanonicalOrder) {
  const Digram a = dg({kF, 0}, {kG, 1});
  EXPECT_EQ(a.first, (IncidenceType{kG, 1}));
  EXPECT_EQ(a.second, (IncidenceType{kF, 0}));
}

TEST(MostFrequent, TieBreaksOnCanonicalOrder) {
  DigramCounts c;
  const Digram d1 = dg({0, 0}, {1, 0});
  const Digram d2 = dg({0, 1}, {1, 0});
  c.add(d2, 3);
  c.add(d1, 3);
  EXPECT_EQ(most_frequent(c), std::make_pair(d1, std::uint64_t{3}));
}

TEST(MostFrequent, EmptyThrows) {
  try {
    most_frequent(DigramCounts{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_counts);
  }
}

TEST(SizeGain, CostModel) {
  EXPECT_EQ(size_gain(2, 2, 3), 0);
  EXPECT_EQ(size_gain(2, 2, 4), 2);
  EXPECT_LT(size_gain(2, 2, 0), 0);
}

TEST(UpdateCounts, DistinctTypesMinDrops) {
  // c(v,i1) = 2, c(v,i2) = 2: removing one i1 drops min from 2 to 1.
  Hypergraph h{5, {{0, {0, 1}}, {0, {0, 2}}, {1, {0, 3}}, {1, {0, 4}}}};
  CountTable t = count_incidence(h);
  DigramCounts c = count_digrams(t);
  const Digram d = dg({0, 0}, {1, 0});
  EXPECT_EQ(c.get(d), 2u);
  update_counts(t, c, h.edges[0], nullptr);
  EXPECT_EQ(c.get(d), 1u);
}

TEST(UpdateCounts, IsolatedNodeOnlyChangesTable) {
  Hypergraph h{4, {{0, {0, 1}}, {0, {2, 3}}}};
  CountTable t = count_incidence(h);
  DigramCounts c = count_digrams(t);
  const auto before = c.snapshot();
  update_counts(t, c, h.edges[1], nullptr);
  EXPECT_EQ(c.snapshot(), before);
  EXPECT_EQ(t.get(2, {0, 0}), 0u);
}

TEST(UpdateCounts, SameTypeMatchesRecount) {
  // c(v,i) = 3 with i = i: floor(3/2) = floor(2/2), so removing one keeps the count.
  Hypergraph h{4, {{0, {0, 1}}, {0, {0, 2}}, {0, {0, 3}}}};
  CountTable t = count_incidence(h);
  DigramCounts c = count_digrams(t);
  const Digram d = dg({0, 0}, {0, 0});
  EXPECT_EQ(c.get(d), 1u);
  update_counts(t, c, h.edges[2], nullptr);
  EXPECT_EQ(c.get(d), 1u);
  update_counts(t, c, h.edges[1], nullptr);
  EXPECT_EQ(c.get(d), 0u);
}

TEST(UpdateCounts, RandomRemovalsMatchRecount) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    Hypergraph h = fixtures::random_graph(rng, 6, 15, 3);
    CountTable t = count_incidence(h);
    DigramCounts c = count_digrams(t);
    while (!h.edges.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, h.edges.size() - 1);
      const std::size_t j = pick(rng);
      const Edge removed = h.edges[j];
      h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(j));
      update_counts(t, c, removed, nullptr);
      ASSERT_EQ(t, count_incidence(Hypergraph{6, h.edges}));
      ASSERT_EQ(c.snapshot(), count_digrams(t).snapshot());
    }
  }
}

TEST(CountDigrams, ParallelMatchesSerial) {
  std::mt19937_64 rng(9);
  const Hypergraph h = fixtures::random_graph(rng, 500, 5000, 6);
  const CountTable t = count_incidence(h);
  EXPECT_EQ(count_digrams(t).snapshot(), count_digrams_parallel(t).snapshot());
}

TEST(Oracle, Example) {
  EXPECT_EQ(oracle::brute_force_max_occurrences(fixtures::example_graph(), dg({kG, 1}, {kF, 0})), 2u);
  EXPECT_EQ(oracle::brute_force_max_occurrences(Hypergraph{2, {{0, {0, 1}}}}, dg({0, 0}, {0, 1})), 0u);
}

TEST(Oracle, SizeLimit) {
  Hypergraph h{2, {}};
  for (int j = 0; j < 30; ++j) h.edges.push_back({0, {0, 1}});
  try {
    oracle::brute_force_max_occurrences(h, dg({0, 0}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_limit);
  }
}

TEST(Oracle, EstimateIsUpperBound) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const Hypergraph h = fixtures::random_graph(rng, 5, 10, 3);
    const DigramCounts c = count_digrams(count_incidence(h));
    for (LabelId a = 0; a < 3; ++a)
      for (std::uint32_t m = 0; m < 2; ++m)
        for (LabelId b = 0; b < 3; ++b)
          for (std::uint32_t l = 0; l < 2; ++l) {
            const Digram d = dg({a, m}, {b, l});
            const auto exact = oracle::brute_force_max_occurrences(h, d);
            ASSERT_GE(c.get(d), exact);
            if (a != b || m == l) ASSERT_EQ(c.get(d), exact);
          }
  }
}

}  // namespace
}  // namespace itr
