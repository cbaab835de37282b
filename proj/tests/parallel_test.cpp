#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "itr/digram.hpp"
#include "itr/query.hpp"
#include "itr/repair.hpp"

namespace itr {
namespace {

TEST(Parallel, DigramCountsMatchSerialReference) {
  std::mt19937_64 rng(40);
  for (int round = 0; round < 5; ++round) {
    const Hypergraph h = fixtures::random_graph(rng, 200 + rng() % 800, 20000, 1 + rng() % 8);
    const CountTable t = count_incidence(h);
    const auto serial = count_digrams(t);
    const auto parallel = count_digrams_parallel(t);
    ASSERT_EQ(serial.snapshot(), parallel.snapshot());
    ASSERT_EQ(serial.top(), parallel.top());
  }
}

TEST(Parallel, RePairIsIndependentOfCountingKernel) {
  std::mt19937_64 rng(41);
  const Hypergraph h = fixtures::random_graph(rng, 100, 3000, 4);
  RePairOptions serial;
  serial.parallel_count = false;
  RePairOptions parallel;
  parallel.parallel_count = true;
  const Grammar a = replace_digrams(fixtures::flat_grammar(h, 4), serial);
  const Grammar b = replace_digrams(fixtures::flat_grammar(h, 4), parallel);
  EXPECT_EQ(a.start.edges, b.start.edges);
  ASSERT_EQ(a.rules.size(), b.rules.size());
  for (std::size_t i = 0; i < a.rules.size(); ++i) EXPECT_EQ(a.rules[i].rhs.edges, b.rules[i].rhs.edges);
}

TEST(Parallel, BatchAnswersMatchSerialReference) {
  std::mt19937_64 rng(42);
  const Hypergraph h = fixtures::random_graph(rng, 300, 5000, 4);
  const Grammar g = prune(replace_digrams(fixtures::flat_grammar(h, 4)));
  const auto view = fixtures::load(g, fixtures::numeric_dictionary(4));
  std::vector<TriplePattern> patterns;
  for (int i = 0; i < 300; ++i) {
    TriplePattern q;
    if (i & 1) q.s = static_cast<NodeId>(rng() % 300);
    if (i & 2) q.p = static_cast<LabelId>(rng() % 4);
    if (i & 4) q.o = static_cast<NodeId>(rng() % 300);
    patterns.push_back(q);
  }
  EXPECT_EQ(answer_batch(view, patterns), answer_batch_parallel(view, patterns));
}

}  // namespace
}  // namespace itr
