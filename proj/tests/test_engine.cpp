#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "test_support.hpp"
#include "ufe/engine.hpp"

namespace ufe {
namespace {

TEST(DynArray, StartsAtCapacityFourAndDoubles) {
  DynArray<int> a;
  EXPECT_EQ(a.capacity(), 4u);
  for (int i = 0; i < 5; ++i) a.push_back(i);
  EXPECT_EQ(a.capacity(), 8u);
  EXPECT_EQ(a.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a[i], i);
}

TEST(DynArray, RelocationsStayWithinTwicePushes) {
  DynArray<std::size_t> a;
  for (std::size_t m = 1; m <= 100000; ++m) {
    a.push_back(m);
    ASSERT_LE(a.size(), a.capacity());
    ASSERT_LE(a.relocations(), 2 * m);
  }
}

TEST(DynArray, CopyAndMove) {
  DynArray<int> a;
  for (int i = 0; i < 10; ++i) a.push_back(i);
  DynArray<int> b = a;
  b.push_back(10);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_EQ(b.size(), 11u);
  DynArray<int> c = std::move(b);
  EXPECT_EQ(c.size(), 11u);
  b.push_back(1);  // moved-from stays usable
  EXPECT_EQ(b.size(), 1u);
}

TEST(Engine, EmptyEngine) {
  Engine e(0);
  EXPECT_EQ(e.size(), 0u);
  EXPECT_EQ(e.snapshot(), ufe_init(0, UnionPolicy::by_size));
}

TEST(Engine, NewEngine) {
  Engine e(3);
  EXPECT_FALSE(e.same_class(0, 1));
  EXPECT_EQ(std::vector<OptIdx>(e.assoc().begin(), e.assoc().end()),
            std::vector<OptIdx>(3));
  EXPECT_EQ(e.find(2), 2u);
  EXPECT_EQ(e.snapshot(), ufe_init(3, UnionPolicy::by_size));
}

TEST(Engine, AddUnion) {
  Engine e(2);
  EXPECT_TRUE(e.add_union(0, 1));
  EXPECT_EQ(UnionLog(e.log().begin(), e.log().end()), (UnionLog{{0, 1}}));
  EXPECT_FALSE(e.add_union(0, 1));
  EXPECT_FALSE(e.add_union(1, 0));
  EXPECT_EQ(e.log().size(), 1u);
  EXPECT_EQ(e.find(0), e.find(1));
}

TEST(Engine, SingletonJoiningPairIsAnnotated) {
  Engine e(3);
  e.add_union(0, 1);
  e.add_union(0, 2);  // {0,1} has size 2, {2} size 1
  EXPECT_EQ(e.assoc()[2], OptIdx{1});
  EXPECT_EQ(e.forest().parent_of(2), 0u);
}

TEST(Engine, SameClass) {
  Engine e(4);
  e.add_union(0, 1);
  EXPECT_TRUE(e.same_class(3, 3));
  EXPECT_FALSE(e.same_class(0, 2));
  EXPECT_TRUE(e.same_class(1, 0));
}

TEST(Engine, ExplainEdgeCases) {
  Engine e(3);
  EXPECT_FALSE(e.explain(0, 2).has_value());
  EXPECT_EQ(e.explain(1, 1), refl(1));
  EXPECT_FALSE(e.explain(0, 3).has_value());
  e.add_union(0, 2);
  const auto p = e.explain(2, 0);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(check(e.log().view(), *p), (Conclusion{2, 0}));
}

TEST(Engine, RangeErrors) {
  Engine e(2);
  EXPECT_THROW(e.add_union(0, 2), range_error);
  EXPECT_THROW(e.find(2), range_error);
  EXPECT_THROW(e.same_class(5, 0), range_error);
}

// Refinement: after every operation the engine matches the replayed
// functional state, its twin agrees, and explain agrees with explain_partial.
TEST(Engine, RefinesFunctionalState) {
  std::mt19937_64 rng(77);
  for (int run = 0; run < 40; ++run) {
    const std::size_t n = 1 + rng() % 24;
    Engine e(n);
    std::size_t effective = 0;
    for (int op = 0; op < 60; ++op) {
      const Elem a = rng() % n;
      const Elem b = rng() % n;
      switch (rng() % 3) {
        case 0:
          effective += e.add_union(a, b) ? 1 : 0;
          break;
        case 1:
          e.find(a);
          break;
        default:
          break;
      }
      const UfeState snap = e.snapshot();
      ASSERT_EQ(snap.unions().size(), effective);
      ASSERT_EQ(snap.forest(), e.forest());
      ASSERT_EQ(assoc_unions(snap),
                std::vector<OptIdx>(e.assoc().begin(), e.assoc().end()));
      ASSERT_NO_THROW(e.forest().check_invariants());
      ASSERT_EQ(partition_labels(n, [&](Elem x) { return e.find(x); }),
                partition_labels(n, [&](Elem x) { return e.forest().rep_of(x); }));
      const NaiveExplainer naive(snap);
      ASSERT_EQ(e.explain(a, b), naive.explain_partial(a, b));
    }
  }
}

}  // namespace
}  // namespace ufe
