#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "ufe/certificates.hpp"
#include "ufe/engine.hpp"
#include "ufe/ufe_log.hpp"
#include "ufe/workbench.hpp"

namespace ufe {
namespace {

std::vector<Elem> parents_after(const UnionLog& us, std::size_t n) {
  Engine e(n);
  for (const auto& [a, b] : us) e.add_union(a, b);
  std::vector<Elem> out(n);
  for (Elem x = 0; x < n; ++x) out[x] = e.forest().parent_of(x);
  return out;
}

TEST(Generators, WideSmallest) {
  EXPECT_EQ(gen_wide(1).unions, (UnionLog{{0, 1}}));
}

TEST(Generators, BalancedSmallest) {
  EXPECT_EQ(gen_balanced(1).unions, (UnionLog{{0, 1}}));
}

TEST(Generators, ZeroExponentRejected) {
  EXPECT_THROW(gen_wide(0), std::invalid_argument);
  EXPECT_THROW(gen_balanced(0), std::invalid_argument);
}

TEST(Generators, WideIsAStarAtZero) {
  for (unsigned k = 1; k <= 4; ++k) {
    const std::size_t n = std::size_t{1} << k;
    EXPECT_EQ(parents_after(wide_unions(k), n), std::vector<Elem>(n, 0)) << k;
  }
}

TEST(Generators, BalancedGoldenShapes) {
  EXPECT_EQ(parents_after(balanced_unions(1), 2), (std::vector<Elem>{0, 0}));
  EXPECT_EQ(parents_after(balanced_unions(2), 4), (std::vector<Elem>{0, 0, 0, 2}));
  EXPECT_EQ(parents_after(balanced_unions(3), 8),
            (std::vector<Elem>{0, 0, 0, 2, 0, 4, 4, 6}));
}

TEST(Generators, EveryUnionIsEffective) {
  for (unsigned k = 1; k <= 12; ++k) {
    for (const auto& us : {wide_unions(k), balanced_unions(k)}) {
      Engine e(std::size_t{1} << k);
      for (const auto& [a, b] : us) ASSERT_TRUE(e.add_union(a, b));
      ASSERT_EQ(us.size(), (std::size_t{1} << k) - 1);
    }
  }
}

TEST(Generators, Deterministic) {
  const auto a = make_workload(Shape::balanced, 8, 300, 99);
  const auto b = make_workload(Shape::balanced, 8, 300, 99);
  EXPECT_EQ(a, b);
  std::ostringstream sa, sb;
  write_script(sa, a);
  write_script(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(make_workload(Shape::balanced, 8, 300, 100).queries, a.queries);
  for (const auto& [x, y] : a.queries) {
    EXPECT_LT(x, a.elements());
    EXPECT_LT(y, a.elements());
  }
}

TEST(Generators, WideEndToEndProofUsesEveryUnion) {
  for (unsigned k = 1; k <= 6; ++k) {
    const auto w = gen_wide(k);
    Engine e(w.elements());
    for (const auto& [a, b] : w.unions) e.add_union(a, b);
    const Elem last = w.elements() - 1;
    const auto p = e.explain(0, last);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(proof_stats(*p).assm_count, w.elements() - 1);
    EXPECT_EQ(*p, explain_naive(e.snapshot(), 0, last));
  }
}

TEST(Script, SmokeValidatesOneProof) {
  std::ostringstream out;
  const auto r = run_script("init 2\nunion 0 1\nexplain 0 1\n", out);
  EXPECT_EQ(r.validated_proofs, 1u);
  EXPECT_EQ(r.effective_unions, 1u);
  EXPECT_EQ(r.commands, 3u);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(out.str(), "(trans (trans (refl 0) (assm 0)) (refl 1))\n");
  EXPECT_EQ(check(UnionLog{{0, 1}}, parse_proof(out.str())), (Conclusion{0, 1}));
}

TEST(Script, NoneForUnrelated) {
  std::ostringstream out;
  const auto r = run_script("init 2\nexplain 0 1\n", out);
  EXPECT_EQ(out.str(), "none\n");
  EXPECT_EQ(r.none_results, 1u);
}

TEST(Script, CommentsAndBlankLines) {
  std::ostringstream out;
  const auto r = run_script("# header\n\ninit 3   # three\nunion 0 1\nunion 1 0\n", out);
  EXPECT_EQ(r.commands, 3u);
  EXPECT_EQ(r.effective_unions, 1u);
  EXPECT_EQ(r.redundant_unions, 1u);
}

TEST(Script, ErrorsCarryLineNumbers) {
  std::ostringstream out;
  const auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      run_script(text, out);
    } catch (const script_error& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("init 2\nunion 0 5\n"), 2u);
  EXPECT_EQ(line_of("union 0 1\n"), 1u);
  EXPECT_EQ(line_of("init 2\ninit 3\n"), 2u);
  EXPECT_EQ(line_of("init 2\n\nfrob 1 2\n"), 3u);
  EXPECT_EQ(line_of("init 2\nunion 0\n"), 2u);
  EXPECT_EQ(line_of("init -2\n"), 1u);
  EXPECT_EQ(line_of("init 2\nexplain 0 x\n"), 2u);
}

TEST(Script, GeneratedWorkloadRuns) {
  const auto w = make_workload(Shape::wide, 7, 40, 3);
  std::stringstream script;
  write_script(script, w);
  std::ostringstream out;
  const auto r = run_script(script, out);
  EXPECT_EQ(r.effective_unions, w.unions.size());
  EXPECT_EQ(r.validated_proofs, 40u);
  EXPECT_EQ(r.failures, 0u);
}

TEST(Bench, ProducesPositiveTimings) {
  const auto r = bench(Shape::wide, 10, 100, 42);
  EXPECT_GT(r.union_seconds, 0.0);
  EXPECT_GT(r.explain_seconds, 0.0);
  EXPECT_EQ(r.elements, 1024u);
  EXPECT_EQ(r.queries, 100u);
  const auto row = csv_row(r);
  EXPECT_EQ(row.rfind("wide,10,1024,", 0), 0u);
  EXPECT_NE(row.find(",100,"), std::string::npos);
}

TEST(Shape, ParseNames) {
  EXPECT_EQ(parse_shape("wide"), Shape::wide);
  EXPECT_EQ(parse_shape("balanced"), Shape::balanced);
  EXPECT_THROW(parse_shape("tall"), std::invalid_argument);
}

}  // namespace
}  // namespace ufe
