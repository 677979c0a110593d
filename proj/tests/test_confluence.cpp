#include <gtest/gtest.h>

#include "lcatch/confluence.hpp"
#include "lcatch/metatheory.hpp"
#include "lcatch/reduction.hpp"
#include "lcatch/surface.hpp"

using namespace lcatch;

namespace {

Term P(const char* s) { return parse_term(s); }

bool member(const std::vector<Term>& set, const Term& t) {
  for (const Term& s : set)
    if (alpha_eq(s, t)) return true;
  return false;
}

std::vector<Term> small_untyped(int count, std::uint64_t base) {
  std::vector<Term> out;
  for (int i = 0; i < count; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(base, i);
    cfg.typed = false;
    cfg.max_size = 10;
    out.push_back(gen_term(cfg));
  }
  return out;
}

}  // namespace

TEST(CompleteDevelopment, Examples) {
  EXPECT_TRUE(alpha_eq(complete_development(P("(\\x. x) ()")), P("()")));
  EXPECT_TRUE(alpha_eq(complete_development(P("catch a. throw a ()")), P("catch a. ()")));
  EXPECT_TRUE(alpha_eq(complete_development(P("throw a (throw b ())")), P("throw b ()")));
  EXPECT_TRUE(member(parallel_reducts(P("throw a (throw b ())")), P("throw b ()")));
  EXPECT_TRUE(alpha_eq(complete_development(P("lrec #1 (\\h. \\t. \\r. r) []")), P("#1")));
}

TEST(CompleteDevelopment, CompoundContextIsMaximal) {
  Term t = P("((\\x. x) (throw a ((\\y. y) ()))) z");
  EXPECT_TRUE(alpha_eq(complete_development(t), P("throw a ()")));
  Term u = P("throw a (cons (throw b ()) [])");
  EXPECT_TRUE(alpha_eq(complete_development(u), P("throw b ()")));
}

TEST(CompleteDevelopment, CatchClauses) {
  EXPECT_TRUE(alpha_eq(complete_development(P("catch a. throw b [()]")), P("throw b [()]")));
  EXPECT_TRUE(alpha_eq(complete_development(P("catch a. \\x. (\\y. y) x")), P("\\x. x")));
  EXPECT_TRUE(alpha_eq(complete_development(P("catch a. \\x. throw a x")), P("catch a. \\x. throw a x")));
  EXPECT_TRUE(alpha_eq(complete_development(P("lrec r s [()]")), P("s () [] (lrec r s [])")));
}

TEST(ParallelReducts, Examples) {
  auto a = parallel_reducts(P("()"));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_TRUE(alpha_eq(a[0], P("()")));

  auto b = parallel_reducts(P("(\\x. x) ()"));
  EXPECT_EQ(b.size(), 2u);
  EXPECT_TRUE(member(b, P("(\\x. x) ()")));
  EXPECT_TRUE(member(b, P("()")));
}

TEST(ParallelReducts, ThrowChain) {
  auto r = parallel_reducts(P("throw a1 (throw a2 (throw a3 ()))"));
  EXPECT_TRUE(member(r, P("throw a2 (throw a3 ())")));
  EXPECT_TRUE(member(r, P("throw a3 ()")));
  // a throw jumping over a context always keeps the inner label outermost
  EXPECT_FALSE(member(r, P("throw a1 ()")));
  EXPECT_TRUE(member(r, P("throw a1 (throw a3 ())")));
  EXPECT_EQ(r.size(), 4u);
}

TEST(ParallelReducts, BudgetExceeded) {
  Term big = P("(\\x. x) ((\\x. x) ((\\x. x) ((\\x. x) ())))");
  EXPECT_THROW(parallel_reducts(big, 8), BudgetExceeded);
  EXPECT_NO_THROW(parallel_reducts(big, big.size()));
}

TEST(IsParallelStep, Examples) {
  Term t = P("(\\x. x) ()");
  EXPECT_TRUE(is_parallel_step(t, t));
  EXPECT_TRUE(is_parallel_step(t, P("()")));
  EXPECT_FALSE(is_parallel_step(P("()"), t));
}

TEST(Join, Examples) {
  Term t = P("catch a. (\\x. x) (throw a ())");
  auto a = join(t, t);
  ASSERT_TRUE(a);
  EXPECT_TRUE(alpha_eq(*a, t));

  auto b = join(P("()"), P("(\\x. x) ()"));
  ASSERT_TRUE(b);
  EXPECT_TRUE(alpha_eq(*b, P("()")));

  auto c = join(P("catch a. ()"), P("catch a. throw a ()"));
  ASSERT_TRUE(c);
  EXPECT_TRUE(alpha_eq(*c, P("()")));

  EXPECT_FALSE(join(P("()"), P("[]")));
  EXPECT_FALSE(join(P("()"), P("(\\x. x x) (\\x. x x)"), 5));
}

TEST(Contexts, DecompositionsReassemble) {
  Term t = P("(\\x. x) (throw a ((throw b ()) z))");
  auto ds = throw_decompositions(t);
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].hole_subject.name(), "a");
  EXPECT_EQ(ds[1].hole_subject.name(), "b");
  for (const auto& d : ds) {
    EXPECT_TRUE(alpha_eq(plug(d.frames, d.hole_subject), t));
    for (const auto& f : d.frames)
      if (f.kind == ContextFrame::Kind::AppArg) EXPECT_TRUE(is_value(f.term));
  }
  EXPECT_EQ(throw_decompositions(P("throw a ()")).size(), 1u);
  EXPECT_TRUE(throw_decompositions(P("\\x. throw a ()")).empty());
}

TEST(ConfluenceProperties, Reflexive) {
  for (const Term& t : small_untyped(500, 51)) EXPECT_TRUE(is_parallel_step(t, t));
}

TEST(ConfluenceProperties, ValuesReduceToValues) {
  int values = 0;
  for (const Term& t : small_untyped(1500, 52)) {
    if (!is_value(t)) continue;
    ++values;
    for (const Term& r : parallel_reducts(t)) EXPECT_TRUE(is_value(r)) << print_term(r);
  }
  EXPECT_GT(values, 30);
}

TEST(ConfluenceProperties, FreeVariablesShrink) {
  for (const Term& t : small_untyped(800, 53)) {
    VarSets ft = free_vars(t);
    for (const Term& r : parallel_reducts(t)) {
      VarSets fr = free_vars(r);
      for (const auto& v : fr.term_vars) EXPECT_TRUE(ft.term_vars.count(v));
      for (const auto& a : fr.cont_vars) EXPECT_TRUE(ft.cont_vars.count(a));
    }
  }
}

TEST(ConfluenceProperties, CompleteDevelopmentIsAParallelReduct) {
  for (const Term& t : small_untyped(1000, 54))
    EXPECT_TRUE(member(parallel_reducts(t), complete_development(t))) << print_term(t);
}

TEST(ConfluenceProperties, DiamondWitnessedByCompleteDevelopment) {
  for (const Term& t : small_untyped(500, 55)) {
    Term m = complete_development(t);
    for (const Term& r : parallel_reducts(t))
      EXPECT_TRUE(is_parallel_step(r, m, 64)) << print_term(t) << " / " << print_term(r);
  }
}
