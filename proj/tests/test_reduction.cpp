#include <gtest/gtest.h>

#include "lcatch/metatheory.hpp"
#include "lcatch/reduction.hpp"
#include "lcatch/stdlib.hpp"
#include "lcatch/surface.hpp"

using namespace lcatch;

namespace {

Term P(const char* s) { return parse_term(s); }

Term library_term(const std::string& src) {
  return expand_with(parse_term(src), prelude_definitions());
}

}  // namespace

TEST(Contract, Examples) {
  auto a = contract(P("(\\x. x) ()"));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->rule, RuleTag::BetaV);
  EXPECT_TRUE(alpha_eq(a->result, Term::unit()));

  auto b = contract(P("lrec #1 (\\h. \\t. \\r. r) []"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->rule, RuleTag::LrecNil);
  EXPECT_TRUE(alpha_eq(b->result, encode_nat(1)));

  auto c = contract(P("(throw a ()) []"));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, RuleTag::ThrowProp);
  EXPECT_TRUE(alpha_eq(c->result, P("throw a ()")));

  EXPECT_FALSE(contract(P("catch a. throw b (\\x. throw a x)")));
}

TEST(Contract, EachRule) {
  struct Case {
    const char* src;
    RuleTag rule;
    const char* result;
  };
  const Case cases[] = {
      {"(\\x. x x) (\\y. y)", RuleTag::BetaV, "(\\y. y) (\\y. y)"},
      {"(\\x. x) (throw a ())", RuleTag::ThrowProp, "throw a ()"},
      {"throw b (throw a ())", RuleTag::ThrowProp, "throw a ()"},
      {"catch a. throw a ((\\x. x) ())", RuleTag::Catch1, "catch a. (\\x. x) ()"},
      {"catch a. throw b [()]", RuleTag::Catch2, "throw b [()]"},
      {"catch a. \\x. throw b x", RuleTag::Catch3, "\\x. throw b x"},
      {"lrec r s [()]", RuleTag::LrecCons, "s () [] (lrec r s [])"},
  };
  for (const Case& c : cases) {
    auto r = contract(P(c.src));
    ASSERT_TRUE(r) << c.src;
    EXPECT_EQ(r->rule, c.rule) << c.src;
    EXPECT_TRUE(alpha_eq(r->result, P(c.result))) << c.src << " gave " << print_term(r->result);
  }
}

TEST(Contract, SideConditions) {
  EXPECT_FALSE(contract(P("catch a. \\x. throw a x")));
  EXPECT_FALSE(contract(P("catch a. throw b (throw c ())")));
  EXPECT_FALSE(contract(P("lrec r s (cons ())")));
  EXPECT_FALSE(contract(P("(\\x. x) ((\\y. y) ())")));
  auto c = contract(P("cons (throw a ())"));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, RuleTag::ThrowProp);
}

TEST(EnumerateRedexes, Examples) {
  EXPECT_TRUE(enumerate_redexes(P("\\x. x")).empty());

  auto evs = enumerate_redexes(P("cons (throw a r) t"));
  ASSERT_EQ(evs.size(), 1u);
  EXPECT_EQ(evs[0].rule, RuleTag::ThrowProp);
  EXPECT_EQ(evs[0].path, (AstPath{0}));
  EXPECT_TRUE(alpha_eq(evs[0].result, P("(throw a r) t")));

  auto ev2 = enumerate_redexes(P("catch a. throw a ((\\x. x) ())"));
  ASSERT_EQ(ev2.size(), 2u);
  EXPECT_EQ(ev2[0].rule, RuleTag::Catch1);
  EXPECT_EQ(ev2[1].rule, RuleTag::BetaV);
  EXPECT_EQ(ev2[1].path, (AstPath{0, 0}));
}

TEST(EnumerateRedexes, DescendsUnderBinders) {
  auto evs = enumerate_redexes(P("\\z. catch a. (\\x. x) ()"));
  ASSERT_EQ(evs.size(), 1u);
  EXPECT_EQ(evs[0].path, (AstPath{0, 0}));
  EXPECT_TRUE(alpha_eq(evs[0].result, P("\\z. catch a. ()")));
}

TEST(StepCbv, Examples) {
  auto a = step_cbv(P("(\\x. x) ((\\y. y) ())"));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->rule, RuleTag::BetaV);
  EXPECT_EQ(a->path, (AstPath{1}));

  auto b = step_cbv(P("catch a. [()]"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->rule, RuleTag::Catch3);
  EXPECT_TRUE(alpha_eq(b->result, P("[()]")));

  EXPECT_FALSE(step_cbv(P("\\x. (\\y. y) ()")));
  EXPECT_FALSE(step_cbv(P("throw b ()")));
}

TEST(StepCbv, FunctionPositionFirst) {
  auto s = step_cbv(P("((\\x. x) (\\z. z)) ((\\y. y) ())"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->path, (AstPath{0}));
}

TEST(Evaluate, Examples) {
  Outcome a = evaluate(library_term("prodz [#4, #0, #9]"), 10000);
  ASSERT_EQ(a.kind, OutcomeKind::Value);
  EXPECT_EQ(decode_nat(a.term), 0);

  Outcome b = evaluate(library_term("pred #3"), 10000);
  ASSERT_EQ(b.kind, OutcomeKind::Value);
  EXPECT_EQ(decode_nat(b.term), 2);

  Outcome c = evaluate(P("throw b ()"), 10);
  ASSERT_EQ(c.kind, OutcomeKind::UncaughtThrow);
  EXPECT_EQ(c.cont, "b");
  EXPECT_TRUE(alpha_eq(c.payload(), Term::unit()));
  EXPECT_EQ(c.steps, 0);

  Outcome d = evaluate(P("(\\x. x x) (\\x. x x)"), 50);
  EXPECT_EQ(d.kind, OutcomeKind::OutOfFuel);
  EXPECT_EQ(d.steps, 50);
}

TEST(Evaluate, StuckOnIllTypedTerms) {
  Outcome o = evaluate(P("() ()"), 10);
  EXPECT_EQ(o.kind, OutcomeKind::Stuck);
}

TEST(Evaluate, TraceFormat) {
  Outcome o = evaluate(P("(\\x:1. x) ()"), 10, true);
  ASSERT_EQ(o.trace.size(), 1u);
  auto lines = format_trace(o, false);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "step 1: [beta_v] ()");

  Outcome p = evaluate(library_term("pred #2"), 1000, true);
  EXPECT_EQ(static_cast<std::int64_t>(p.trace.size()), p.steps);
  auto sugared = format_trace(p, true);
  EXPECT_EQ(sugared.back().substr(sugared.back().size() - 2), "#1");
}

TEST(Evaluate, TraceTruncation) {
  Outcome o = evaluate(P("(\\x. x x) (\\x. x x)"), static_cast<std::int64_t>(kTraceCap) + 5, true);
  EXPECT_EQ(o.trace.size(), kTraceCap);
  EXPECT_TRUE(o.trace_truncated);
  auto lines = format_trace(o, false);
  EXPECT_EQ(lines.size(), kTraceCap + 1);
}

TEST(ReductionProperties, RootOverlapsAreDisjoint) {
  for (int i = 0; i < 3000; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(41, i);
    cfg.typed = (i % 2 == 0);
    cfg.max_size = 14;
    Term t = gen_term(cfg);
    std::vector<Term> stack = {t};
    while (!stack.empty()) {
      Term s = stack.back();
      stack.pop_back();
      EXPECT_LE(matching_rules(s).size(), 1u) << print_term(s);
      for (std::size_t k = 0; k < s.num_children(); ++k) stack.push_back(s.child(k));
    }
  }
}

TEST(ReductionProperties, CbvStepIsAmongRedexes) {
  for (int i = 0; i < 2000; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(42, i);
    cfg.typed = false;
    cfg.max_size = 14;
    Term t = gen_term(cfg);
    auto s = step_cbv(t);
    if (!s) continue;
    bool found = false;
    for (const ReductionEvent& ev : enumerate_redexes(t))
      found = found || (ev.path == s->path && alpha_eq(ev.result, s->result));
    EXPECT_TRUE(found) << print_term(t);
  }
}

TEST(ReductionProperties, NormalFormsOfTypedTerms) {
  TypingEnv env;
  env.bind_cont("k0", Type::unit());
  for (int i = 0; i < 2000; ++i) {
    Term t = gen_term_under(case_seed(43, i), 14, {{"k0", Type::unit()}}, Type::unit());
    Outcome o = evaluate(t, kDefaultFuel);
    ASSERT_TRUE(o.kind == OutcomeKind::Value || o.kind == OutcomeKind::UncaughtThrow)
        << print_term(t);
    EXPECT_TRUE(enumerate_redexes(o.term).empty() || o.kind == OutcomeKind::Value);
    if (o.kind == OutcomeKind::UncaughtThrow) {
      EXPECT_EQ(o.cont, "k0");
      EXPECT_TRUE(is_value(o.payload()));
    }
  }
}

TEST(ReductionProperties, RuleNames) {
  std::vector<std::string> names;
  for (RuleTag r : kAllRules) names.push_back(rule_name(r));
  EXPECT_EQ(names, (std::vector<std::string>{"beta_v", "throw", "catch_1", "catch_2", "catch_3",
                                             "lrec_nil", "lrec_cons"}));
}
