#include <gtest/gtest.h>

#include "lcatch/metatheory.hpp"
#include "lcatch/surface.hpp"
#include "lcatch/typing.hpp"

using namespace lcatch;

namespace {

bool contains_catch(const Term& t) {
  if (t.is(TermKind::Catch)) return true;
  for (std::size_t i = 0; i < t.num_children(); ++i)
    if (contains_catch(t.child(i))) return true;
  return false;
}

}  // namespace

TEST(Generator, TypedTermsInfer) {
  for (int i = 0; i < 3000; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(61, i);
    Term t = gen_term(cfg);
    EXPECT_TRUE(free_vars(t).term_vars.empty());
    EXPECT_TRUE(free_vars(t).cont_vars.empty());
    EXPECT_LE(t.size(), 20u);
    EXPECT_TRUE(try_infer(TypingEnv{}, t).has_value()) << print_term(t);
  }
}

TEST(Generator, TargetType) {
  for (int i = 0; i < 300; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(62, i);
    cfg.target_type = Type::unit();
    EXPECT_EQ(try_infer(TypingEnv{}, gen_term(cfg)), Type::unit());
    cfg.target_type = Type::arrow(Type::list(Type::unit()), Type::unit());
    EXPECT_EQ(try_infer(TypingEnv{}, gen_term(cfg)), cfg.target_type);
  }
}

TEST(Generator, Deterministic) {
  for (bool typed : {true, false}) {
    GenConfig cfg;
    cfg.seed = 12345;
    cfg.typed = typed;
    EXPECT_TRUE(alpha_eq(gen_term(cfg), gen_term(cfg)));
  }
  EXPECT_EQ(gen_type(3), gen_type(3));
}

TEST(Generator, UntypedSizeBound) {
  for (int i = 0; i < 1000; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(63, i);
    cfg.typed = false;
    cfg.max_size = 12;
    EXPECT_LE(gen_term(cfg).size(), 12u);
  }
}

TEST(Generator, RuleCoverage) {
  GenConfig cfg;
  cfg.seed = 7;
  std::set<RuleTag> seen = typed_rule_coverage(10000, cfg);
  for (RuleTag r : kAllRules) EXPECT_TRUE(seen.count(r)) << rule_name(r);
}

TEST(Properties, NamesAndAliases) {
  for (Property p : kAllProperties) EXPECT_EQ(parse_property(property_name(p)), p);
  EXPECT_EQ(parse_property("sr"), Property::SubjectReduction);
  EXPECT_EQ(parse_property("takahashi"), Property::TakahashiMpred);
  EXPECT_FALSE(parse_property("bogus").has_value());
  EXPECT_FALSE(property_uses_typed_terms(Property::Diamond));
  EXPECT_TRUE(property_uses_typed_terms(Property::FcvClosed));
}

TEST(Properties, SmallRunsPass) {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.max_size = 12;
  for (Property p : kAllProperties) {
    PropertyReport r = run_property(p, 150, cfg);
    EXPECT_EQ(r.cases_run, 150);
    EXPECT_TRUE(r.passed()) << report_lines(r).back();
  }
}

TEST(Properties, ZeroCases) {
  PropertyReport r = run_property(Property::SubjectReduction, 0, GenConfig{});
  EXPECT_EQ(report_lines(r), std::vector<std::string>{"PROP SubjectReduction CASES 0 FAILURES 0"});
}

TEST(Properties, DetectsBrokenTerms) {
  // ill-typed and stuck terms are reported, not accepted
  EXPECT_TRUE(check_property(Property::Progress, parse_term("() ()"), 0).has_value());
  EXPECT_TRUE(check_property(Property::StrongNormalization, parse_term("(\\x. x x) (\\x. x x)"), 0)
                  .has_value());
  EXPECT_FALSE(check_property(Property::Diamond, parse_term("(\\x. x x) (\\x. x x)"), 0).has_value());
}

TEST(Properties, ReportLinesListFailures) {
  PropertyReport r;
  r.property = Property::Diamond;
  r.cases_run = 4;
  r.failures.push_back({9, parse_term("()"), "detail"});
  auto lines = report_lines(r);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "PROP Diamond CASES 4 FAILURES 1");
  EXPECT_EQ(lines[1], "FAIL seed=9 term=()");
}

TEST(Minimize, Examples) {
  GenConfig cfg;
  cfg.seed = 99;
  cfg.max_size = 30;
  Term big = Term::unit();
  for (std::uint64_t s = 0; !contains_catch(big) || big.size() < 10; ++s) {
    cfg.seed = 99 + s;
    big = gen_term(cfg);
  }
  Term m = minimize(big, contains_catch);
  EXPECT_TRUE(contains_catch(m));
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(m.is(TermKind::Catch));

  Term any = minimize(big, [](const Term&) { return true; });
  EXPECT_TRUE(alpha_eq(any, Term::unit()));
}

TEST(Graph, ExplorerAgreesWithEvaluator) {
  for (int i = 0; i < 400; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(64, i);
    cfg.max_size = 12;
    Term t = gen_term(cfg);
    GraphExploration g = explore_reduction_graph(t);
    ASSERT_FALSE(g.cycle);
    ASSERT_FALSE(g.overflow);
    Outcome o = evaluate(t, kDefaultFuel);
    EXPECT_NE(o.kind, OutcomeKind::OutOfFuel);
    EXPECT_LE(static_cast<std::size_t>(o.steps), g.longest_path);
  }
}

TEST(Graph, DetectsCycles) {
  GraphExploration g = explore_reduction_graph(parse_term("(\\x. x x) (\\x. x x)"));
  EXPECT_TRUE(g.cycle);
  GraphExploration h = explore_reduction_graph(parse_term("(\\x. x) ((\\y. y) ())"));
  EXPECT_FALSE(h.cycle);
  EXPECT_EQ(h.longest_path, 2u);
  EXPECT_EQ(h.nodes, 3u);
}

TEST(Graph, Reachability) {
  Term t = parse_term("(\\x. x) ((\\y. y) ())");
  EXPECT_TRUE(unreachable_targets(t, {parse_term("()"), parse_term("(\\y. y) ()")}).empty());
  EXPECT_EQ(unreachable_targets(t, {parse_term("[]")}).size(), 1u);
}

TEST(Shapes, CanonicalValues) {
  Type u = Type::unit(), n = Type::list(Type::unit());
  EXPECT_TRUE(has_canonical_shape(parse_term("()"), u));
  EXPECT_TRUE(has_canonical_shape(parse_term("[(), ()]"), n));
  EXPECT_FALSE(has_canonical_shape(parse_term("cons ()"), n));
  EXPECT_TRUE(has_canonical_shape(parse_term("cons ()"), Type::arrow(n, n)));
  EXPECT_TRUE(has_canonical_shape(parse_term("lrec () (\\a. \\b. \\c. c)"), Type::arrow(n, u)));
  EXPECT_FALSE(has_canonical_shape(parse_term("[]"), u));
}
