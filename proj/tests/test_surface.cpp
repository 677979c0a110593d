#include <gtest/gtest.h>

#include "lcatch/metatheory.hpp"
#include "lcatch/stdlib.hpp"
#include "lcatch/surface.hpp"

using namespace lcatch;

TEST(Parse, Examples) {
  EXPECT_TRUE(alpha_eq(parse_term("\\x:1. x"), Term::lam("x", Type::unit(), Term::var("x"))));
  EXPECT_TRUE(alpha_eq(parse_term("catch a. throw a ()"),
                       Term::catch_("a", Term::throw_("a", Term::unit()))));
  Term t = parse_term("lrec r s t u");
  EXPECT_TRUE(alpha_eq(t, Term::apps(Term::lrec(), {Term::var("r"), Term::var("s"), Term::var("t"),
                                                   Term::var("u")})));
  EXPECT_TRUE(alpha_eq(parse_term("[(), ()]"),
                       Term::cons_of(Term::unit(), Term::cons_of(Term::unit(), Term::nil()))));
}

TEST(Parse, PrefixFormsExtendMaximally) {
  Term t = parse_term("\\x. x x");
  ASSERT_TRUE(t.is(TermKind::Lam));
  EXPECT_TRUE(t.body().is(TermKind::App));
  Term c = parse_term("catch a. throw a () ()");
  ASSERT_TRUE(c.body().is(TermKind::Throw));
  EXPECT_TRUE(c.body().payload().is(TermKind::App));
  EXPECT_THROW(parse_term("f \\x. x"), ParseError);
  EXPECT_TRUE(parse_term("f (\\x. x)").arg().is(TermKind::Lam));
}

TEST(Parse, NumeralsAndTypes) {
  EXPECT_TRUE(alpha_eq(parse_term("#0"), Term::nil()));
  EXPECT_TRUE(alpha_eq(parse_term("#3"), encode_nat(3)));
  EXPECT_EQ(parse_type("1 -> [1] -> 1"),
            Type::arrow(Type::unit(), Type::arrow(Type::list(Type::unit()), Type::unit())));
  EXPECT_EQ(parse_type("(1 -> 1) -> 1"),
            Type::arrow(Type::arrow(Type::unit(), Type::unit()), Type::unit()));
  EXPECT_EQ(parse_type("[[1]]"), Type::list(Type::list(Type::unit())));
}

TEST(Parse, Ascription) {
  Term t = parse_term("([] : [1])");
  ASSERT_TRUE(t.is(TermKind::App));
  ASSERT_TRUE(t.fun().is(TermKind::Lam));
  EXPECT_EQ(*t.fun().annot(), Type::list(Type::unit()));
  EXPECT_TRUE(t.arg().is(TermKind::Nil));
}

TEST(Parse, CommentsAndPrograms) {
  SourceProgram p = parse_program(
      "-- leading comment\n"
      "def one = #1; -- trailing\n"
      "def two = suc one;\n"
      "main = two;\n");
  ASSERT_EQ(p.defs.size(), 2u);
  EXPECT_EQ(p.defs[0].name, "one");
  ASSERT_TRUE(p.main.has_value());
  auto defs = expand_definitions(p.defs);
  EXPECT_TRUE(alpha_eq(defs[1].term, Term::app(Term::var("suc"), encode_nat(1))));
  EXPECT_TRUE(alpha_eq(expand_with(*p.main, defs), Term::app(Term::var("suc"), encode_nat(1))));
  EXPECT_TRUE(parse_program("").defs.empty());
  EXPECT_FALSE(parse_program("").main.has_value());
}

TEST(Parse, ExpansionRespectsBinders) {
  std::vector<Definition> defs = {{"k", Term::unit()}};
  Term t = expand_with(parse_term("\\k. k"), defs);
  EXPECT_TRUE(alpha_eq(t, parse_term("\\k. k")));
  // continuation names are a different namespace
  Term u = expand_with(parse_term("catch k. throw k k"), defs);
  EXPECT_TRUE(alpha_eq(u, parse_term("catch k. throw k ()")));
}

TEST(Parse, Errors) {
  try {
    parse_term("\\x. ");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GE(e.column(), 1);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_program("def a = ();\ndef b = (;\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 10);
  }
  EXPECT_THROW(parse_term("\xce\xbbx. x"), ParseError);
  EXPECT_THROW(parse_term("()  )"), ParseError);
  EXPECT_THROW(parse_term("throw () ()"), ParseError);
  EXPECT_THROW(parse_term(""), ParseError);
  EXPECT_THROW(parse_type("1 ->"), ParseError);
}

TEST(Parse, Deterministic) {
  for (const char* src : {"(\\x. x) ()", "catch a. [(), throw a ()]", "((("}) {
    std::string a, b;
    try {
      a = print_term(parse_term(src));
    } catch (const ParseError& e) {
      a = e.what();
    }
    try {
      b = print_term(parse_term(src));
    } catch (const ParseError& e) {
      b = e.what();
    }
    EXPECT_EQ(a, b);
  }
}

TEST(Print, Examples) {
  EXPECT_EQ(print_term(Term::app(Term::lam("x", std::nullopt, Term::var("x")), Term::unit())),
            "(\\x. x) ()");
  EXPECT_EQ(print_term(Term::cons_of(Term::unit(), Term::nil())), "[()]");
  EXPECT_EQ(print_term(Term::throw_("a", Term::var("x"))), "throw a x");
}

TEST(Print, Sugar) {
  EXPECT_EQ(print_term(encode_nat(3), PrintOptions{true}), "#3");
  EXPECT_EQ(print_term(encode_nat(0), PrintOptions{true}), "#0");
  EXPECT_EQ(print_term(encode_nat(2)), "[(), ()]");
  EXPECT_EQ(print_term(Term::list_of({encode_nat(1), encode_nat(0)}), PrintOptions{true}),
            "[#1, #0]");
  EXPECT_EQ(print_type(parse_type("(1 -> 1) -> [1 -> 1]")), "(1 -> 1) -> [1 -> 1]");
}

TEST(Print, ParenthesizesPrefixFormsInApplications) {
  Term t = Term::app(Term::catch_("a", Term::var("f")), Term::throw_("a", Term::unit()));
  EXPECT_EQ(print_term(t), "(catch a. f) (throw a ())");
  EXPECT_TRUE(alpha_eq(parse_term(print_term(t)), t));
}

TEST(RoundTrip, GeneratedTerms) {
  for (int i = 0; i < 2000; ++i) {
    GenConfig cfg;
    cfg.seed = case_seed(21, i);
    cfg.typed = (i % 2 == 0);
    cfg.max_size = 24;
    Term t = gen_term(cfg);
    for (bool sugar : {false, true}) {
      std::string s = print_term(t, PrintOptions{sugar});
      Term back = parse_term(s);
      ASSERT_TRUE(alpha_eq(back, t)) << s;
    }
  }
}
