#include "lcatch/reduction.hpp"

#include "lcatch/surface.hpp"

namespace lcatch {

std::string rule_name(RuleTag r) {
  switch (r) {
    case RuleTag::BetaV: return "beta_v";
    case RuleTag::ThrowProp: return "throw";
    case RuleTag::Catch1: return "catch_1";
    case RuleTag::Catch2: return "catch_2";
    case RuleTag::Catch3: return "catch_3";
    case RuleTag::LrecNil: return "lrec_nil";
    case RuleTag::LrecCons: return "lrec_cons";
  }
  return "?";
}

namespace {

std::optional<Term> try_rule(RuleTag rule, const Term& t) {
  switch (rule) {
    case RuleTag::Catch1:
      // catch a. throw a t  ->  catch a. t
      if (t.is(TermKind::Catch) && t.body().is(TermKind::Throw) && t.body().name() == t.name())
        return Term::catch_(t.name(), t.body().payload());
      return std::nullopt;
    case RuleTag::Catch2: {
      // catch a. throw b v  ->  throw b v   if a not in {b} u FCV(v)
      if (!t.is(TermKind::Catch) || !t.body().is(TermKind::Throw)) return std::nullopt;
      const Term& thr = t.body();
      if (thr.name() == t.name() || !is_value(thr.payload()) ||
          occurs_free_cont(thr.payload(), t.name()))
        return std::nullopt;
      return thr;
    }
    case RuleTag::Catch3:
      // catch a. v  ->  v   if a not in FCV(v)
      if (t.is(TermKind::Catch) && is_value(t.body()) && !occurs_free_cont(t.body(), t.name()))
        return t.body();
      return std::nullopt;
    case RuleTag::BetaV:
      if (t.is(TermKind::App) && t.fun().is(TermKind::Lam) && is_value(t.arg()))
        return subst(t.fun().body(), t.fun().name(), t.arg());
      return std::nullopt;
    case RuleTag::LrecNil:
    case RuleTag::LrecCons: {
      if (!t.is(TermKind::App)) return std::nullopt;
      Spine sp = spine_of(t);
      if (!sp.head.is(TermKind::Lrec) || sp.args.size() != 3) return std::nullopt;
      const Term& vr = sp.args[0];
      const Term& vs = sp.args[1];
      const Term& lst = sp.args[2];
      if (!is_value(vr) || !is_value(vs) || !is_value(lst)) return std::nullopt;
      if (rule == RuleTag::LrecNil) {
        if (lst.is(TermKind::Nil)) return vr;
        return std::nullopt;
      }
      Spine ls = spine_of(lst);
      if (!ls.head.is(TermKind::Cons) || ls.args.size() != 2) return std::nullopt;
      const Term& vh = ls.args[0];
      const Term& vt = ls.args[1];
      return Term::apps(vs, {vh, vt, Term::apps(Term::lrec(), {vr, vs, vt})});
    }
    case RuleTag::ThrowProp:
      // E[throw a t] -> throw a t   for E in {[] s, v [], throw b []}
      if (t.is(TermKind::App)) {
        if (t.fun().is(TermKind::Throw)) return t.fun();
        if (t.arg().is(TermKind::Throw) && is_value(t.fun())) return t.arg();
        return std::nullopt;
      }
      if (t.is(TermKind::Throw) && t.payload().is(TermKind::Throw)) return t.payload();
      return std::nullopt;
  }
  return std::nullopt;
}

constexpr RuleTag kMatchOrder[] = {RuleTag::Catch1,  RuleTag::Catch2,   RuleTag::Catch3,
                                   RuleTag::BetaV,   RuleTag::LrecNil,  RuleTag::LrecCons,
                                   RuleTag::ThrowProp};

std::vector<ReductionEvent> enumerate_rec(const Term& t, AstPath& path) {
  std::vector<ReductionEvent> out;
  if (auto c = contract(t)) out.push_back({c->rule, path, c->result});
  for (std::size_t i = 0; i < t.num_children(); ++i) {
    path.push_back(i);
    std::vector<ReductionEvent> sub = enumerate_rec(t.child(i), path);
    path.pop_back();
    for (ReductionEvent& e : sub) {
      e.result = t.with_child(i, std::move(e.result));
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::optional<ReductionEvent> cbv_rec(const Term& t, AstPath& path) {
  if (auto c = contract(t)) return ReductionEvent{c->rule, path, c->result};
  std::optional<std::size_t> next;
  switch (t.kind()) {
    case TermKind::App:
      if (!is_value(t.fun())) next = 0;
      else if (!is_value(t.arg())) next = 1;
      break;
    case TermKind::Throw:
      if (!is_value(t.payload())) next = 0;
      break;
    case TermKind::Catch: next = 0; break;
    default: break;
  }
  if (!next) return std::nullopt;
  path.push_back(*next);
  auto ev = cbv_rec(t.child(*next), path);
  path.pop_back();
  if (ev) ev->result = t.with_child(*next, std::move(ev->result));
  return ev;
}

}  // namespace

std::optional<Contraction> contract(const Term& t) {
  for (RuleTag r : kMatchOrder)
    if (auto res = try_rule(r, t)) return Contraction{r, std::move(*res)};
  return std::nullopt;
}

std::vector<RuleTag> matching_rules(const Term& t) {
  std::vector<RuleTag> out;
  for (RuleTag r : kMatchOrder)
    if (try_rule(r, t)) out.push_back(r);
  return out;
}

std::vector<ReductionEvent> enumerate_redexes(const Term& t) {
  AstPath path;
  return enumerate_rec(t, path);
}

std::optional<ReductionEvent> step_cbv(const Term& t) {
  AstPath path;
  return cbv_rec(t, path);
}

Outcome evaluate(const Term& t, std::int64_t fuel, bool keep_trace) {
  Outcome out{OutcomeKind::OutOfFuel, t, "", 0, {}, false};
  while (true) {
    if (is_value(out.term)) {
      out.kind = OutcomeKind::Value;
      return out;
    }
    if (out.term.is(TermKind::Throw) && is_value(out.term.payload())) {
      out.kind = OutcomeKind::UncaughtThrow;
      out.cont = out.term.name();
      return out;
    }
    if (out.steps >= fuel) {
      out.kind = OutcomeKind::OutOfFuel;
      return out;
    }
    auto ev = step_cbv(out.term);
    if (!ev) {
      out.kind = OutcomeKind::Stuck;
      return out;
    }
    out.term = ev->result;
    ++out.steps;
    if (keep_trace) {
      if (out.trace.size() < kTraceCap) out.trace.push_back(std::move(*ev));
      else out.trace_truncated = true;
    }
  }
}

std::vector<std::string> format_trace(const Outcome& out, bool sugar) {
  std::vector<std::string> lines;
  lines.reserve(out.trace.size() + 1);
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    const ReductionEvent& e = out.trace[i];
    lines.push_back("step " + std::to_string(i + 1) + ": [" + rule_name(e.rule) + "] " +
                    print_term(e.result, {sugar}));
  }
  if (out.trace_truncated)
    lines.push_back("... trace truncated after " + std::to_string(out.trace.size()) + " of " +
                    std::to_string(out.steps) + " steps");
  return lines;
}

}  // namespace lcatch
