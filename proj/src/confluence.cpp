#include "lcatch/confluence.hpp"

#include <unordered_set>

namespace lcatch {

Term plug(const std::vector<ContextFrame>& frames, const Term& subject) {
  Term acc = subject;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    switch (it->kind) {
      case ContextFrame::Kind::AppFun: acc = Term::app(acc, it->term); break;
      case ContextFrame::Kind::AppArg: acc = Term::app(it->term, acc); break;
      case ContextFrame::Kind::Throw: acc = Term::throw_(it->cont, acc); break;
    }
  }
  return acc;
}

std::vector<CompoundContextView> throw_decompositions(const Term& t) {
  std::vector<CompoundContextView> out;
  std::vector<ContextFrame> frames;
  const Term* cur = &t;
  while (true) {
    if (cur->is(TermKind::Throw)) {
      out.push_back({frames, *cur});
      frames.push_back({ContextFrame::Kind::Throw, Term::unit(), cur->name()});
      cur = &cur->payload();
    } else if (cur->is(TermKind::App)) {
      // A value never contains a throw in evaluation position, so the hole
      // goes left unless the function part is already a value.
      if (!is_value(cur->fun())) {
        frames.push_back({ContextFrame::Kind::AppFun, cur->arg(), ""});
        cur = &cur->fun();
      } else {
        frames.push_back({ContextFrame::Kind::AppArg, cur->fun(), ""});
        cur = &cur->arg();
      }
    } else {
      break;
    }
  }
  return out;
}

namespace {

// The throw at the end of the largest nontrivial compound context above it.
const Term* deepest_inner_throw(const Term& t) {
  const Term* cur = &t;
  const Term* last = nullptr;
  while (true) {
    if (cur->is(TermKind::Throw)) {
      if (cur != &t) last = cur;
      cur = &cur->payload();
    } else if (cur->is(TermKind::App)) {
      cur = is_value(cur->fun()) ? &cur->arg() : &cur->fun();
    } else {
      return last;
    }
  }
}

struct LrecRedex {
  Term vr, vs;
  std::optional<std::pair<Term, Term>> cell;  // (vh, vt) for the cons case
};

std::optional<LrecRedex> match_lrec(const Term& t) {
  Spine sp = spine_of(t);
  if (!sp.head.is(TermKind::Lrec) || sp.args.size() != 3) return std::nullopt;
  if (!is_value(sp.args[0]) || !is_value(sp.args[1]) || !is_value(sp.args[2])) return std::nullopt;
  const Term& lst = sp.args[2];
  if (lst.is(TermKind::Nil)) return LrecRedex{sp.args[0], sp.args[1], std::nullopt};
  Spine ls = spine_of(lst);
  if (ls.head.is(TermKind::Cons) && ls.args.size() == 2)
    return LrecRedex{sp.args[0], sp.args[1], std::make_pair(ls.args[0], ls.args[1])};
  return std::nullopt;
}

}  // namespace

Term complete_development(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec: return t;
    case TermKind::Lam: return Term::lam(t.name(), t.annot(), complete_development(t.body()));
    case TermKind::Catch: {
      const std::string& alpha = t.name();
      const Term& b = t.body();
      if (b.is(TermKind::Throw) && b.name() == alpha)
        return Term::catch_(alpha, complete_development(b.payload()));
      if (b.is(TermKind::Throw) && is_value(b.payload()) && !occurs_free_cont(b.payload(), alpha))
        return Term::throw_(b.name(), complete_development(b.payload()));
      if (is_value(b) && !occurs_free_cont(b, alpha)) return complete_development(b);
      return Term::catch_(alpha, complete_development(b));
    }
    case TermKind::Throw:
    case TermKind::App: break;
  }
  if (const Term* thr = deepest_inner_throw(t))
    return Term::throw_(thr->name(), complete_development(thr->payload()));
  if (t.is(TermKind::Throw)) return Term::throw_(t.name(), complete_development(t.payload()));

  if (t.fun().is(TermKind::Lam) && is_value(t.arg()))
    return subst(complete_development(t.fun().body()), t.fun().name(),
                 complete_development(t.arg()));
  if (auto m = match_lrec(t)) {
    Term r = complete_development(m->vr);
    if (!m->cell) return r;
    Term s = complete_development(m->vs);
    Term h = complete_development(m->cell->first);
    Term tl = complete_development(m->cell->second);
    return Term::apps(s, {h, tl, Term::apps(Term::lrec(), {r, s, tl})});
  }
  return Term::app(complete_development(t.fun()), complete_development(t.arg()));
}

BudgetExceeded::BudgetExceeded(std::size_t size, std::size_t budget)
    : std::length_error("term of " + std::to_string(size) + " nodes exceeds node budget " +
                        std::to_string(budget)) {}

namespace {

class ReductSet {
 public:
  void add(Term t) {
    if (keys_.insert(alpha_key(t)).second) items_.push_back(std::move(t));
  }
  std::vector<Term> take() { return std::move(items_); }

 private:
  std::unordered_set<std::string> keys_;
  std::vector<Term> items_;
};

std::vector<Term> reducts(const Term& t) {
  ReductSet out;
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec: return {t};
    case TermKind::Lam:
      for (Term& b : reducts(t.body())) out.add(Term::lam(t.name(), t.annot(), std::move(b)));
      return out.take();
    case TermKind::Catch: {
      const std::string& alpha = t.name();
      const Term& b = t.body();
      std::vector<Term> rb = reducts(b);
      for (const Term& b2 : rb) out.add(Term::catch_(alpha, b2));
      if (b.is(TermKind::Throw) && b.name() == alpha)
        for (Term& p : reducts(b.payload())) out.add(Term::catch_(alpha, std::move(p)));
      if (b.is(TermKind::Throw) && b.name() != alpha && is_value(b.payload()) &&
          !occurs_free_cont(b.payload(), alpha))
        for (Term& p : reducts(b.payload())) out.add(Term::throw_(b.name(), std::move(p)));
      if (is_value(b) && !occurs_free_cont(b, alpha))
        for (const Term& b2 : rb) out.add(b2);
      return out.take();
    }
    case TermKind::Throw:
    case TermKind::App: break;
  }

  // E[throw a s] => throw a s' for every compound context, including the
  // empty one (which is the congruence rule for throw).
  for (const CompoundContextView& d : throw_decompositions(t))
    for (Term& p : reducts(d.hole_subject.payload()))
      out.add(Term::throw_(d.hole_subject.name(), std::move(p)));
  if (t.is(TermKind::Throw)) return out.take();

  std::vector<Term> rf = reducts(t.fun());
  std::vector<Term> ra = reducts(t.arg());
  for (const Term& f : rf)
    for (const Term& a : ra) out.add(Term::app(f, a));

  if (t.fun().is(TermKind::Lam) && is_value(t.arg())) {
    const std::string& x = t.fun().name();
    for (const Term& b : reducts(t.fun().body()))
      for (const Term& a : ra) out.add(subst(b, x, a));
  }
  if (auto m = match_lrec(t)) {
    std::vector<Term> rr = reducts(m->vr);
    if (!m->cell) {
      for (Term& r : rr) out.add(std::move(r));
    } else {
      std::vector<Term> rs = reducts(m->vs);
      std::vector<Term> rh = reducts(m->cell->first);
      std::vector<Term> rt = reducts(m->cell->second);
      for (const Term& r : rr)
        for (const Term& s : rs)
          for (const Term& h : rh)
            for (const Term& tl : rt)
              out.add(Term::apps(s, {h, tl, Term::apps(Term::lrec(), {r, s, tl})}));
    }
  }
  return out.take();
}

}  // namespace

std::vector<Term> parallel_reducts(const Term& t, std::size_t node_budget) {
  if (t.size() > node_budget) throw BudgetExceeded(t.size(), node_budget);
  return reducts(t);
}

bool is_parallel_step(const Term& s, const Term& t, std::size_t node_budget) {
  std::string key = alpha_key(t);
  for (const Term& r : parallel_reducts(s, node_budget))
    if (alpha_key(r) == key) return true;
  return false;
}

std::optional<Term> join(const Term& t1, const Term& t2, int max_rounds, std::size_t node_budget) {
  Term a = t1, b = t2;
  for (int round = 0;; ++round) {
    if (alpha_eq(a, b)) return a;
    if (round >= max_rounds || a.size() > node_budget || b.size() > node_budget)
      return std::nullopt;
    a = complete_development(a);
    b = complete_development(b);
  }
}

}  // namespace lcatch
