#include "lcatch/metatheory.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "lcatch/confluence.hpp"
#include "lcatch/surface.hpp"
#include "lcatch/typing.hpp"

namespace lcatch {

namespace {

struct PropInfo {
  Property p;
  const char* name;
  const char* alias;
  bool typed;
};

constexpr PropInfo kProps[] = {
    {Property::SubjectReduction, "SubjectReduction", "sr", true},
    {Property::Progress, "Progress", "progress", true},
    {Property::Diamond, "Diamond", "diamond", false},
    {Property::RedSubsetPred, "RedSubsetPred", "red-pred", false},
    {Property::PredSubsetRedd, "PredSubsetRedd", "pred-redd", false},
    {Property::TakahashiMpred, "TakahashiMpred", "takahashi", false},
    {Property::StrongNormalization, "StrongNormalization", "sn", true},
    {Property::ValueShapes, "ValueShapes", "shapes", true},
    {Property::FcvClosed, "FcvClosed", "fcv", true},
};

const PropInfo& info(Property p) {
  for (const auto& i : kProps)
    if (i.p == p) return i;
  return kProps[0];
}

constexpr std::size_t kSnGraphMaxSize = 12;
constexpr std::size_t kTakahashiBudget = 64;
constexpr int kProgressSteps = 200;
constexpr int kFcvSteps = 200;
constexpr int kSnLargeTerms = 5;

// Fixed continuation context for FcvClosed cases.
const std::vector<std::pair<std::string, Type>>& fcv_delta() {
  static const std::vector<std::pair<std::string, Type>> d = {
      {"k0", Type::unit()},
      {"k1", Type::list(Type::unit())},
      {"k2", Type::list(Type::list(Type::unit()))},
  };
  return d;
}

TypingEnv fcv_env() {
  TypingEnv env;
  for (const auto& [a, ty] : fcv_delta()) env.bind_cont(a, ty);
  return env;
}

std::string show(const Term& t) { return print_term(t, PrintOptions{false}); }

bool contains_alpha(const std::vector<Term>& set, const Term& t) {
  std::string k = alpha_key(t);
  for (const Term& s : set)
    if (alpha_key(s) == k) return true;
  return false;
}

std::optional<std::string> check_sr(const Term& t) {
  TypingEnv env;
  Type ty = Type::unit();
  try {
    Typing typ = infer_typing(env, t);
    ty = typ.type;
    if (auto bad = replay_derivation(env, t, typ.derivation)) return "derivation rejected: " + *bad;
  } catch (const TypeError& e) {
    return std::string("generated term not typable: ") + e.what();
  }
  for (const ReductionEvent& ev : enumerate_redexes(t)) {
    try {
      Typing d = derive(env, ev.result, ty);
      if (auto bad = replay_derivation(env, ev.result, d.derivation))
        return "reduct derivation rejected: " + *bad;
    } catch (const TypeError& e) {
      return "reduct " + show(ev.result) + " via " + rule_name(ev.rule) + " at " +
             path_to_string(ev.path) + " lost type " + print_type(ty) + ": " + e.what();
    }
    if (auto rty = try_infer(env, ev.result); rty && *rty != ty)
      return "reduct " + show(ev.result) + " infers " + print_type(*rty) + " not " + print_type(ty);
  }
  return std::nullopt;
}

std::optional<std::string> check_progress(const Term& t) {
  if (!try_infer(TypingEnv{}, t)) return "generated term not typable";
  Term cur = t;
  for (int i = 0; i < kProgressSteps; ++i) {
    if (is_value(cur)) return std::nullopt;
    if (cur.is(TermKind::Throw) && is_value(cur.payload())) return std::nullopt;
    auto step = step_cbv(cur);
    if (!step) return "stuck term " + show(cur);
    bool found = false;
    for (const ReductionEvent& ev : enumerate_redexes(cur))
      if (ev.path == step->path && alpha_eq(ev.result, step->result)) found = true;
    if (!found) return "call-by-value step not among the redexes of " + show(cur);
    cur = step->result;
  }
  return std::nullopt;
}

std::optional<std::string> check_diamond(const Term& t) {
  std::vector<Term> pr = parallel_reducts(t, std::max(kDefaultNodeBudget, t.size()));
  std::size_t budget = 0;
  for (const Term& r : pr) budget = std::max(budget, r.size());
  std::vector<std::vector<Term>> next;
  std::vector<std::unordered_set<std::string>> keys;
  for (const Term& r : pr) {
    next.push_back(parallel_reducts(r, std::max(budget, kDefaultNodeBudget)));
    std::unordered_set<std::string> ks;
    for (const Term& s : next.back()) ks.insert(alpha_key(s));
    keys.push_back(std::move(ks));
  }
  for (std::size_t i = 0; i < pr.size(); ++i)
    for (std::size_t j = i + 1; j < pr.size(); ++j) {
      bool meet = false;
      for (const Term& s : next[i])
        if (keys[j].count(alpha_key(s))) {
          meet = true;
          break;
        }
      if (!meet) return "no common parallel reduct of " + show(pr[i]) + " and " + show(pr[j]);
    }
  return std::nullopt;
}

std::optional<std::string> check_red_pred(const Term& t) {
  std::vector<Term> pr = parallel_reducts(t, std::max(kDefaultNodeBudget, t.size()));
  for (const ReductionEvent& ev : enumerate_redexes(t))
    if (!contains_alpha(pr, ev.result))
      return "one-step reduct " + show(ev.result) + " is not a parallel reduct";
  return std::nullopt;
}

std::optional<std::string> check_pred_redd(const Term& t) {
  std::vector<Term> pr = parallel_reducts(t, std::max(kDefaultNodeBudget, t.size()));
  std::vector<Term> missing = unreachable_targets(t, pr);
  if (!missing.empty()) return "parallel reduct " + show(missing.front()) + " not reachable";
  return std::nullopt;
}

std::optional<std::string> check_takahashi(const Term& t) {
  Term m = complete_development(t);
  try {
    for (const Term& r : parallel_reducts(t, std::max(kTakahashiBudget, t.size())))
      if (!is_parallel_step(r, m, std::max(kTakahashiBudget, r.size())))
        return "complete development " + show(m) + " not a parallel reduct of " + show(r);
  } catch (const BudgetExceeded& e) {
    return std::string("enumeration budget: ") + e.what();
  }
  return std::nullopt;
}

std::optional<std::string> check_sn(const Term& t, bool* inconclusive) {
  Outcome out = evaluate(t, kDefaultFuel);
  if (out.kind == OutcomeKind::OutOfFuel) return "call-by-value run out of fuel";
  if (out.kind == OutcomeKind::Stuck) return "call-by-value run stuck at " + show(out.term);
  if (t.size() > kSnGraphMaxSize) return std::nullopt;
  GraphExploration g = explore_reduction_graph(t);
  if (g.cycle) return "reduction graph has a cycle";
  if (g.overflow) {
    if (inconclusive) *inconclusive = true;
    return std::nullopt;
  }
  if (static_cast<std::size_t>(out.steps) > g.longest_path)
    return "call-by-value run longer than the longest reduction sequence";
  return std::nullopt;
}

std::optional<std::string> check_shapes(const Term& t) {
  auto ty = try_infer(TypingEnv{}, t);
  if (!ty) return "generated term not typable";
  Outcome out = evaluate(t, kDefaultFuel);
  switch (out.kind) {
    case OutcomeKind::Value:
      if (!has_canonical_shape(out.term, *ty))
        return "value " + show(out.term) + " has no canonical shape for " + print_type(*ty);
      return std::nullopt;
    case OutcomeKind::UncaughtThrow: return "closed term threw to " + out.cont;
    case OutcomeKind::Stuck: return "stuck at " + show(out.term);
    case OutcomeKind::OutOfFuel: return "out of fuel";
  }
  return std::nullopt;
}

void arrow_free_values(const Term& t, const Derivation& d, std::vector<Term>& bad) {
  if (is_value(t) && is_arrow_free(d.type) && !free_vars(t).cont_vars.empty()) bad.push_back(t);
  for (std::size_t i = 0; i < t.num_children() && i < d.children.size(); ++i)
    arrow_free_values(t.child(i), d.children[i], bad);
}

std::optional<std::string> check_fcv(const Term& t) {
  TypingEnv env = fcv_env();
  Term cur = t;
  for (int i = 0; i < kFcvSteps; ++i) {
    Typing typ = Typing{Type::unit(), {}};
    try {
      typ = derive(env, cur, std::nullopt);
    } catch (const TypeError& e) {
      return "term " + show(cur) + " not typable: " + e.what();
    }
    std::vector<Term> bad;
    arrow_free_values(cur, typ.derivation, bad);
    if (!bad.empty()) return "value " + show(bad.front()) + " of arrow-free type has free continuations";
    auto step = step_cbv(cur);
    if (!step) break;
    cur = step->result;
  }
  return std::nullopt;
}

Term gen_for(Property p, std::uint64_t seed, const GenConfig& cfg) {
  if (p == Property::FcvClosed) {
    Type target = Type::unit();
    switch (seed % 3) {
      case 1: target = Type::list(Type::unit()); break;
      case 2: target = Type::list(Type::list(Type::unit())); break;
      default: break;
    }
    return gen_term_under(seed, cfg.max_size, fcv_delta(), target);
  }
  GenConfig c = cfg;
  c.seed = seed;
  c.typed = property_uses_typed_terms(p);
  if (!c.typed) c.max_size = std::min<int>(c.max_size, static_cast<int>(kDefaultNodeBudget) - 2);
  if (p == Property::StrongNormalization)
    c.max_size = std::min<int>(c.max_size, static_cast<int>(kSnGraphMaxSize));
  return gen_term(c);
}

bool still_well_formed(Property p, const Term& t) {
  if (p == Property::FcvClosed) return try_infer(fcv_env(), t).has_value();
  if (property_uses_typed_terms(p)) return try_infer(TypingEnv{}, t).has_value();
  return true;
}

}  // namespace

std::string property_name(Property p) { return info(p).name; }

std::optional<Property> parse_property(const std::string& s) {
  for (const auto& i : kProps)
    if (s == i.name || s == i.alias) return i.p;
  return std::nullopt;
}

bool property_uses_typed_terms(Property p) { return info(p).typed; }

std::uint64_t case_seed(std::uint64_t base, std::int64_t i) {
  return base * 1000003ULL + static_cast<std::uint64_t>(i);
}

std::optional<std::string> check_property(Property p, const Term& t, std::uint64_t,
                                          bool* inconclusive) {
  if (inconclusive) *inconclusive = false;
  try {
    switch (p) {
      case Property::SubjectReduction: return check_sr(t);
      case Property::Progress: return check_progress(t);
      case Property::Diamond: return check_diamond(t);
      case Property::RedSubsetPred: return check_red_pred(t);
      case Property::PredSubsetRedd: return check_pred_redd(t);
      case Property::TakahashiMpred: return check_takahashi(t);
      case Property::StrongNormalization: return check_sn(t, inconclusive);
      case Property::ValueShapes: return check_shapes(t);
      case Property::FcvClosed: return check_fcv(t);
    }
  } catch (const BudgetExceeded& e) {
    return std::string("enumeration budget: ") + e.what();
  }
  return std::nullopt;
}

PropertyReport run_property(Property p, std::int64_t cases, const GenConfig& cfg) {
  PropertyReport rep;
  rep.property = p;
  auto record = [&](std::uint64_t seed, const Term& t, const std::string& detail) {
    auto failing = [&](const Term& c) {
      return still_well_formed(p, c) && check_property(p, c, seed).has_value();
    };
    Term small = minimize(t, failing);
    auto d = check_property(p, small, seed);
    rep.failures.push_back({seed, small, d ? *d : detail});
  };
  for (std::int64_t i = 0; i < cases; ++i) {
    std::uint64_t seed = case_seed(cfg.seed, i);
    Term t = gen_for(p, seed, cfg);
    bool inconclusive = false;
    if (auto d = check_property(p, t, seed, &inconclusive)) record(seed, t, *d);
    if (inconclusive) ++rep.inconclusive;
    if (p == Property::StrongNormalization) {
      for (int k = 0; k < kSnLargeTerms; ++k) {
        GenConfig big = cfg;
        big.typed = true;
        big.seed = seed ^ (static_cast<std::uint64_t>(k + 1) << 56);
        big.max_size = std::max(cfg.max_size, static_cast<int>(kSnGraphMaxSize)) * 3;
        Term large = gen_term(big);
        if (auto d = check_property(p, large, big.seed)) record(big.seed, large, *d);
      }
    }
    ++rep.cases_run;
  }
  return rep;
}

std::vector<std::string> report_lines(const PropertyReport& r) {
  std::vector<std::string> out;
  out.push_back("PROP " + property_name(r.property) + " CASES " + std::to_string(r.cases_run) +
                " FAILURES " + std::to_string(r.failures.size()));
  for (const PropertyFailure& f : r.failures)
    out.push_back("FAIL seed=" + std::to_string(f.seed) + " term=" + show(f.term));
  if (r.inconclusive > 0) out.push_back("NOTE inconclusive=" + std::to_string(r.inconclusive));
  return out;
}

namespace {

void positions(const Term& t, AstPath& cur, std::vector<AstPath>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.num_children(); ++i) {
    cur.push_back(i);
    positions(t.child(i), cur, out);
    cur.pop_back();
  }
}

const Term& at(const Term& t, const AstPath& p, std::size_t i = 0) {
  return i == p.size() ? t : at(t.child(p[i]), p, i + 1);
}

Term replace_at(const Term& t, const AstPath& p, const Term& r, std::size_t i = 0) {
  if (i == p.size()) return r;
  return t.with_child(p[i], replace_at(t.child(p[i]), p, r, i + 1));
}

std::vector<Term> shrink_candidates(const Term& s) {
  std::vector<Term> c = {Term::unit(), Term::nil()};
  for (std::size_t i = 0; i < s.num_children(); ++i) c.push_back(s.child(i));
  if (s.is(TermKind::App)) {
    const Term& f = s.fun();
    if (f.is(TermKind::App)) c.push_back(Term::app(f.fun(), s.arg()));
  }
  std::stable_sort(c.begin(), c.end(), [](const Term& a, const Term& b) { return a.size() < b.size(); });
  return c;
}

}  // namespace

Term minimize(const Term& t, const std::function<bool(const Term&)>& failing) {
  Term cur = t;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<AstPath> ps;
    AstPath p;
    positions(cur, p, ps);
    for (const AstPath& path : ps) {
      const Term& s = at(cur, path);
      for (const Term& cand : shrink_candidates(s)) {
        if (cand.size() >= s.size()) continue;
        Term next = replace_at(cur, path, cand);
        if (failing(next)) {
          cur = next;
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return cur;
}

GraphExploration explore_reduction_graph(const Term& t, std::size_t cap) {
  GraphExploration g;
  struct Frame {
    std::size_t id;
    std::vector<ReductionEvent> succ;
    std::size_t next = 0;
    std::size_t best = 0;
  };
  std::unordered_map<std::string, std::size_t> index;
  std::vector<int> color;             // 1 on stack, 2 finished
  std::vector<std::size_t> longest;   // valid once finished
  std::vector<Frame> stack;

  auto open = [&](const Term& term) {
    std::size_t id = color.size();
    index.emplace(alpha_key(term), id);
    color.push_back(1);
    longest.push_back(0);
    Frame f{id, enumerate_redexes(term)};
    for (const auto& ev : f.succ) g.rules_seen.insert(ev.rule);
    stack.push_back(std::move(f));
  };
  open(t);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.succ.size()) {
      longest[f.id] = f.best;
      color[f.id] = 2;
      std::size_t len = f.best;
      stack.pop_back();
      if (!stack.empty()) stack.back().best = std::max(stack.back().best, len + 1);
      continue;
    }
    const Term& nxt = f.succ[f.next++].result;
    auto it = index.find(alpha_key(nxt));
    if (it != index.end()) {
      if (color[it->second] == 1) {
        g.cycle = true;
        break;
      }
      f.best = std::max(f.best, longest[it->second] + 1);
      continue;
    }
    if (color.size() >= cap) {
      g.overflow = true;
      break;
    }
    Term copy = nxt;
    open(copy);
  }
  g.nodes = color.size();
  g.longest_path = longest.empty() ? 0 : longest[0];
  return g;
}

std::vector<Term> unreachable_targets(const Term& t, const std::vector<Term>& targets,
                                      std::size_t cap) {
  std::unordered_map<std::string, std::size_t> want;
  for (std::size_t i = 0; i < targets.size(); ++i) want.emplace(alpha_key(targets[i]), i);
  std::vector<bool> found(targets.size(), false);
  std::size_t remaining = want.size();

  std::unordered_set<std::string> seen;
  std::deque<Term> queue;
  auto visit = [&](const Term& term) {
    std::string k = alpha_key(term);
    if (!seen.insert(k).second) return;
    if (auto it = want.find(k); it != want.end() && !found[it->second]) {
      found[it->second] = true;
      --remaining;
    }
    queue.push_back(term);
  };
  visit(t);
  while (!queue.empty() && remaining > 0 && seen.size() < cap) {
    Term cur = queue.front();
    queue.pop_front();
    for (const ReductionEvent& ev : enumerate_redexes(cur)) visit(ev.result);
  }
  std::vector<Term> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto it = want.find(alpha_key(targets[i]));
    if (!found[it->second]) out.push_back(targets[i]);
  }
  return out;
}

bool has_canonical_shape(const Term& v, const Type& ty) {
  if (!is_value(v)) return false;
  switch (ty.kind()) {
    case TypeKind::Unit: return v.is(TermKind::Unit);
    case TypeKind::List: {
      if (v.is(TermKind::Nil)) return true;
      Spine sp = spine_of(v);
      return sp.head.is(TermKind::Cons) && sp.args.size() == 2 &&
             has_canonical_shape(sp.args[0], ty.elem()) && has_canonical_shape(sp.args[1], ty);
    }
    case TypeKind::Arrow: {
      if (v.is(TermKind::Lam)) return true;
      Spine sp = spine_of(v);
      if (sp.head.is(TermKind::Cons)) return sp.args.size() <= 1;
      if (sp.head.is(TermKind::Lrec)) return sp.args.size() <= 2;
      return false;
    }
    case TypeKind::Meta: return false;
  }
  return false;
}

std::set<RuleTag> typed_rule_coverage(std::int64_t cases, const GenConfig& cfg) {
  std::set<RuleTag> seen;
  for (std::int64_t i = 0; i < cases; ++i) {
    GenConfig c = cfg;
    c.seed = case_seed(cfg.seed, i);
    c.typed = true;
    Term cur = gen_term(c);
    for (int k = 0; k < 2000; ++k) {
      for (const ReductionEvent& ev : enumerate_redexes(cur)) seen.insert(ev.rule);
      auto step = step_cbv(cur);
      if (!step) break;
      cur = step->result;
    }
  }
  return seen;
}

}  // namespace lcatch
