#include <algorithm>
#include <random>

#include "lcatch/metatheory.hpp"
#include "lcatch/typing.hpp"

namespace lcatch {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return hi <= lo ? lo : lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }

  // Index drawn proportionally to `weights`; every weight >= 0, sum > 0.
  std::size_t pick(const std::vector<int>& weights) {
    int total = 0;
    for (int w : weights) total += w;
    int r = below(total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (r < weights[i]) return i;
      r -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

// --- type shapes of the constants --------------------------------------------

// T = s -> [s] -> [s]
bool is_cons_type(const Type& t) {
  if (!t.is_arrow() || !t.cod().is_arrow()) return false;
  const Type& s = t.dom();
  return t.cod().dom() == Type::list(s) && t.cod().cod() == Type::list(s);
}

// T = [s] -> [s]; returns s
std::optional<Type> cons_partial_elem(const Type& t) {
  if (t.is_arrow() && t.dom().is_list() && t.cod() == t.dom()) return t.dom().elem();
  return std::nullopt;
}

Type step_type(const Type& elem, const Type& rho) {
  return arrows({elem, Type::list(elem), rho}, rho);
}

struct LrecShape {
  Type rho;
  Type elem;
};

// T = (s -> [s] -> r -> r) -> [s] -> r
std::optional<LrecShape> lrec1_shape(const Type& t) {
  if (!t.is_arrow() || !t.cod().is_arrow() || !t.cod().dom().is_list()) return std::nullopt;
  Type rho = t.cod().cod();
  Type elem = t.cod().dom().elem();
  if (t.dom() != step_type(elem, rho)) return std::nullopt;
  return LrecShape{rho, elem};
}

// T = r -> (s -> [s] -> r -> r) -> [s] -> r
std::optional<LrecShape> lrec0_shape(const Type& t) {
  if (!t.is_arrow()) return std::nullopt;
  auto inner = lrec1_shape(t.cod());
  if (!inner || inner->rho != t.dom()) return std::nullopt;
  return inner;
}

class TypedGen {
 public:
  TypedGen(std::uint64_t seed, int cont_depth) : rng_(seed), cont_depth_(cont_depth) {}

  void add_cont(const std::string& name, const Type& ty) { delta_.emplace_back(name, ty); }
  Rng& rng() { return rng_; }

  Type random_type(int depth) {
    int r = rng_.below(100);
    if (depth <= 0 || r < 35) return Type::unit();
    if (r < 60) return Type::list(random_arrow_free(depth - 1));
    return Type::arrow(random_type(depth - 1), random_type(depth - 1));
  }

  Type random_arrow_free(int depth) {
    if (depth <= 0 || rng_.chance(55)) return Type::unit();
    return Type::list(random_arrow_free(depth - 1));
  }

  Term gen(const Type& target, int budget) {
    if (budget <= min_size(target)) return minimal(target);

    std::vector<int> weights;
    std::vector<std::function<Term()>> prods;
    auto add = [&](int w, std::function<Term()> f) {
      weights.push_back(w);
      prods.push_back(std::move(f));
    };

    const int leaf = budget > 6 ? 0 : 2;
    std::vector<std::string> vars;
    for (const auto& [n, ty] : gamma_)
      if (ty == target) vars.push_back(n);
    if (!vars.empty()) add(leaf + 1, [&] { return Term::var(vars[rng_.below(static_cast<int>(vars.size()))]); });

    switch (target.kind()) {
      case TypeKind::Unit: add(leaf, [] { return Term::unit(); }); break;
      case TypeKind::List: {
        add(leaf, [] { return Term::nil(); });
        const Type& s = target.elem();
        if (budget >= 4 + min_size(s))
          add(5, [&] {
            int rest = budget - 3;
            Term h = gen(s, rng_.range(min_size(s), std::max(min_size(s), rest - 1)));
            Term t = gen(target, std::max(1, rest - static_cast<int>(h.size())));
            return Term::cons_of(h, t);
          });
        break;
      }
      case TypeKind::Arrow: {
        add(6, [&] { return lambda(target.dom(), target.cod(), budget - 1); });
        if (is_cons_type(target)) add(2, [] { return Term::cons(); });
        if (auto s = cons_partial_elem(target))
          add(2, [&, s] { return Term::app(Term::cons(), gen(*s, budget - 2)); });
        if (lrec0_shape(target)) add(1, [] { return Term::lrec(); });
        if (auto sh = lrec1_shape(target))
          add(2, [&, sh] { return Term::app(Term::lrec(), gen(sh->rho, budget - 2)); });
        if (target.dom().is_list() && budget >= 8 + min_size(target.cod()))
          add(2, [&] {
            const Type& rho = target.cod();
            const Type& s = target.dom().elem();
            int rest = budget - 3;
            Term r = gen(rho, rng_.range(min_size(rho), std::max(min_size(rho), rest - 5)));
            Term st = step_fn(s, rho, rest - static_cast<int>(r.size()));
            return Term::apps(Term::lrec(), {r, st});
          });
        break;
      }
      case TypeKind::Meta: break;
    }

    // beta redex (\x:s. body) arg
    if (budget >= 3 + min_size(target))
      add(5, [&] {
        Type s = small_type();
        int rest = budget - 2;
        int arg_budget = rng_.range(min_size(s), std::max(min_size(s), rest / 2));
        Term arg = gen(s, arg_budget);
        Term fn = lambda(s, target, std::max(1, rest - static_cast<int>(arg.size())));
        return Term::app(fn, arg);
      });
    // general application f a
    if (budget >= 4 + min_size(target))
      add(2, [&] {
        Type s = small_type();
        int rest = budget - 1;
        Type ft = Type::arrow(s, target);
        Term f = gen(ft, rng_.range(min_size(ft), std::max(min_size(ft), rest - min_size(s))));
        Term a = gen(s, std::max(1, rest - static_cast<int>(f.size())));
        return Term::app(f, a);
      });
    if (is_arrow_free(target) && catch_depth_ < cont_depth_)
      add(6, [&] {
        std::string alpha = "a" + std::to_string(cont_counter_++);
        ++catch_depth_;
        delta_.emplace_back(alpha, target);
        Term body = gen(target, budget - 1);
        delta_.pop_back();
        --catch_depth_;
        return Term::catch_(alpha, body);
      });
    if (!delta_.empty())
      add(4, [&] {
        const auto& [alpha, psi] = delta_[rng_.below(static_cast<int>(delta_.size()))];
        std::string a = alpha;
        Type p = psi;
        return Term::throw_(a, gen(p, budget - 1));
      });
    if (budget >= 10)
      add(3, [&] {
        Type s = rng_.chance(70) ? Type::unit() : random_type(1);
        int rest = budget - 4;
        Term lst = gen_list_value(s, rng_.range(1, std::max(1, rest / 3)));
        rest -= static_cast<int>(lst.size());
        Term r = gen(target, rng_.range(min_size(target), std::max(min_size(target), rest / 3)));
        rest -= static_cast<int>(r.size());
        Term st = step_fn(s, target, std::max(4, rest));
        return Term::apps(Term::lrec(), {r, st, lst});
      });

    return prods[rng_.pick(weights)]();
  }

  Term minimal(const Type& t) {
    for (auto it = gamma_.rbegin(); it != gamma_.rend(); ++it)
      if (it->second == t) return Term::var(it->first);
    switch (t.kind()) {
      case TypeKind::Unit: return Term::unit();
      case TypeKind::List: return Term::nil();
      case TypeKind::Arrow:
        if (is_cons_type(t)) return Term::cons();
        if (lrec0_shape(t)) return Term::lrec();
        return lambda(t.dom(), t.cod(), 1);
      case TypeKind::Meta: break;
    }
    return Term::unit();
  }

  int min_size(const Type& t) const {
    switch (t.kind()) {
      case TypeKind::Arrow:
        if (is_cons_type(t) || lrec0_shape(t)) return 1;
        return 1 + min_size(t.cod());
      default: return 1;
    }
  }

 private:
  Type small_type() {
    if (!gamma_.empty() && rng_.chance(25))
      return gamma_[rng_.below(static_cast<int>(gamma_.size()))].second;
    int r = rng_.below(100);
    if (r < 40) return Type::unit();
    if (r < 65) return Type::list(Type::unit());
    if (r < 72) return Type::list(Type::list(Type::unit()));
    if (r < 87) return Type::arrow(Type::unit(), Type::unit());
    return random_type(2);
  }

  Term lambda(const Type& dom, const Type& cod, int body_budget) {
    std::string x = "x" + std::to_string(var_counter_++);
    gamma_.emplace_back(x, dom);
    Term body = gen(cod, std::max(1, body_budget));
    gamma_.pop_back();
    return Term::lam(x, dom, body);
  }

  // \h:s. \t:[s]. \acc:rho. body
  Term step_fn(const Type& s, const Type& rho, int budget) {
    std::string h = "x" + std::to_string(var_counter_++);
    std::string t = "x" + std::to_string(var_counter_++);
    std::string acc = "x" + std::to_string(var_counter_++);
    gamma_.emplace_back(h, s);
    gamma_.emplace_back(t, Type::list(s));
    gamma_.emplace_back(acc, rho);
    Term body = gen(rho, std::max(1, budget - 3));
    gamma_.erase(gamma_.end() - 3, gamma_.end());
    return Term::lam(h, s, Term::lam(t, Type::list(s), Term::lam(acc, rho, body)));
  }

  Term gen_list_value(const Type& s, int len) {
    std::vector<Term> elems;
    for (int i = 0; i < len; ++i) elems.push_back(s.is_unit() ? Term::unit() : minimal(s));
    return Term::list_of(elems);
  }

  Rng rng_;
  int cont_depth_;
  int catch_depth_ = 0;
  int var_counter_ = 0;
  int cont_counter_ = 0;
  std::vector<std::pair<std::string, Type>> gamma_;
  std::vector<std::pair<std::string, Type>> delta_;
};

// Witness of `ty` whose inferred type is exactly `ty`.
Term determined_witness(TypedGen& g, const Type& ty) {
  if (ty.is_unit()) return Term::unit();
  return Term::app(Term::lam("x", ty, Term::var("x")), g.minimal(ty));
}

// --- untyped generation ------------------------------------------------------

class UntypedGen {
 public:
  explicit UntypedGen(std::uint64_t seed) : rng_(seed) {}

  Term gen(int budget) {
    if (budget <= 1) return atom();
    std::vector<int> w = {
        3,                     // lambda
        4,                     // application
        4,                     // catch
        4,                     // throw
        budget >= 4 ? 3 : 0,   // beta redex
        budget >= 6 ? 1 : 0,   // lrec redex
    };
    switch (rng_.pick(w)) {
      case 0: return Term::lam(term_name(), std::nullopt, gen(budget - 1));
      case 1: {
        int rest = budget - 1;
        Term f = gen(rng_.range(1, rest - 1));
        return Term::app(f, gen(std::max(1, rest - static_cast<int>(f.size()))));
      }
      case 2: return Term::catch_(cont_name(), gen(budget - 1));
      case 3: return Term::throw_(cont_name(), gen(budget - 1));
      case 4: {
        int rest = budget - 2;
        Term arg = value(rng_.range(1, std::max(1, rest / 2)));
        return Term::app(Term::lam(term_name(), std::nullopt,
                                   gen(std::max(1, rest - static_cast<int>(arg.size())))),
                         arg);
      }
      default: {
        int rest = budget - 4;
        Term lst = rng_.chance(50) ? Term::nil()
                                   : Term::cons_of(value(1), rng_.chance(50) ? Term::nil() : value(1));
        rest -= static_cast<int>(lst.size());
        Term r = value(std::max(1, rest / 2));
        Term s = value(std::max(1, rest - static_cast<int>(r.size())));
        return Term::apps(Term::lrec(), {r, s, lst});
      }
    }
  }

 private:
  std::string term_name() { return std::string(1, "xyz"[rng_.below(3)]); }
  std::string cont_name() { return std::string(1, "abc"[rng_.below(3)]); }

  Term atom() {
    switch (rng_.pick({5, 2, 2, 1, 1})) {
      case 0: return Term::var(term_name());
      case 1: return Term::unit();
      case 2: return Term::nil();
      case 3: return Term::cons();
      default: return Term::lrec();
    }
  }

  Term value(int budget) {
    if (budget <= 1) return atom();
    switch (rng_.pick({4, 1, budget >= 3 ? 1 : 0, 1, budget >= 3 ? 1 : 0})) {
      case 0: return Term::lam(term_name(), std::nullopt, gen(budget - 1));
      case 1: return Term::app(Term::cons(), value(budget - 2));
      case 2: {
        Term h = value(std::max(1, (budget - 3) / 2));
        return Term::cons_of(h, value(std::max(1, budget - 3 - static_cast<int>(h.size()))));
      }
      case 3: return Term::app(Term::lrec(), value(budget - 2));
      default: {
        Term r = value(std::max(1, (budget - 3) / 2));
        return Term::apps(Term::lrec(), {r, value(std::max(1, budget - 3 - static_cast<int>(r.size())))});
      }
    }
  }

  Rng rng_;
};

constexpr int kTypedRetries = 24;

}  // namespace

Type gen_type(std::uint64_t seed, int depth) {
  TypedGen g(seed, 0);
  return g.random_type(depth);
}

Term gen_term(const GenConfig& cfg) {
  const int max_size = std::max(1, cfg.max_size);
  if (!cfg.typed) {
    UntypedGen g(cfg.seed);
    for (int attempt = 0; attempt < kTypedRetries; ++attempt) {
      Term t = g.gen(max_size);
      if (static_cast<int>(t.size()) <= max_size) return t;
    }
    return Term::unit();
  }
  TypedGen g(cfg.seed, cfg.cont_depth);
  for (int attempt = 0; attempt < kTypedRetries; ++attempt) {
    Type target = cfg.target_type ? *cfg.target_type : g.random_type(2);
    Term t = g.gen(target, max_size);
    if (static_cast<int>(t.size()) > max_size) continue;
    if (auto ty = try_infer(TypingEnv{}, t); ty && (!cfg.target_type || *ty == *cfg.target_type))
      return t;
  }
  return determined_witness(g, cfg.target_type ? *cfg.target_type : Type::unit());
}

Term gen_term_under(std::uint64_t seed, int max_size,
                    const std::vector<std::pair<std::string, Type>>& delta, const Type& target) {
  TypedGen g(seed, 3);
  TypingEnv env;
  for (const auto& [alpha, ty] : delta) {
    g.add_cont(alpha, ty);
    env.bind_cont(alpha, ty);
  }
  for (int attempt = 0; attempt < kTypedRetries; ++attempt) {
    Term t = g.gen(target, std::max(1, max_size));
    if (static_cast<int>(t.size()) > max_size) continue;
    if (!check_error(env, t, target)) return t;
  }
  return determined_witness(g, target);
}

}  // namespace lcatch
