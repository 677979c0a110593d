#include "lcatch/typing.hpp"

#include <sstream>
#include <utility>

#include "lcatch/surface.hpp"

namespace lcatch {

TypingEnv& TypingEnv::bind(const std::string& x, Type ty) {
  gamma_.insert_or_assign(x, std::move(ty));
  return *this;
}

TypingEnv& TypingEnv::bind_cont(const std::string& alpha, Type ty) {
  if (ty.has_meta() || !is_arrow_free(ty))
    throw std::invalid_argument("continuation type for '" + alpha +
                                "' must be arrow-free: " + print_type(ty));
  delta_.insert_or_assign(alpha, std::move(ty));
  return *this;
}

std::string to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVar: return "UnboundVar";
    case TypeErrorKind::UnboundContVar: return "UnboundContVar";
    case TypeErrorKind::Mismatch: return "Mismatch";
    case TypeErrorKind::NonArrowFreeCatch: return "NonArrowFreeCatch";
    case TypeErrorKind::NonArrowFreeThrow: return "NonArrowFreeThrow";
    case TypeErrorKind::AmbiguousType: return "AmbiguousType";
    case TypeErrorKind::OccursCheck: return "OccursCheck";
  }
  return "?";
}

std::string path_to_string(const AstPath& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

TypeError::TypeError(TypeErrorKind kind, AstPath path, std::string detail,
                     std::optional<Type> expected, std::optional<Type> found)
    : std::runtime_error(to_string(kind) + " at " + path_to_string(path) + ": " + detail),
      kind_(kind),
      path_(std::move(path)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

bool has_arrow(const Type& ty) {
  switch (ty.kind()) {
    case TypeKind::Arrow: return true;
    case TypeKind::List: return has_arrow(ty.elem());
    default: return false;
  }
}

enum class BinderRole { Lambda, Catch, Throw };

struct BinderRecord {
  BinderRole role;
  AstPath path;
  Type type;
};

class Inference {
 public:
  Type fresh() {
    bindings_.emplace_back();
    return Type::meta(static_cast<int>(bindings_.size()) - 1);
  }

  Type resolve(Type t) const {
    while (t.is_meta() && bindings_[t.meta_id()]) t = *bindings_[t.meta_id()];
    return t;
  }

  Type zonk(const Type& t) const {
    Type r = resolve(t);
    switch (r.kind()) {
      case TypeKind::List: return Type::list(zonk(r.elem()));
      case TypeKind::Arrow: return Type::arrow(zonk(r.dom()), zonk(r.cod()));
      default: return r;
    }
  }

  // Unifies `expected` with `found`, reporting a mismatch at `path`.
  void unify(const Type& expected, const Type& found, const AstPath& path) {
    if (!unify_rec(expected, found)) {
      if (occurs_failure_)
        throw TypeError(TypeErrorKind::OccursCheck, path,
                        "cannot construct infinite type " + print_type(zonk(expected)) +
                            " ~ " + print_type(zonk(found)));
      Type e = zonk(expected), f = zonk(found);
      throw TypeError(TypeErrorKind::Mismatch, path,
                      "expected " + print_type(e) + ", found " + print_type(f), e, f);
    }
  }

  Derivation gen(const Term& t, std::vector<std::pair<std::string, Type>>& gamma,
                 std::vector<std::pair<std::string, Type>>& delta, AstPath& path) {
    Derivation d;
    switch (t.kind()) {
      case TermKind::Var: {
        auto hit = lookup(gamma, t.name());
        if (!hit) throw TypeError(TypeErrorKind::UnboundVar, path, "unbound variable '" + t.name() + "'");
        d.type = *hit;
        return d;
      }
      case TermKind::Unit: d.type = Type::unit(); return d;
      case TermKind::Nil: d.type = Type::list(fresh()); return d;
      case TermKind::Cons: {
        Type s = fresh();
        d.type = arrows({s, Type::list(s)}, Type::list(s));
        return d;
      }
      case TermKind::Lrec: {
        Type rho = fresh(), s = fresh();
        Type step = arrows({s, Type::list(s), rho}, rho);
        d.type = arrows({rho, step, Type::list(s)}, rho);
        return d;
      }
      case TermKind::Lam: {
        Type dom = t.annot() ? *t.annot() : fresh();
        binders_.push_back({BinderRole::Lambda, path, dom});
        gamma.emplace_back(t.name(), dom);
        path.push_back(0);
        Derivation body = gen(t.body(), gamma, delta, path);
        path.pop_back();
        gamma.pop_back();
        d.type = Type::arrow(dom, body.type);
        d.binder = dom;
        d.children.push_back(std::move(body));
        return d;
      }
      case TermKind::App: {
        path.push_back(0);
        Derivation f = gen(t.fun(), gamma, delta, path);
        path.back() = 1;
        Derivation a = gen(t.arg(), gamma, delta, path);
        path.pop_back();
        Type res = fresh();
        Type ft = resolve(f.type);
        if (ft.is_arrow()) {
          // Report mismatches against the argument position when the function
          // type is already known.
          path.push_back(1);
          unify(ft.dom(), a.type, path);
          path.pop_back();
          unify(res, ft.cod(), path);
        } else {
          path.push_back(0);
          unify(Type::arrow(a.type, res), f.type, path);
          path.pop_back();
        }
        d.type = res;
        d.children.push_back(std::move(f));
        d.children.push_back(std::move(a));
        return d;
      }
      case TermKind::Catch: {
        Type psi = fresh();
        binders_.push_back({BinderRole::Catch, path, psi});
        delta.emplace_back(t.name(), psi);
        path.push_back(0);
        Derivation body = gen(t.body(), gamma, delta, path);
        unify(psi, body.type, path);
        path.pop_back();
        delta.pop_back();
        d.type = psi;
        d.binder = psi;
        d.children.push_back(std::move(body));
        return d;
      }
      case TermKind::Throw: {
        auto hit = lookup(delta, t.name());
        if (!hit)
          throw TypeError(TypeErrorKind::UnboundContVar, path,
                          "unbound continuation variable '" + t.name() + "'");
        binders_.push_back({BinderRole::Throw, path, *hit});
        path.push_back(0);
        Derivation p = gen(t.payload(), gamma, delta, path);
        unify(*hit, p.type, path);
        path.pop_back();
        d.type = fresh();
        d.children.push_back(std::move(p));
        return d;
      }
    }
    return d;
  }

  // Post-solution checks on binder types, in pre-order of the binders.
  void check_binders(bool allow_ambiguous) const {
    for (const BinderRecord& b : binders_) {
      Type ty = zonk(b.type);
      if (b.role != BinderRole::Lambda && has_arrow(ty)) {
        auto kind = b.role == BinderRole::Catch ? TypeErrorKind::NonArrowFreeCatch
                                                : TypeErrorKind::NonArrowFreeThrow;
        throw TypeError(kind, b.path,
                        std::string(b.role == BinderRole::Catch ? "catch" : "throw") +
                            " at non-arrow-free type " + print_type(ty),
                        std::nullopt, ty);
      }
      if (ty.has_meta() && !allow_ambiguous)
        throw TypeError(TypeErrorKind::AmbiguousType, b.path,
                        "binder type " + print_type(ty) + " is not determined");
    }
  }

  // Replaces every metavariable with a solved type; leftovers (which occur only
  // in unconstrained constant instances) become unit.
  Derivation finish(const Derivation& d) const {
    Derivation out;
    out.type = ground(d.type);
    if (d.binder) out.binder = ground(*d.binder);
    for (const Derivation& c : d.children) out.children.push_back(finish(c));
    return out;
  }

 private:
  static std::optional<Type> lookup(const std::vector<std::pair<std::string, Type>>& env,
                                    const std::string& n) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n) return it->second;
    return std::nullopt;
  }

  Type ground(const Type& t) const {
    Type r = resolve(t);
    switch (r.kind()) {
      case TypeKind::Meta: return Type::unit();
      case TypeKind::List: return Type::list(ground(r.elem()));
      case TypeKind::Arrow: return Type::arrow(ground(r.dom()), ground(r.cod()));
      default: return r;
    }
  }

  bool occurs(int id, const Type& t) const {
    Type r = resolve(t);
    switch (r.kind()) {
      case TypeKind::Meta: return r.meta_id() == id;
      case TypeKind::List: return occurs(id, r.elem());
      case TypeKind::Arrow: return occurs(id, r.dom()) || occurs(id, r.cod());
      default: return false;
    }
  }

  bool unify_rec(const Type& a0, const Type& b0) {
    Type a = resolve(a0), b = resolve(b0);
    if (a.is_meta() && b.is_meta() && a.meta_id() == b.meta_id()) return true;
    if (a.is_meta() || b.is_meta()) {
      const Type& m = a.is_meta() ? a : b;
      const Type& other = a.is_meta() ? b : a;
      if (occurs(m.meta_id(), other)) {
        occurs_failure_ = true;
        return false;
      }
      bindings_[m.meta_id()] = other;
      return true;
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TypeKind::Unit: return true;
      case TypeKind::List: return unify_rec(a.elem(), b.elem());
      case TypeKind::Arrow: return unify_rec(a.dom(), b.dom()) && unify_rec(a.cod(), b.cod());
      default: return false;
    }
  }

  std::vector<std::optional<Type>> bindings_;
  std::vector<BinderRecord> binders_;
  bool occurs_failure_ = false;
};

Typing run(const TypingEnv& env, const Term& t, const std::optional<Type>& expected,
           bool allow_ambiguous = false) {
  Inference inf;
  std::vector<std::pair<std::string, Type>> gamma(env.gamma().begin(), env.gamma().end());
  std::vector<std::pair<std::string, Type>> delta(env.delta().begin(), env.delta().end());
  AstPath path;
  Derivation raw = inf.gen(t, gamma, delta, path);
  if (expected) inf.unify(*expected, raw.type, path);
  inf.check_binders(allow_ambiguous);
  Type result = inf.zonk(raw.type);
  if (allow_ambiguous) {
    Derivation d = inf.finish(raw);
    Type ty = d.type;
    return Typing{ty, std::move(d)};
  }
  if (result.has_meta())
    throw TypeError(TypeErrorKind::AmbiguousType, {},
                    "result type " + print_type(result) + " is not determined");
  return Typing{result, inf.finish(raw)};
}

}  // namespace

Type infer(const TypingEnv& env, const Term& t) { return run(env, t, std::nullopt).type; }

Typing infer_typing(const TypingEnv& env, const Term& t) { return run(env, t, std::nullopt); }

void check(const TypingEnv& env, const Term& t, const Type& ty) {
  if (ty.has_meta()) throw std::invalid_argument("check: target type contains metavariables");
  run(env, t, ty);
}

Typing derive(const TypingEnv& env, const Term& t, const std::optional<Type>& expected) {
  if (expected && expected->has_meta())
    throw std::invalid_argument("derive: target type contains metavariables");
  return run(env, t, expected, true);
}

std::optional<Type> try_infer(const TypingEnv& env, const Term& t) {
  try {
    return infer(env, t);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

std::optional<TypeError> check_error(const TypingEnv& env, const Term& t, const Type& ty) {
  try {
    check(env, t, ty);
    return std::nullopt;
  } catch (const TypeError& e) {
    return e;
  }
}

// ---------------------------------------------------------------------------
// Derivation replay
// ---------------------------------------------------------------------------

namespace {

using Scope = std::vector<std::pair<std::string, Type>>;

std::optional<Type> find(const Scope& s, const std::string& n) {
  for (auto it = s.rbegin(); it != s.rend(); ++it)
    if (it->first == n) return it->second;
  return std::nullopt;
}

std::optional<std::string> replay(Scope& gamma, Scope& delta, const Term& t, const Derivation& d,
                                  AstPath& path) {
  auto fail = [&](const std::string& why) -> std::optional<std::string> {
    return why + " at " + path_to_string(path) + " (" + print_term(t) + " : " +
           print_type(d.type) + ")";
  };
  if (d.children.size() != t.num_children()) return fail("derivation shape mismatch");
  if (d.type.has_meta()) return fail("unsolved type");
  switch (t.kind()) {
    case TermKind::Var: {
      auto ty = find(gamma, t.name());
      if (!ty || *ty != d.type) return fail("var rule");
      return std::nullopt;
    }
    case TermKind::Unit:
      if (!d.type.is_unit()) return fail("unit rule");
      return std::nullopt;
    case TermKind::Nil:
      if (!d.type.is_list()) return fail("nil rule");
      return std::nullopt;
    case TermKind::Cons: {
      const Type& ty = d.type;
      if (!ty.is_arrow() || !ty.cod().is_arrow()) return fail("cons rule");
      const Type& s = ty.dom();
      if (ty.cod().dom() != Type::list(s) || ty.cod().cod() != Type::list(s)) return fail("cons rule");
      return std::nullopt;
    }
    case TermKind::Lrec: {
      // rho -> (s -> [s] -> rho -> rho) -> [s] -> rho
      const Type& ty = d.type;
      if (!ty.is_arrow() || !ty.cod().is_arrow() || !ty.cod().cod().is_arrow())
        return fail("lrec rule");
      const Type& rho = ty.dom();
      const Type& step = ty.cod().dom();
      const Type& lst = ty.cod().cod().dom();
      const Type& res = ty.cod().cod().cod();
      if (!lst.is_list() || res != rho) return fail("lrec rule");
      const Type& s = lst.elem();
      if (step != arrows({s, Type::list(s), rho}, rho)) return fail("lrec rule");
      return std::nullopt;
    }
    case TermKind::Lam: {
      if (!d.binder || !d.type.is_arrow() || d.type.dom() != *d.binder) return fail("abs rule");
      if (t.annot() && *t.annot() != *d.binder) return fail("abs annotation");
      if (d.children[0].type != d.type.cod()) return fail("abs rule");
      gamma.emplace_back(t.name(), *d.binder);
      path.push_back(0);
      auto r = replay(gamma, delta, t.body(), d.children[0], path);
      path.pop_back();
      gamma.pop_back();
      return r;
    }
    case TermKind::App: {
      const Type& ft = d.children[0].type;
      if (!ft.is_arrow() || ft.dom() != d.children[1].type || ft.cod() != d.type)
        return fail("app rule");
      path.push_back(0);
      auto r = replay(gamma, delta, t.fun(), d.children[0], path);
      if (!r) {
        path.back() = 1;
        r = replay(gamma, delta, t.arg(), d.children[1], path);
      }
      path.pop_back();
      return r;
    }
    case TermKind::Catch: {
      if (!d.binder || *d.binder != d.type || !is_arrow_free(d.type)) return fail("catch rule");
      if (d.children[0].type != d.type) return fail("catch rule");
      delta.emplace_back(t.name(), d.type);
      path.push_back(0);
      auto r = replay(gamma, delta, t.body(), d.children[0], path);
      path.pop_back();
      delta.pop_back();
      return r;
    }
    case TermKind::Throw: {
      auto psi = find(delta, t.name());
      if (!psi || !is_arrow_free(*psi) || d.children[0].type != *psi) return fail("throw rule");
      path.push_back(0);
      auto r = replay(gamma, delta, t.payload(), d.children[0], path);
      path.pop_back();
      return r;
    }
  }
  return fail("unknown node");
}

}  // namespace

std::optional<std::string> replay_derivation(const TypingEnv& env, const Term& t,
                                             const Derivation& d) {
  Scope gamma(env.gamma().begin(), env.gamma().end());
  Scope delta(env.delta().begin(), env.delta().end());
  AstPath path;
  return replay(gamma, delta, t, d, path);
}

}  // namespace lcatch
