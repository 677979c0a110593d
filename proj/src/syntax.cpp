#include "lcatch/syntax.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace lcatch {

// ---------------------------------------------------------------------------
// Type
// ---------------------------------------------------------------------------

Type Type::unit() {
  static const Type u(std::make_shared<const Node>(Node{TypeKind::Unit, -1, nullptr, nullptr}));
  return u;
}

Type Type::list(Type elem) {
  return Type(std::make_shared<const Node>(
      Node{TypeKind::List, -1, std::make_shared<const Type>(std::move(elem)), nullptr}));
}

Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Arrow, -1,
                                                std::make_shared<const Type>(std::move(dom)),
                                                std::make_shared<const Type>(std::move(cod))}));
}

Type Type::meta(int id) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Meta, id, nullptr, nullptr}));
}

const Type& Type::elem() const {
  if (kind() != TypeKind::List) throw std::logic_error("Type::elem on non-list");
  return *node_->left;
}

const Type& Type::dom() const {
  if (kind() != TypeKind::Arrow) throw std::logic_error("Type::dom on non-arrow");
  return *node_->left;
}

const Type& Type::cod() const {
  if (kind() != TypeKind::Arrow) throw std::logic_error("Type::cod on non-arrow");
  return *node_->right;
}

int Type::meta_id() const {
  if (kind() != TypeKind::Meta) throw std::logic_error("Type::meta_id on non-meta");
  return node_->meta_id;
}

bool Type::has_meta() const {
  switch (kind()) {
    case TypeKind::Unit: return false;
    case TypeKind::Meta: return true;
    case TypeKind::List: return elem().has_meta();
    case TypeKind::Arrow: return dom().has_meta() || cod().has_meta();
  }
  return false;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Unit: return true;
    case TypeKind::Meta: return a.meta_id() == b.meta_id();
    case TypeKind::List: return a.elem() == b.elem();
    case TypeKind::Arrow: return a.dom() == b.dom() && a.cod() == b.cod();
  }
  return false;
}

bool is_arrow_free(const Type& ty) {
  switch (ty.kind()) {
    case TypeKind::Unit: return true;
    case TypeKind::List: return is_arrow_free(ty.elem());
    case TypeKind::Arrow: return false;
    case TypeKind::Meta: throw std::logic_error("is_arrow_free on unsolved metavariable");
  }
  return false;
}

Type arrows(std::initializer_list<Type> doms, Type result) {
  std::vector<Type> ds(doms);
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) result = Type::arrow(*it, result);
  return result;
}

// ---------------------------------------------------------------------------
// Term construction
// ---------------------------------------------------------------------------

Term Term::make(TermKind k, std::string name, std::optional<Type> annot, std::optional<Term> c0,
                std::optional<Term> c1) {
  Node n{k, std::move(name), std::move(annot), nullptr, nullptr, 1};
  if (c0) {
    n.size += c0->size();
    n.c0 = std::make_shared<const Term>(std::move(*c0));
  }
  if (c1) {
    n.size += c1->size();
    n.c1 = std::make_shared<const Term>(std::move(*c1));
  }
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::var(std::string name) {
  return make(TermKind::Var, std::move(name), std::nullopt, std::nullopt, std::nullopt);
}

Term Term::unit() {
  static const Term t = make(TermKind::Unit, "", std::nullopt, std::nullopt, std::nullopt);
  return t;
}

Term Term::nil() {
  static const Term t = make(TermKind::Nil, "", std::nullopt, std::nullopt, std::nullopt);
  return t;
}

Term Term::cons() {
  static const Term t = make(TermKind::Cons, "", std::nullopt, std::nullopt, std::nullopt);
  return t;
}

Term Term::lrec() {
  static const Term t = make(TermKind::Lrec, "", std::nullopt, std::nullopt, std::nullopt);
  return t;
}

Term Term::lam(std::string binder, std::optional<Type> annot, Term body) {
  return make(TermKind::Lam, std::move(binder), std::move(annot), std::move(body), std::nullopt);
}

Term Term::app(Term fun, Term arg) {
  return make(TermKind::App, "", std::nullopt, std::move(fun), std::move(arg));
}

Term Term::catch_(std::string cont, Term body) {
  return make(TermKind::Catch, std::move(cont), std::nullopt, std::move(body), std::nullopt);
}

Term Term::throw_(std::string cont, Term payload) {
  return make(TermKind::Throw, std::move(cont), std::nullopt, std::move(payload), std::nullopt);
}

Term Term::apps(Term head, std::initializer_list<Term> args) {
  for (const Term& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::apps(Term head, const std::vector<Term>& args) {
  for (const Term& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::cons_of(Term head, Term tail) { return apps(cons(), {std::move(head), std::move(tail)}); }

Term Term::list_of(const std::vector<Term>& elems) {
  Term acc = nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) acc = cons_of(*it, acc);
  return acc;
}

const Term& Term::fun() const {
  if (kind() != TermKind::App) throw std::logic_error("Term::fun on non-application");
  return *node_->c0;
}

const Term& Term::arg() const {
  if (kind() != TermKind::App) throw std::logic_error("Term::arg on non-application");
  return *node_->c1;
}

const Term& Term::body() const {
  if (kind() != TermKind::Lam && kind() != TermKind::Catch)
    throw std::logic_error("Term::body on non-binder");
  return *node_->c0;
}

const Term& Term::payload() const {
  if (kind() != TermKind::Throw) throw std::logic_error("Term::payload on non-throw");
  return *node_->c0;
}

std::size_t Term::num_children() const {
  switch (kind()) {
    case TermKind::App: return 2;
    case TermKind::Lam:
    case TermKind::Catch:
    case TermKind::Throw: return 1;
    default: return 0;
  }
}

const Term& Term::child(std::size_t i) const {
  if (i >= num_children()) throw std::out_of_range("Term::child");
  return i == 0 ? *node_->c0 : *node_->c1;
}

Term Term::with_child(std::size_t i, Term c) const {
  switch (kind()) {
    case TermKind::App: return i == 0 ? app(std::move(c), arg()) : app(fun(), std::move(c));
    case TermKind::Lam: return lam(name(), annot(), std::move(c));
    case TermKind::Catch: return catch_(name(), std::move(c));
    case TermKind::Throw: return throw_(name(), std::move(c));
    default: throw std::out_of_range("Term::with_child on leaf");
  }
}

// ---------------------------------------------------------------------------
// Values and free variables
// ---------------------------------------------------------------------------

Spine spine_of(const Term& t) {
  std::vector<Term> rev;
  const Term* cur = &t;
  while (cur->is(TermKind::App)) {
    rev.push_back(cur->arg());
    cur = &cur->fun();
  }
  return Spine{*cur, std::vector<Term>(rev.rbegin(), rev.rend())};
}

bool is_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec:
    case TermKind::Lam: return true;
    case TermKind::Catch:
    case TermKind::Throw: return false;
    case TermKind::App: break;
  }
  Spine sp = spine_of(t);
  if (!sp.head.is(TermKind::Cons) && !sp.head.is(TermKind::Lrec)) return false;
  if (sp.args.size() > 2) return false;
  return std::all_of(sp.args.begin(), sp.args.end(), [](const Term& a) { return is_value(a); });
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound_terms,
                  std::vector<std::string>& bound_conts, VarSets& out) {
  auto bound = [](const std::vector<std::string>& env, const std::string& n) {
    return std::find(env.begin(), env.end(), n) != env.end();
  };
  switch (t.kind()) {
    case TermKind::Var:
      if (!bound(bound_terms, t.name())) out.term_vars.insert(t.name());
      return;
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec: return;
    case TermKind::Lam:
      bound_terms.push_back(t.name());
      collect_free(t.body(), bound_terms, bound_conts, out);
      bound_terms.pop_back();
      return;
    case TermKind::App:
      collect_free(t.fun(), bound_terms, bound_conts, out);
      collect_free(t.arg(), bound_terms, bound_conts, out);
      return;
    case TermKind::Catch:
      bound_conts.push_back(t.name());
      collect_free(t.body(), bound_terms, bound_conts, out);
      bound_conts.pop_back();
      return;
    case TermKind::Throw:
      if (!bound(bound_conts, t.name())) out.cont_vars.insert(t.name());
      collect_free(t.payload(), bound_terms, bound_conts, out);
      return;
  }
}

}  // namespace

VarSets free_vars(const Term& t) {
  VarSets out;
  std::vector<std::string> bt, bc;
  collect_free(t, bt, bc, out);
  return out;
}

bool occurs_free(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x;
    case TermKind::Lam: return t.name() != x && occurs_free(t.body(), x);
    case TermKind::App: return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    case TermKind::Catch: return occurs_free(t.body(), x);
    case TermKind::Throw: return occurs_free(t.payload(), x);
    default: return false;
  }
}

bool occurs_free_cont(const Term& t, const std::string& alpha) {
  switch (t.kind()) {
    case TermKind::Lam: return occurs_free_cont(t.body(), alpha);
    case TermKind::App: return occurs_free_cont(t.fun(), alpha) || occurs_free_cont(t.arg(), alpha);
    case TermKind::Catch: return t.name() != alpha && occurs_free_cont(t.body(), alpha);
    case TermKind::Throw: return t.name() == alpha || occurs_free_cont(t.payload(), alpha);
    default: return false;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += '\'';
  return n;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

Term subst_rec(const Term& t, const std::string& x, const Term& r, const VarSets& fvr) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x ? r : t;
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec: return t;
    case TermKind::App: {
      Term f = subst_rec(t.fun(), x, r, fvr);
      Term a = subst_rec(t.arg(), x, r, fvr);
      if (f.same_node(t.fun()) && a.same_node(t.arg())) return t;
      return Term::app(std::move(f), std::move(a));
    }
    case TermKind::Lam: {
      if (t.name() == x || !occurs_free(t.body(), x)) return t;
      std::string y = t.name();
      Term body = t.body();
      if (fvr.term_vars.count(y)) {
        std::set<std::string> avoid = fvr.term_vars;
        const auto fvb = free_vars(body).term_vars;
        avoid.insert(fvb.begin(), fvb.end());
        avoid.insert(x);
        std::string y2 = fresh_name(y, avoid);
        body = subst(body, y, Term::var(y2));
        y = y2;
      }
      return Term::lam(y, t.annot(), subst_rec(body, x, r, fvr));
    }
    case TermKind::Catch: {
      if (!occurs_free(t.body(), x)) return t;
      std::string alpha = t.name();
      Term body = t.body();
      if (fvr.cont_vars.count(alpha)) {
        std::set<std::string> avoid = fvr.cont_vars;
        const auto fcb = free_vars(body).cont_vars;
        avoid.insert(fcb.begin(), fcb.end());
        std::string a2 = fresh_name(alpha, avoid);
        body = rename_cont(body, alpha, a2);
        alpha = a2;
      }
      return Term::catch_(alpha, subst_rec(body, x, r, fvr));
    }
    case TermKind::Throw: {
      Term p = subst_rec(t.payload(), x, r, fvr);
      if (p.same_node(t.payload())) return t;
      return Term::throw_(t.name(), std::move(p));
    }
  }
  return t;
}

}  // namespace

Term subst(const Term& t, const std::string& x, const Term& r) {
  if (!occurs_free(t, x)) return t;
  return subst_rec(t, x, r, free_vars(r));
}

Term rename_cont(const Term& t, const std::string& from, const std::string& to) {
  if (from == to || !occurs_free_cont(t, from)) return t;
  switch (t.kind()) {
    case TermKind::Lam: return Term::lam(t.name(), t.annot(), rename_cont(t.body(), from, to));
    case TermKind::App:
      return Term::app(rename_cont(t.fun(), from, to), rename_cont(t.arg(), from, to));
    case TermKind::Throw:
      return Term::throw_(t.name() == from ? to : t.name(), rename_cont(t.payload(), from, to));
    case TermKind::Catch: {
      std::string alpha = t.name();
      Term body = t.body();
      if (alpha == to) {
        std::set<std::string> avoid = free_vars(body).cont_vars;
        avoid.insert(to);
        avoid.insert(from);
        std::string a2 = fresh_name(alpha, avoid);
        body = rename_cont(body, alpha, a2);
        alpha = a2;
      }
      return Term::catch_(alpha, rename_cont(body, from, to));
    }
    default: return t;
  }
}

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

// Both bound at the same binder, or both free with the same name.
bool same_binding(const Env& env, const std::string& a, const std::string& b) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool ma = it->first == a;
    bool mb = it->second == b;
    if (ma && mb) return true;
    if (ma || mb) return false;
  }
  return a == b;
}

bool alpha_rec(const Term& a, const Term& b, Env& terms, Env& conts) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: return same_binding(terms, a.name(), b.name());
    case TermKind::Unit:
    case TermKind::Nil:
    case TermKind::Cons:
    case TermKind::Lrec: return true;
    case TermKind::App:
      return alpha_rec(a.fun(), b.fun(), terms, conts) && alpha_rec(a.arg(), b.arg(), terms, conts);
    case TermKind::Lam: {
      if (a.annot().has_value() != b.annot().has_value()) return false;
      if (a.annot() && *a.annot() != *b.annot()) return false;
      terms.emplace_back(a.name(), b.name());
      bool ok = alpha_rec(a.body(), b.body(), terms, conts);
      terms.pop_back();
      return ok;
    }
    case TermKind::Catch: {
      conts.emplace_back(a.name(), b.name());
      bool ok = alpha_rec(a.body(), b.body(), terms, conts);
      conts.pop_back();
      return ok;
    }
    case TermKind::Throw:
      return same_binding(conts, a.name(), b.name()) &&
             alpha_rec(a.payload(), b.payload(), terms, conts);
  }
  return false;
}

void type_key(const Type& ty, std::string& out) {
  switch (ty.kind()) {
    case TypeKind::Unit: out += '1'; break;
    case TypeKind::List:
      out += '[';
      type_key(ty.elem(), out);
      out += ']';
      break;
    case TypeKind::Arrow:
      out += '(';
      type_key(ty.dom(), out);
      out += '>';
      type_key(ty.cod(), out);
      out += ')';
      break;
    case TypeKind::Meta:
      out += '?';
      out += std::to_string(ty.meta_id());
      break;
  }
}

void ref_key(const std::vector<std::string>& env, const std::string& n, std::string& out) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == n) {
      out += '%';
      out += std::to_string(env.size() - 1 - i);
      out += ' ';
      return;
    }
  }
  out += '$';
  out += n;
  out += ' ';
}

void key_rec(const Term& t, std::vector<std::string>& terms, std::vector<std::string>& conts,
             std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: ref_key(terms, t.name(), out); return;
    case TermKind::Unit: out += 'u'; return;
    case TermKind::Nil: out += 'n'; return;
    case TermKind::Cons: out += 'c'; return;
    case TermKind::Lrec: out += 'r'; return;
    case TermKind::App:
      out += 'A';
      key_rec(t.fun(), terms, conts, out);
      key_rec(t.arg(), terms, conts, out);
      return;
    case TermKind::Lam:
      out += 'L';
      if (t.annot()) type_key(*t.annot(), out);
      else out += '_';
      terms.push_back(t.name());
      key_rec(t.body(), terms, conts, out);
      terms.pop_back();
      return;
    case TermKind::Catch:
      out += 'K';
      conts.push_back(t.name());
      key_rec(t.body(), terms, conts, out);
      conts.pop_back();
      return;
    case TermKind::Throw:
      out += 'T';
      ref_key(conts, t.name(), out);
      key_rec(t.payload(), terms, conts, out);
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  Env terms, conts;
  return alpha_rec(a, b, terms, conts);
}

std::string alpha_key(const Term& t) {
  std::string out;
  out.reserve(t.size() * 3);
  std::vector<std::string> terms, conts;
  key_rec(t, terms, conts, out);
  return out;
}

}  // namespace lcatch
