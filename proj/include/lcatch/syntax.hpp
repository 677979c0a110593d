#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lcatch {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Unit, List, Arrow, Meta };

/// Immutable type tree: `1`, `[t]`, `a -> b`, plus solver metavariables.
class Type {
 public:
  static Type unit();
  static Type list(Type elem);
  static Type arrow(Type dom, Type cod);
  static Type meta(int id);

  TypeKind kind() const { return node_->kind; }
  bool is_unit() const { return kind() == TypeKind::Unit; }
  bool is_list() const { return kind() == TypeKind::List; }
  bool is_arrow() const { return kind() == TypeKind::Arrow; }
  bool is_meta() const { return kind() == TypeKind::Meta; }

  const Type& elem() const;  // List
  const Type& dom() const;   // Arrow
  const Type& cod() const;   // Arrow
  int meta_id() const;       // Meta

  bool has_meta() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node {
    TypeKind kind;
    int meta_id = -1;
    std::shared_ptr<const Type> left;
    std::shared_ptr<const Type> right;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// True iff no arrow occurs anywhere in the type.
bool is_arrow_free(const Type& ty);

/// Builds `a1 -> a2 -> ... -> result`.
Type arrows(std::initializer_list<Type> doms, Type result);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind { Var, Unit, Nil, Cons, Lrec, Lam, App, Catch, Throw };

/// Immutable, shared term tree.
///
/// `cons` and `lrec` are nullary constants; `cons h t` is
/// `app(app(cons, h), t)`. Term variables (bound by `lam`) and continuation
/// variables (bound by `catch`, used by `throw`) live in disjoint namespaces.
class Term {
 public:
  static Term var(std::string name);
  static Term unit();
  static Term nil();
  static Term cons();
  static Term lrec();
  static Term lam(std::string binder, std::optional<Type> annot, Term body);
  static Term app(Term fun, Term arg);
  static Term catch_(std::string cont, Term body);
  static Term throw_(std::string cont, Term payload);

  /// Left-nested application `head a1 a2 ...`.
  static Term apps(Term head, std::initializer_list<Term> args);
  static Term apps(Term head, const std::vector<Term>& args);
  /// `cons h t`
  static Term cons_of(Term head, Term tail);
  /// `[t1, ..., tn]`
  static Term list_of(const std::vector<Term>& elems);

  TermKind kind() const { return node_->kind; }
  bool is(TermKind k) const { return kind() == k; }

  /// Variable name, lambda binder, or continuation name of catch/throw.
  const std::string& name() const { return node_->name; }
  const std::optional<Type>& annot() const { return node_->annot; }

  const Term& fun() const;      // App
  const Term& arg() const;      // App
  const Term& body() const;     // Lam, Catch
  const Term& payload() const;  // Throw

  std::size_t num_children() const;
  /// Child by index: App 0=fun 1=arg; Lam/Catch/Throw 0=body.
  const Term& child(std::size_t i) const;
  /// Copy of this node with child `i` replaced.
  Term with_child(std::size_t i, Term c) const;

  /// Number of AST nodes (type annotations are not counted).
  std::size_t size() const { return node_->size; }

  /// Physical identity of the shared node.
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::optional<Type> annot;
    std::shared_ptr<const Term> c0;
    std::shared_ptr<const Term> c1;
    std::size_t size = 1;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, std::string name, std::optional<Type> annot,
                   std::optional<Term> c0, std::optional<Term> c1);
  std::shared_ptr<const Node> node_;
};

/// Splits `h a1 ... an` into head and arguments (left to right).
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine_of(const Term& t);

/// Value grammar: variables, (), [], cons, cons v, cons v w, lrec, lrec v,
/// lrec v w, and abstractions.
bool is_value(const Term& t);

struct VarSets {
  std::set<std::string> term_vars;
  std::set<std::string> cont_vars;
};

/// Free term variables and free continuation variables.
VarSets free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& x);
bool occurs_free_cont(const Term& t, const std::string& alpha);

/// Deterministic fresh name: `base` followed by as many primes as needed to
/// avoid every name in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Capture-avoiding `t[x := r]`. Renames lambda binders that would capture
/// a free term variable of `r` and catch binders that would capture a free
/// continuation variable of `r`.
Term subst(const Term& t, const std::string& x, const Term& r);

/// Capture-avoiding renaming of the free continuation variable `from` to `to`.
Term rename_cont(const Term& t, const std::string& from, const std::string& to);

/// Equality up to consistent renaming of bound term and continuation
/// variables. Binder annotations must both be absent or both present and equal.
bool alpha_eq(const Term& a, const Term& b);

/// Canonical string such that alpha_key(a) == alpha_key(b) iff alpha_eq(a, b).
std::string alpha_key(const Term& t);

}  // namespace lcatch
