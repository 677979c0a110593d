#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcatch/syntax.hpp"

namespace lcatch {

/// Term-variable typings (gamma) and continuation-variable typings (delta).
/// Every delta entry is arrow-free; `bind_cont` enforces it.
class TypingEnv {
 public:
  TypingEnv() = default;

  TypingEnv& bind(const std::string& x, Type ty);
  /// Throws std::invalid_argument unless `ty` is metavariable-free and arrow-free.
  TypingEnv& bind_cont(const std::string& alpha, Type ty);

  const std::map<std::string, Type>& gamma() const { return gamma_; }
  const std::map<std::string, Type>& delta() const { return delta_; }

 private:
  std::map<std::string, Type> gamma_;
  std::map<std::string, Type> delta_;
};

enum class TypeErrorKind {
  UnboundVar,
  UnboundContVar,
  Mismatch,
  NonArrowFreeCatch,
  NonArrowFreeThrow,
  AmbiguousType,
  OccursCheck,
};

std::string to_string(TypeErrorKind k);

using AstPath = std::vector<std::size_t>;
std::string path_to_string(const AstPath& p);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, AstPath path, std::string detail,
            std::optional<Type> expected = std::nullopt, std::optional<Type> found = std::nullopt);

  TypeErrorKind kind() const { return kind_; }
  /// Child-index path from the root to the offending node.
  const AstPath& path() const { return path_; }
  /// Populated for Mismatch.
  const std::optional<Type>& expected() const { return expected_; }
  /// Populated for Mismatch, NonArrowFreeCatch, NonArrowFreeThrow.
  const std::optional<Type>& found() const { return found_; }

 private:
  TypeErrorKind kind_;
  AstPath path_;
  std::optional<Type> expected_;
  std::optional<Type> found_;
};

/// Fully solved types for every node of a term, in the same shape as the term.
/// `binder` holds the type of the variable bound by a Lam or Catch node.
struct Derivation {
  Type type = Type::unit();
  std::optional<Type> binder;
  std::vector<Derivation> children;
};

struct Typing {
  Type type;
  Derivation derivation;
};

/// Monomorphic inference. Throws TypeError.
Type infer(const TypingEnv& env, const Term& t);

/// Inference that also returns the solved per-node derivation.
Typing infer_typing(const TypingEnv& env, const Term& t);

/// Checks `t` against `ty` (which must be metavariable-free). Throws TypeError.
void check(const TypingEnv& env, const Term& t, const Type& ty);

/// Derivability of `env |- t : expected` (or of some type when `expected` is
/// absent). Unlike infer/check, metavariables left unsolved are not an error:
/// they are instantiated to unit, which keeps every catch/throw binder
/// arrow-free. Throws TypeError for every other failure.
Typing derive(const TypingEnv& env, const Term& t, const std::optional<Type>& expected);

/// Non-throwing conveniences.
std::optional<Type> try_infer(const TypingEnv& env, const Term& t);
std::optional<TypeError> check_error(const TypingEnv& env, const Term& t, const Type& ty);

/// Validates a derivation rule by rule with all types known. Returns a
/// description of the first violated rule, or nullopt when valid.
std::optional<std::string> replay_derivation(const TypingEnv& env, const Term& t,
                                             const Derivation& d);

}  // namespace lcatch
