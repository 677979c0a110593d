#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcatch/syntax.hpp"
#include "lcatch/typing.hpp"

namespace lcatch {

enum class RuleTag { BetaV, ThrowProp, Catch1, Catch2, Catch3, LrecNil, LrecCons };

inline constexpr RuleTag kAllRules[] = {RuleTag::BetaV,  RuleTag::ThrowProp, RuleTag::Catch1,
                                        RuleTag::Catch2, RuleTag::Catch3,    RuleTag::LrecNil,
                                        RuleTag::LrecCons};

/// Trace spelling: beta_v, throw, catch_1, catch_2, catch_3, lrec_nil, lrec_cons.
std::string rule_name(RuleTag r);

struct Contraction {
  RuleTag rule;
  Term result;
};

/// Root contraction, if the root of `t` is a redex. Rules are tried in the
/// order catch_1, catch_2, catch_3, beta_v, lrec_nil, lrec_cons, throw.
std::optional<Contraction> contract(const Term& t);

/// Every rule whose left-hand side matches the root of `t` (for checking that
/// root overlaps are disjoint).
std::vector<RuleTag> matching_rules(const Term& t);

struct ReductionEvent {
  RuleTag rule;
  AstPath path;  // child indices from the root to the redex
  Term result;   // the whole term after the contraction
};

/// All one-step reducts under the compatible closure, one per redex position,
/// root first then children left to right.
std::vector<ReductionEvent> enumerate_redexes(const Term& t);

/// The standard call-by-value step: function position first, then the
/// argument once the function is a value, through throw payloads and catch
/// bodies, never under a lambda.
std::optional<ReductionEvent> step_cbv(const Term& t);

inline constexpr std::int64_t kDefaultFuel = 100000;
inline constexpr std::size_t kTraceCap = 10000;

enum class OutcomeKind { Value, UncaughtThrow, OutOfFuel, Stuck };

struct Outcome {
  OutcomeKind kind;
  /// Final term: the value, the whole `throw b v`, or the last term reached.
  Term term;
  /// Continuation name for UncaughtThrow.
  std::string cont;
  std::int64_t steps = 0;
  std::vector<ReductionEvent> trace;
  bool trace_truncated = false;

  /// Payload of an uncaught throw.
  const Term& payload() const { return term.payload(); }
};

/// Iterates step_cbv until a value, an uncaught `throw b v`, a stuck term
/// (only possible for ill-typed input), or `fuel` steps.
Outcome evaluate(const Term& t, std::int64_t fuel = kDefaultFuel, bool keep_trace = false);

/// `step <k>: [<rule>] <term>` lines for a recorded trace.
std::vector<std::string> format_trace(const Outcome& out, bool sugar);

}  // namespace lcatch
