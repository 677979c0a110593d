#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcatch/syntax.hpp"

namespace lcatch {

/// One frame of a compound evaluation context.
struct ContextFrame {
  enum class Kind {
    AppFun,  // [] t     (hole in function position; `term` is the argument)
    AppArg,  // v []     (hole in argument position; `term` is the value)
    Throw,   // throw a []
  };
  Kind kind;
  Term term = Term::unit();
  std::string cont;
};

/// A term viewed as `frames[0][frames[1][...[hole_subject]]]`.
struct CompoundContextView {
  std::vector<ContextFrame> frames;  // outermost first
  Term hole_subject;
};

/// Reassembles a compound context around a subject.
Term plug(const std::vector<ContextFrame>& frames, const Term& subject);

/// Every decomposition `E[throw a s]` of `t` (including the empty context
/// when `t` itself is a throw), outermost first. Throws reachable through
/// compound contexts lie on one path, so the decompositions are nested.
std::vector<CompoundContextView> throw_decompositions(const Term& t);

/// Takahashi's complete development: contracts every redex of `t` at once.
Term complete_development(const Term& t);

/// Raised when a term exceeds the enumeration node budget.
class BudgetExceeded : public std::length_error {
 public:
  BudgetExceeded(std::size_t size, std::size_t budget);
};

inline constexpr std::size_t kDefaultNodeBudget = 14;

/// The exact set of parallel reducts of `t`, deduplicated modulo alpha.
/// Throws BudgetExceeded when size(t) > node_budget.
std::vector<Term> parallel_reducts(const Term& t, std::size_t node_budget = kDefaultNodeBudget);

struct ParallelStep {
  Term source;
  Term target;
};

/// `s => t`, decided by enumeration. Throws BudgetExceeded.
bool is_parallel_step(const Term& s, const Term& t, std::size_t node_budget = kDefaultNodeBudget);

/// Searches for a common reduct by iterating complete development on both
/// sides in lockstep, comparing modulo alpha after each round. Absent means
/// the search ran out of rounds (or a side grew past `node_budget` nodes), not
/// that no common reduct exists.
std::optional<Term> join(const Term& t1, const Term& t2, int max_rounds = 32,
                         std::size_t node_budget = 4096);

}  // namespace lcatch
