#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcatch/reduction.hpp"
#include "lcatch/syntax.hpp"

namespace lcatch {

struct GenConfig {
  std::uint64_t seed = 0;
  int max_size = 20;
  bool typed = true;
  std::optional<Type> target_type;
  int cont_depth = 3;
};

/// Deterministic in `cfg.seed`. Typed terms are closed and pass `infer`
/// (falling back to `()` or the minimal term of the target type after a bounded
/// number of retries); untyped terms are arbitrary terms over a small pool of
/// variable and continuation names, with catch/throw boosted.
Term gen_term(const GenConfig& cfg);

/// Closed typed term under continuation context `delta` (every type
/// arrow-free), checked against `target`. For properties about open
/// continuation variables.
Term gen_term_under(std::uint64_t seed, int max_size,
                    const std::vector<std::pair<std::string, Type>>& delta, const Type& target);

/// Random small type (depth-bounded).
Type gen_type(std::uint64_t seed, int depth = 2);

enum class Property {
  SubjectReduction,
  Progress,
  Diamond,
  RedSubsetPred,
  PredSubsetRedd,
  TakahashiMpred,
  StrongNormalization,
  ValueShapes,
  FcvClosed,
};

inline constexpr Property kAllProperties[] = {
    Property::SubjectReduction, Property::Progress,       Property::Diamond,
    Property::RedSubsetPred,    Property::PredSubsetRedd, Property::TakahashiMpred,
    Property::StrongNormalization, Property::ValueShapes, Property::FcvClosed};

std::string property_name(Property p);
/// Accepts the full name or a short alias (sr, progress, diamond, red-pred,
/// pred-redd, takahashi, sn, shapes, fcv).
std::optional<Property> parse_property(const std::string& s);
/// Whether the property runs on typed (true) or untyped (false) terms.
bool property_uses_typed_terms(Property p);

struct PropertyFailure {
  std::uint64_t seed;
  Term term;  // minimized counterexample
  std::string detail;
};

struct PropertyReport {
  Property property = Property::SubjectReduction;
  std::int64_t cases_run = 0;
  std::vector<PropertyFailure> failures;
  /// Strong normalization cases whose reduction graph hit the exploration cap.
  std::int64_t inconclusive = 0;

  bool passed() const { return failures.empty(); }
};

/// Seed used for case `i` of a run with base seed `base`.
std::uint64_t case_seed(std::uint64_t base, std::int64_t i);

/// Checks one property on one term. Returns a failure description, or nullopt.
/// `inconclusive` is set when a strong normalization exploration hits its cap.
std::optional<std::string> check_property(Property p, const Term& t, std::uint64_t seed,
                                          bool* inconclusive = nullptr);

/// Runs `cases` generated cases of `p`. Typed properties use typed generation
/// and untyped ones untyped generation, regardless of `cfg.typed`.
PropertyReport run_property(Property p, std::int64_t cases, const GenConfig& cfg);

/// `PROP <name> CASES <n> FAILURES <m>` then one `FAIL seed=<s> term=<t>` line
/// per failure.
std::vector<std::string> report_lines(const PropertyReport& r);

/// Greedy shrinking: repeatedly replaces a subterm by a smaller candidate
/// while `failing` still holds. Requires failing(t).
Term minimize(const Term& t, const std::function<bool(const Term&)>& failing);

// --- Building blocks shared with the test suites ----------------------------

inline constexpr std::size_t kGraphCap = 20000;

struct GraphExploration {
  std::size_t nodes = 0;
  bool overflow = false;
  bool cycle = false;
  /// Longest reduction sequence from the root (valid when !overflow && !cycle).
  std::size_t longest_path = 0;
  std::set<RuleTag> rules_seen;
};

/// Depth-first exploration of the full reduction graph of `t` (all one-step
/// reducts, modulo alpha), detecting cycles; stops after `cap` distinct terms.
GraphExploration explore_reduction_graph(const Term& t, std::size_t cap = kGraphCap);

/// Whether every term in `targets` is reachable from `t` by zero or more
/// one-step reductions, exploring breadth-first up to `cap` distinct terms.
/// Returns the targets not found.
std::vector<Term> unreachable_targets(const Term& t, const std::vector<Term>& targets,
                                      std::size_t cap = kGraphCap);

/// Whether closed value `v` has the canonical shape for type `ty`.
bool has_canonical_shape(const Term& v, const Type& ty);

/// Rule tags exercised by the reduction graphs (one-step reducts of every
/// term along the call-by-value run) of `cases` typed terms.
std::set<RuleTag> typed_rule_coverage(std::int64_t cases, const GenConfig& cfg);

}  // namespace lcatch
