#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcatch/surface.hpp"
#include "lcatch/syntax.hpp"

namespace lcatch {

/// `suc^n zero` with zero = [] and suc = cons (). Throws std::invalid_argument
/// for negative n.
Term encode_nat(std::int64_t n);

/// Inverse of encode_nat; nullopt when `v` is not a numeral.
std::optional<std::int64_t> decode_nat(const Term& v);

struct NamedTerm {
  std::string name;
  Term term;  // closed: earlier prelude definitions are substituted in
  Type declared_type;
};

/// Source text of the bundled prelude.
std::string_view prelude_source();

/// The prelude definitions, expanded and paired with their declared types.
const std::vector<NamedTerm>& library();

/// The prelude definitions in the form used to expand user terms.
const std::vector<Definition>& prelude_definitions();

/// Looks up a prelude entry by name; throws std::out_of_range.
const NamedTerm& library_entry(std::string_view name);

}  // namespace lcatch
