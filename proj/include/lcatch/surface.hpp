#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcatch/syntax.hpp"

namespace lcatch {

/// First syntax error in a source text. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct Definition {
  std::string name;
  Term term;
};

struct SourceProgram {
  std::vector<Definition> defs;
  std::optional<Term> main;
};

/// Parses a `.lc` program: `(def x = t;)* (main = t;)?`.
SourceProgram parse_program(std::string_view src);

/// Parses a single term (the whole input must be one term).
Term parse_term(std::string_view src);

/// Parses a single type.
Type parse_type(std::string_view src);

/// Definitions with every reference to an earlier definition replaced by its
/// (already expanded) body.
std::vector<Definition> expand_definitions(const std::vector<Definition>& defs);

/// Replaces free occurrences of each definition name in `t`, latest first.
Term expand_with(const Term& t, const std::vector<Definition>& expanded_defs);

struct PrintOptions {
  /// Print `cons () (... nil)` chains as `#n` numerals.
  bool sugar = false;
};

std::string print_term(const Term& t, PrintOptions opts = {});
std::string print_type(const Type& ty);

}  // namespace lcatch
