#include "lcatch/stdlib.hpp"

#include <map>
#include <stdexcept>

#include "lcatch/typing.hpp"

namespace lcatch {

extern const char* const kPreludeText;

Term encode_nat(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("encode_nat: negative input " + std::to_string(n));
  Term acc = Term::nil();
  for (std::int64_t k = 0; k < n; ++k) acc = Term::cons_of(Term::unit(), acc);
  return acc;
}

std::optional<std::int64_t> decode_nat(const Term& v) {
  std::int64_t n = 0;
  const Term* cur = &v;
  while (!cur->is(TermKind::Nil)) {
    if (!cur->is(TermKind::App) || !cur->fun().is(TermKind::App) ||
        !cur->fun().fun().is(TermKind::Cons) || !cur->fun().arg().is(TermKind::Unit))
      return std::nullopt;
    ++n;
    cur = &cur->arg();
  }
  return n;
}

std::string_view prelude_source() { return kPreludeText; }

const std::vector<Definition>& prelude_definitions() {
  static const std::vector<Definition> defs =
      expand_definitions(parse_program(prelude_source()).defs);
  return defs;
}

namespace {

std::vector<NamedTerm> build_library() {
  const Type nat = Type::list(Type::unit());
  const std::map<std::string, Type> declared = {
      {"zero", nat},
      {"suc", Type::arrow(nat, nat)},
      {"nrec", arrows({nat, arrows({nat, nat}, nat), nat}, nat)},
      {"pred", Type::arrow(nat, nat)},
      {"plus", arrows({nat, nat}, nat)},
      {"times", arrows({nat, nat}, nat)},
      {"prodz", Type::arrow(Type::list(nat), nat)},
  };
  std::vector<NamedTerm> out;
  for (const Definition& d : prelude_definitions()) {
    auto it = declared.find(d.name);
    if (it == declared.end()) throw std::logic_error("prelude entry without declared type: " + d.name);
    check(TypingEnv{}, d.term, it->second);
    out.push_back({d.name, d.term, it->second});
  }
  return out;
}

}  // namespace

const std::vector<NamedTerm>& library() {
  static const std::vector<NamedTerm> lib = build_library();
  return lib;
}

const NamedTerm& library_entry(std::string_view name) {
  for (const NamedTerm& nt : library())
    if (nt.name == name) return nt;
  throw std::out_of_range("no prelude entry named '" + std::string(name) + "'");
}

}  // namespace lcatch
