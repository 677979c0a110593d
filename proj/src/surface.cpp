#include "lcatch/surface.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace lcatch {

ParseError::ParseError(int line, int column, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << line << ':' << column << ": " << message;
        if (!expected.empty()) {
          os << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
          os << ')';
        }
        return os.str();
      }()),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  Ident,
  Numeral,  // #n
  Number,   // bare digits (the unit type `1`)
  Backslash,
  Dot,
  Colon,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Arrow,
  Equals,
  Semi,
  KwCons,
  KwLrec,
  KwCatch,
  KwThrow,
  KwDef,
  KwMain,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Numeral: return "numeral";
    case Tok::Number: return "number";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::Semi: return "';'";
    case Tok::KwCons: return "'cons'";
    case Tok::KwLrec: return "'lrec'";
    case Tok::KwCatch: return "'catch'";
    case Tok::KwThrow: return "'throw'";
    case Tok::KwDef: return "'def'";
    case Tok::KwMain: return "'main'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (static_cast<unsigned char>(c) >= 0x80)
      throw ParseError(line, col, "non-ASCII character", {});
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), tl, tc});
      advance(1);
    };
    switch (c) {
      case '\\': single(Tok::Backslash); continue;
      case '.': single(Tok::Dot); continue;
      case ':': single(Tok::Colon); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '[': single(Tok::LBrack); continue;
      case ']': single(Tok::RBrack); continue;
      case ',': single(Tok::Comma); continue;
      case '=': single(Tok::Equals); continue;
      case ';': single(Tok::Semi); continue;
      default: break;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", tl, tc});
      advance(2);
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j == i + 1) throw ParseError(tl, tc, "'#' must be followed by digits", {"digits"});
      out.push_back({Tok::Numeral, std::string(src.substr(i + 1, j - i - 1)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "cons") k = Tok::KwCons;
      else if (word == "lrec") k = Tok::KwLrec;
      else if (word == "catch") k = Tok::KwCatch;
      else if (word == "throw") k = Tok::KwThrow;
      else if (word == "def") k = Tok::KwDef;
      else if (word == "main") k = Tok::KwMain;
      out.push_back({k, std::move(word), tl, tc});
      advance(j - i);
      continue;
    }
    throw ParseError(tl, tc, std::string("unexpected character '") + c + "'", {});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SourceProgram program() {
    SourceProgram prog;
    std::set<std::string> seen;
    while (peek().kind == Tok::KwDef) {
      next();
      Token name = expect(Tok::Ident);
      if (!seen.insert(name.text).second)
        throw ParseError(name.line, name.column, "duplicate definition '" + name.text + "'", {});
      expect(Tok::Equals);
      Term body = term();
      expect(Tok::Semi);
      prog.defs.push_back({name.text, std::move(body)});
    }
    if (peek().kind == Tok::KwMain) {
      next();
      expect(Tok::Equals);
      prog.main = term();
      expect(Tok::Semi);
    }
    if (peek().kind != Tok::End) fail({"'def'", "'main'", describe(Tok::End)});
    return prog;
  }

  Term whole_term() {
    Term t = term();
    if (peek().kind != Tok::End) fail({"atom", describe(Tok::End)});
    return t;
  }

  Type whole_type() {
    Type t = type();
    if (peek().kind != Tok::End) fail({"'->'", describe(Tok::End)});
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "unexpected " + found, std::move(expected));
  }

  Token expect(Tok k) {
    if (peek().kind != k) fail({describe(k)});
    return next();
  }

  static bool starts_atom(Tok k) {
    switch (k) {
      case Tok::Ident:
      case Tok::Numeral:
      case Tok::LParen:
      case Tok::LBrack:
      case Tok::KwCons:
      case Tok::KwLrec: return true;
      default: return false;
    }
  }

  Term term() {
    switch (peek().kind) {
      case Tok::Backslash: {
        next();
        Token x = expect(Tok::Ident);
        std::optional<Type> annot;
        if (peek().kind == Tok::Colon) {
          next();
          annot = type();
        }
        expect(Tok::Dot);
        return Term::lam(x.text, std::move(annot), term());
      }
      case Tok::KwCatch: {
        next();
        Token a = expect(Tok::Ident);
        expect(Tok::Dot);
        return Term::catch_(a.text, term());
      }
      case Tok::KwThrow: {
        next();
        Token a = expect(Tok::Ident);
        return Term::throw_(a.text, term());
      }
      default: break;
    }
    if (!starts_atom(peek().kind)) fail({"term"});
    Term acc = atom();
    while (starts_atom(peek().kind)) acc = Term::app(std::move(acc), atom());
    return acc;
  }

  Term atom() {
    Token t = next();
    switch (t.kind) {
      case Tok::Ident: return Term::var(t.text);
      case Tok::KwCons: return Term::cons();
      case Tok::KwLrec: return Term::lrec();
      case Tok::Numeral: {
        if (t.text.size() > 6)
          throw ParseError(t.line, t.column, "numeral too large", {});
        long n = std::stol(t.text);
        Term acc = Term::nil();
        for (long k = 0; k < n; ++k) acc = Term::cons_of(Term::unit(), acc);
        return acc;
      }
      case Tok::LParen: {
        if (peek().kind == Tok::RParen) {
          next();
          return Term::unit();
        }
        Term inner = term();
        if (peek().kind == Tok::Colon) {
          next();
          Type ty = type();
          expect(Tok::RParen);
          // `(t : T)` is sugar for `(\asc:T. asc) t`.
          return Term::app(Term::lam("asc", std::move(ty), Term::var("asc")), std::move(inner));
        }
        if (peek().kind != Tok::RParen) fail({"')'", "':'", "atom"});
        next();
        return inner;
      }
      case Tok::LBrack: {
        if (peek().kind == Tok::RBrack) {
          next();
          return Term::nil();
        }
        std::vector<Term> elems;
        elems.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          elems.push_back(term());
        }
        if (peek().kind != Tok::RBrack) fail({"','", "']'", "atom"});
        next();
        return Term::list_of(elems);
      }
      default:
        --pos_;
        fail({"term"});
    }
  }

  Type type() {
    Type dom = type_atom();
    if (peek().kind == Tok::Arrow) {
      next();
      return Type::arrow(std::move(dom), type());
    }
    return dom;
  }

  Type type_atom() {
    Token t = next();
    switch (t.kind) {
      case Tok::Number:
        if (t.text != "1") throw ParseError(t.line, t.column, "unknown type '" + t.text + "'", {"'1'"});
        return Type::unit();
      case Tok::LBrack: {
        Type elem = type();
        expect(Tok::RBrack);
        return Type::list(std::move(elem));
      }
      case Tok::LParen: {
        Type inner = type();
        expect(Tok::RParen);
        return inner;
      }
      default:
        --pos_;
        fail({"type"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// Elements of a `cons h1 (cons h2 ... nil)` chain, or nullopt.
std::optional<std::vector<Term>> list_literal(const Term& t) {
  std::vector<Term> elems;
  const Term* cur = &t;
  while (true) {
    if (cur->is(TermKind::Nil)) return elems;
    if (!cur->is(TermKind::App) || !cur->fun().is(TermKind::App) ||
        !cur->fun().fun().is(TermKind::Cons))
      return std::nullopt;
    elems.push_back(cur->fun().arg());
    cur = &cur->arg();
  }
}

class Printer {
 public:
  explicit Printer(PrintOptions opts) : opts_(opts) {}

  void term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Lam:
        out_ += '\\';
        out_ += t.name();
        if (t.annot()) {
          out_ += ':';
          out_ += print_type(*t.annot());
        }
        out_ += ". ";
        term(t.body());
        return;
      case TermKind::Catch:
        out_ += "catch ";
        out_ += t.name();
        out_ += ". ";
        term(t.body());
        return;
      case TermKind::Throw:
        out_ += "throw ";
        out_ += t.name();
        out_ += ' ';
        term(t.payload());
        return;
      default: application(t);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void application(const Term& t) {
    if (t.is(TermKind::App) && !list_literal(t)) {
      application(t.fun());
      out_ += ' ';
      atom(t.arg());
      return;
    }
    atom(t);
  }

  void atom(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: out_ += t.name(); return;
      case TermKind::Unit: out_ += "()"; return;
      case TermKind::Nil: out_ += opts_.sugar ? "#0" : "[]"; return;
      case TermKind::Cons: out_ += "cons"; return;
      case TermKind::Lrec: out_ += "lrec"; return;
      default: break;
    }
    if (auto elems = list_literal(t)) {
      if (opts_.sugar) {
        bool numeral = true;
        for (const Term& e : *elems) numeral = numeral && e.is(TermKind::Unit);
        if (numeral) {
          out_ += '#';
          out_ += std::to_string(elems->size());
          return;
        }
      }
      out_ += '[';
      for (std::size_t i = 0; i < elems->size(); ++i) {
        if (i) out_ += ", ";
        term((*elems)[i]);
      }
      out_ += ']';
      return;
    }
    out_ += '(';
    term(t);
    out_ += ')';
  }

  PrintOptions opts_;
  std::string out_;
};

}  // namespace

SourceProgram parse_program(std::string_view src) { return Parser(src).program(); }

Term parse_term(std::string_view src) { return Parser(src).whole_term(); }

Type parse_type(std::string_view src) { return Parser(src).whole_type(); }

std::vector<Definition> expand_definitions(const std::vector<Definition>& defs) {
  std::vector<Definition> out;
  out.reserve(defs.size());
  for (const Definition& d : defs) out.push_back({d.name, expand_with(d.term, out)});
  return out;
}

Term expand_with(const Term& t, const std::vector<Definition>& expanded_defs) {
  Term acc = t;
  for (auto it = expanded_defs.rbegin(); it != expanded_defs.rend(); ++it)
    acc = subst(acc, it->name, it->term);
  return acc;
}

std::string print_term(const Term& t, PrintOptions opts) {
  Printer p(opts);
  p.term(t);
  return p.take();
}

std::string print_type(const Type& ty) {
  switch (ty.kind()) {
    case TypeKind::Unit: return "1";
    case TypeKind::List: return "[" + print_type(ty.elem()) + "]";
    case TypeKind::Meta: return "?" + std::to_string(ty.meta_id());
    case TypeKind::Arrow: {
      std::string dom = print_type(ty.dom());
      if (ty.dom().is_arrow()) dom = "(" + dom + ")";
      return dom + " -> " + print_type(ty.cod());
    }
  }
  return "?";
}

}  // namespace lcatch
