#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/formula.hpp"
#include "fln/signature.hpp"

namespace fln {

/// Arities fixed by first use. Object constants are recorded as 0-ary functions.
struct SymbolTable {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;

  void declare_predicate(const std::string& name, int arity) {
    auto [it, fresh] = predicates.emplace(name, arity);
    if (!fresh && it->second != arity)
      throw SymbolError("predicate " + name + " used with arity " + std::to_string(arity) +
                        ", first used with arity " + std::to_string(it->second));
  }

  void declare_function(const std::string& name, int arity) {
    auto [it, fresh] = functions.emplace(name, arity);
    if (!fresh && it->second != arity) {
      auto describe = [](int a) {
        return a == 0 ? std::string("an object constant") : "a function of arity " + std::to_string(a);
      };
      throw SymbolError("symbol " + name + " used as " + describe(arity) + ", first used as " +
                        describe(it->second));
    }
  }

  void declare(const Term& t) {
    if (t.kind == Term::Kind::Constant) declare_function(t.name, 0);
    if (t.kind == Term::Kind::Function) declare_function(t.name, static_cast<int>(t.args.size()));
    for (const auto& a : t.args) declare(a);
  }

  void declare(const Formula& f) {
    if (f.op() == Op::Predicate) {
      declare_predicate(f.name(), static_cast<int>(f.args().size()));
      for (const auto& t : f.args()) declare(t);
    }
    if (!f.lhs().empty()) declare(f.lhs());
    if (!f.rhs().empty()) declare(f.rhs());
  }
};

/// Lowercase names of the form x, y1, z_2, w... are variables even when free.
inline bool is_variable_name(std::string_view s) {
  if (s.empty() || (s[0] != 'x' && s[0] != 'y' && s[0] != 'z' && s[0] != 'w')) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != '_') return false;
  return true;
}

namespace detail {

enum class Tok {
  End, Ident, Quoted, Int, Arrow, DArrow, Amp, Plus, Wedge, Vee, Tilde,
  LParen, RParen, Comma, Dot, Hash, Caret, Star, Slash,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
      Token t;
      t.pos = i_;
      if (i_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[i_];
      auto starts = [&](std::string_view s) { return src_.substr(i_, s.size()) == s; };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        t.text = ident();
      } else if (c == '\'') {
        ++i_;
        if (i_ >= src_.size() || !(std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
          throw ParseError("expected constant name after quote", i_);
        t.kind = Tok::Quoted;
        t.text = ident();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) t.text += src_[i_++];
      } else if (starts("<->")) {
        t.kind = Tok::DArrow, i_ += 3;
      } else if (starts("->")) {
        t.kind = Tok::Arrow, i_ += 2;
      } else if (starts("/\\")) {
        t.kind = Tok::Wedge, i_ += 2;
      } else if (starts("\\/")) {
        t.kind = Tok::Vee, i_ += 2;
      } else {
        switch (c) {
          case '&': t.kind = Tok::Amp; break;
          case '+': t.kind = Tok::Plus; break;
          case '~': t.kind = Tok::Tilde; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '.': t.kind = Tok::Dot; break;
          case '#': t.kind = Tok::Hash; break;
          case '^': t.kind = Tok::Caret; break;
          case '*': t.kind = Tok::Star; break;
          case '/': t.kind = Tok::Slash; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", i_);
        }
        ++i_;
      }
      out.push_back(std::move(t));
    }
  }

private:
  std::string ident() {
    std::string s;
    while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
      s += src_[i_++];
    return s;
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
public:
  Parser(std::string_view src, const HedgeSignature& sig, SymbolTable& symbols)
      : toks_(Lexer(src).run()), sig_(sig), symbols_(symbols) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t j = std::min(k_ + ahead, toks_.size() - 1);
    return toks_[j];
  }
  const Token& next() {
    const Token& t = toks_[k_];
    if (k_ + 1 < toks_.size()) ++k_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().pos); }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }

  bool at_quantifier() const {
    return peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists");
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return implication();
  }

  Formula quantified() {
    bool is_forall = next().text == "forall";
    if (peek().kind != Tok::Ident || !is_variable_name(peek().text))
      fail("expected variable (x, y, z or w, optionally followed by digits) after quantifier");
    std::string var = next().text;
    expect(Tok::Dot, "'.' after quantified variable");
    Formula body = formula();
    return is_forall ? Formula::forall(var, body) : Formula::exists(var, body);
  }

  Formula implication() {
    Formula lhs = equivalence();
    if (accept(Tok::Arrow)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula equivalence() {
    Formula f = join();
    while (accept(Tok::DArrow)) f = Formula::equiv(f, join());
    return f;
  }

  Formula join() {
    Formula f = meet();
    while (accept(Tok::Vee)) f = Formula::join(f, meet());
    return f;
  }

  Formula meet() {
    Formula f = lukor();
    while (accept(Tok::Wedge)) f = Formula::meet(f, lukor());
    return f;
  }

  Formula lukor() {
    Formula f = lukand();
    while (accept(Tok::Plus)) f = Formula::disj(f, lukand());
    return f;
  }

  Formula lukand() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    if (at_quantifier()) return quantified();
    if (t.kind == Tok::Tilde) {
      next();
      return Formula::negation(unary());
    }
    if (t.kind == Tok::Int && peek(1).kind == Tok::Star) {
      int n = to_count(next());
      next();
      return Formula::multiple(unary(), n);
    }
    if (t.kind == Tok::Ident && std::islower(static_cast<unsigned char>(t.text[0])) && !at_quantifier()) {
      if (!sig_.contains(t.text)) fail("unknown hedge '" + t.text + "'");
      std::string h = next().text;
      return Formula::hedge(h, unary());
    }
    return postfix();
  }

  Formula postfix() {
    Formula f = primary();
    while (accept(Tok::Caret)) {
      if (peek().kind != Tok::Int) fail("expected exponent");
      f = Formula::power(f, to_count(next()));
    }
    return f;
  }

  int to_count(const Token& t) const {
    if (t.text.size() > 6) throw ParseError("count too large", t.pos);
    int n = std::stoi(t.text);
    if (n < 1) throw ParseError("count must be >= 1", t.pos);
    return n;
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Hash:
        next();
        return Formula::constant(truth_constant());
      case Tok::Ident:
        if (std::isupper(static_cast<unsigned char>(t.text[0]))) return predicate();
        fail("expected formula");
      default:
        fail("expected formula");
    }
  }

  TruthValue truth_constant() {
    std::size_t pos = peek().pos;
    std::string text;
    if (peek().kind == Tok::Int) {
      text = next().text;
    } else {
      expect(Tok::LParen, "'(' or digit after '#'");
      if (peek().kind != Tok::Int) fail("expected numerator");
      text = next().text;
      if (accept(Tok::Slash)) {
        if (peek().kind != Tok::Int) fail("expected denominator");
        text += "/" + next().text;
      }
      expect(Tok::RParen, "')'");
    }
    try {
      return TruthValue::parse(text);
    } catch (const RangeError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  Formula predicate() {
    std::string name = next().text;
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    symbols_.declare_predicate(name, static_cast<int>(args.size()));
    return Formula::predicate(name, std::move(args));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Quoted) {
      Term c = Term::constant(next().text);
      symbols_.declare(c);
      return c;
    }
    if (t.kind != Tok::Ident || !std::islower(static_cast<unsigned char>(t.text[0])))
      fail("expected term");
    std::string name = next().text;
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
      symbols_.declare_function(name, static_cast<int>(args.size()));
      return Term::apply(name, std::move(args));
    }
    if (is_variable_name(name)) return Term::var(name);
    symbols_.declare_function(name, 0);
    return Term::constant(name);
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  const HedgeSignature& sig_;
  SymbolTable& symbols_;
};

}  // namespace detail

/// Parses one formula. Variables are x, y, z, w optionally followed by digits
/// or underscores; any other bare lowercase term name is an object constant.
inline Formula parse_formula(std::string_view text, const HedgeSignature& sig, SymbolTable& symbols) {
  return detail::Parser(text, sig, symbols).parse_all();
}

inline Formula parse_formula(std::string_view text, const HedgeSignature& sig = {}) {
  SymbolTable scratch;
  return parse_formula(text, sig, scratch);
}

inline std::string strip_comment(std::string line) {
  auto pct = line.find('%');
  if (pct != std::string::npos) line.erase(pct);
  auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

/// Handles one `mode`/`stressers`/`depressers` header line. Returns false if
/// the line is not a header line.
inline bool apply_signature_line(const std::string& line, HedgeSignature& sig) {
  std::istringstream in(line);
  std::string key;
  in >> key;
  if (key == "mode") {
    std::string m;
    in >> m;
    if (m == "h" || m == "H") sig.mode = HedgeMode::H;
    else if (m == "dh" || m == "DH") sig.mode = HedgeMode::DH;
    else throw SymbolError("mode must be h or dh, got '" + m + "'");
    return true;
  }
  if (key == "stressers" || key == "depressers") {
    auto& list = key == "stressers" ? sig.stressers : sig.depressers;
    list.clear();
    for (std::string n; in >> n;) {
      if (!std::islower(static_cast<unsigned char>(n[0])))
        throw SymbolError("hedge names must start with a lowercase letter: '" + n + "'");
      list.push_back(n);
    }
    return true;
  }
  return false;
}

/// Signature file: `mode h|dh`, `stressers s1 s2 ...`, `depressers d1 ...`
/// (weakest first), `%` comments.
inline HedgeSignature parse_signature(std::string_view text) {
  HedgeSignature sig;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (!apply_signature_line(line, sig))
      throw SymbolError("line " + std::to_string(lineno) + ": expected mode, stressers or depressers");
  }
  sig.validate();
  return sig;
}

inline std::string print_signature(const HedgeSignature& sig) {
  std::string out = "mode " + to_string(sig.mode) + "\n";
  auto list = [&](const char* key, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out += key;
    for (const auto& n : names) out += " " + n;
    out += "\n";
  };
  list("stressers", sig.stressers);
  list("depressers", sig.depressers);
  return out;
}

}  // namespace fln
