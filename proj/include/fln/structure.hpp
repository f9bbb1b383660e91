#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/error.hpp"
#include "fln/formula.hpp"
#include "fln/hedge.hpp"
#include "fln/parser.hpp"
#include "fln/printer.hpp"

namespace fln {

/// Truth table of an n-ary predicate, indexed in mixed radix with the first
/// argument most significant.
struct PredicateTable {
  int arity = 0;
  std::vector<TruthValue> values;
};

struct FunctionTable {
  int arity = 0;
  std::vector<std::size_t> values;
};

using Valuation = std::map<std::string, std::size_t>;

class Structure {
public:
  std::vector<std::string> domain;
  std::map<std::string, PredicateTable> predicates;
  std::map<std::string, FunctionTable> functions;
  std::map<std::string, std::size_t> constants;
  HedgeModel hedges;

  std::size_t size() const { return domain.size(); }

  std::size_t tuple_index(const std::vector<std::size_t>& args) const {
    std::size_t idx = 0;
    for (std::size_t a : args) idx = idx * domain.size() + a;
    return idx;
  }

  std::size_t table_size(int arity) const {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= domain.size();
    return n;
  }

  std::optional<std::size_t> element(const std::string& name) const {
    auto it = std::find(domain.begin(), domain.end(), name);
    if (it == domain.end()) return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
  }

  /// Inverse of tuple_index.
  std::vector<std::size_t> tuple(std::size_t idx, int arity) const {
    std::vector<std::size_t> t(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = idx % domain.size();
      idx /= domain.size();
    }
    return t;
  }
};

namespace detail {

using Env = std::vector<std::pair<std::string, std::size_t>>;

inline std::size_t eval_term_env(const Structure& s, const Term& t, const Env& env) {
  switch (t.kind) {
    case Term::Kind::Variable:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) return it->second;
      throw EvaluationError("unbound variable " + t.name);
    case Term::Kind::Constant: {
      if (auto it = s.constants.find(t.name); it != s.constants.end()) return it->second;
      // An undesignated constant spelled like a domain element names that element.
      if (auto e = s.element(t.name)) return *e;
      throw EvaluationError("undeclared object constant '" + t.name + "'");
    }
    case Term::Kind::Function: {
      auto it = s.functions.find(t.name);
      if (it == s.functions.end() || it->second.arity != static_cast<int>(t.args.size()))
        throw EvaluationError("undeclared function " + t.name + "/" + std::to_string(t.args.size()));
      std::vector<std::size_t> args;
      for (const auto& a : t.args) args.push_back(eval_term_env(s, a, env));
      return it->second.values.at(s.tuple_index(args));
    }
  }
  throw EvaluationError("bad term");
}

inline TruthValue eval_env(const Structure& s, const Formula& f, Env& env) {
  switch (f.op()) {
    case Op::Constant:
      return f.value();
    case Op::Predicate: {
      auto it = s.predicates.find(f.name());
      if (it == s.predicates.end() || it->second.arity != static_cast<int>(f.args().size()))
        throw EvaluationError("undeclared predicate " + f.name() + "/" + std::to_string(f.args().size()));
      std::vector<std::size_t> args;
      for (const auto& t : f.args()) args.push_back(eval_term_env(s, t, env));
      return it->second.values.at(s.tuple_index(args));
    }
    case Op::Implies:
      return luk_imp(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Hedge:
      return s.hedges.apply(f.name(), eval_env(s, f.body(), env));
    case Op::Not:
      return luk_neg(eval_env(s, f.body(), env));
    case Op::And:
      return luk_and(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Or:
      return luk_or(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Meet:
      return meet(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Join:
      return join(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Equiv:
      return biresiduum(eval_env(s, f.lhs(), env), eval_env(s, f.rhs(), env));
    case Op::Power:
      return power(eval_env(s, f.body(), env), f.count());
    case Op::Multiple:
      return multiple(eval_env(s, f.body(), env), f.count());
    case Op::Forall:
    case Op::Exists: {
      const bool all = f.op() == Op::Forall;
      TruthValue acc = all ? TruthValue::one() : TruthValue::zero();
      env.emplace_back(f.name(), 0);
      for (std::size_t d = 0; d < s.size(); ++d) {
        env.back().second = d;
        TruthValue v = eval_env(s, f.body(), env);
        acc = all ? meet(acc, v) : join(acc, v);
        if (all ? acc.is_zero() : acc.is_one()) break;
      }
      env.pop_back();
      return acc;
    }
  }
  throw EvaluationError("bad formula");
}

}  // namespace detail

inline std::size_t eval_term(const Structure& s, const Term& t, const Valuation& env = {}) {
  detail::Env e(env.begin(), env.end());
  return detail::eval_term_env(s, t, e);
}

/// Truth value of `f` in `s` under `env`. Derived connectives are evaluated by
/// their own truth tables, which agree with evaluating the expansion.
inline TruthValue eval_formula(const Structure& s, const Formula& f, const Valuation& env = {}) {
  detail::Env e(env.begin(), env.end());
  return detail::eval_env(s, f, e);
}

using HedgeLoader = std::function<HedgeModel(const std::string&)>;

namespace detail {

/// Splits on commas that are not inside parentheses.
inline std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip_comment(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip_comment(cur).empty() || !out.empty()) out.push_back(strip_comment(cur));
  return out;
}

inline std::string strip_quote(std::string s) {
  if (!s.empty() && s[0] == '\'') s.erase(0, 1);
  return s;
}

}  // namespace detail

/// Structure file:
///   domain d1 d2
///   pred P/1 { d1: 2/5, d2: 9/10 }     pred R/2 { (d1,d2): 1/2, ... }   pred Q/0 { 1/2 }
///   fun f/1 { d1: d2, d2: d2 }
///   const 'u1 = d1
///   hedges <file>
/// Tables must be total. Braced bodies may span lines.
inline Structure parse_structure(std::string_view text, const HedgeLoader& load_hedges = {}) {
  Structure s;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0, start = 0;
  std::string stmt;
  std::vector<std::pair<std::size_t, std::string>> stmts;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (stmt.empty()) start = lineno;
    stmt += (stmt.empty() ? "" : " ") + line;
    if (std::count(stmt.begin(), stmt.end(), '{') > std::count(stmt.begin(), stmt.end(), '}')) continue;
    stmts.emplace_back(start, stmt);
    stmt.clear();
  }
  if (!stmt.empty()) throw ParseError("line " + std::to_string(start) + ": unterminated '{'", 0);

  auto element = [&](const std::string& name, const std::string& where) {
    auto e = s.element(name);
    if (!e) throw ParseError(where + "unknown domain element '" + name + "'", 0);
    return *e;
  };
  auto header = [&](const std::string& rest, const std::string& where, int& arity, std::string& body) {
    auto slash = rest.find('/');
    auto open = rest.find('{');
    auto close = rest.rfind('}');
    if (slash == std::string::npos || open == std::string::npos || close == std::string::npos || slash > open)
      throw ParseError(where + "expected 'NAME/ARITY { ... }'", 0);
    std::string name = strip_comment(rest.substr(0, slash));
    try {
      arity = std::stoi(strip_comment(rest.substr(slash + 1, open - slash - 1)));
    } catch (const std::exception&) {
      throw ParseError(where + "bad arity", slash + 1);
    }
    if (arity < 0) throw ParseError(where + "bad arity", slash + 1);
    body = rest.substr(open + 1, close - open - 1);
    return name;
  };
  auto key_tuple = [&](std::string key, int arity, const std::string& where) {
    key = strip_comment(key);
    if (!key.empty() && key.front() == '(') {
      if (key.back() != ')') throw ParseError(where + "bad tuple '" + key + "'", 0);
      key = key.substr(1, key.size() - 2);
    }
    std::vector<std::size_t> t;
    for (const auto& part : detail::split_top(key)) t.push_back(element(part, where));
    if (static_cast<int>(t.size()) != arity) throw ParseError(where + "tuple '" + key + "' has wrong length", 0);
    return s.tuple_index(t);
  };

  for (const auto& [ln, st] : stmts) {
    const std::string where = "line " + std::to_string(ln) + ": ";
    auto sp = st.find(' ');
    std::string key = st.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : strip_comment(st.substr(sp + 1));
    if (key == "domain") {
      if (!s.domain.empty()) throw ParseError(where + "domain declared twice", 0);
      std::istringstream names(rest);
      for (std::string n; names >> n;) {
        if (s.element(n)) throw ParseError(where + "duplicate domain element '" + n + "'", 0);
        s.domain.push_back(n);
      }
      if (s.domain.empty()) throw ParseError(where + "domain must be nonempty", 0);
      continue;
    }
    if (key == "hedges") {
      if (!load_hedges) throw ParseError(where + "hedge files are not supported here", 0);
      s.hedges = load_hedges(rest);
      continue;
    }
    if (s.domain.empty()) throw ParseError(where + "'domain' must come first", 0);
    if (key == "const") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError(where + "expected 'const NAME = ELEMENT'", 0);
      std::string name = detail::strip_quote(strip_comment(rest.substr(0, eq)));
      if (name.empty() || is_variable_name(name)) throw ParseError(where + "bad constant name", 0);
      s.constants[name] = element(strip_comment(rest.substr(eq + 1)), where);
    } else if (key == "pred") {
      int arity = 0;
      std::string body;
      std::string name = header(rest, where, arity, body);
      PredicateTable tab{arity, std::vector<TruthValue>(s.table_size(arity))};
      std::vector<bool> seen(tab.values.size(), false);
      for (const auto& entry : detail::split_top(body)) {
        auto colon = entry.rfind(':');
        std::size_t idx = arity == 0 && colon == std::string::npos ? 0 : key_tuple(entry.substr(0, colon), arity, where);
        std::string v = colon == std::string::npos ? entry : entry.substr(colon + 1);
        try {
          tab.values[idx] = TruthValue::parse(strip_comment(v));
        } catch (const RangeError& e) {
          throw ParseError(where + e.what(), 0);
        }
        seen[idx] = true;
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ParseError(where + "table of " + name + " is not total", 0);
      s.predicates[name] = std::move(tab);
    } else if (key == "fun") {
      int arity = 0;
      std::string body;
      std::string name = header(rest, where, arity, body);
      if (arity == 0) throw ParseError(where + "use 'const' for 0-ary functions", 0);
      FunctionTable tab{arity, std::vector<std::size_t>(s.table_size(arity))};
      std::vector<bool> seen(tab.values.size(), false);
      for (const auto& entry : detail::split_top(body)) {
        auto colon = entry.rfind(':');
        if (colon == std::string::npos) throw ParseError(where + "expected 'TUPLE: ELEMENT'", 0);
        std::size_t idx = key_tuple(entry.substr(0, colon), arity, where);
        tab.values[idx] = element(strip_comment(entry.substr(colon + 1)), where);
        seen[idx] = true;
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ParseError(where + "table of " + name + " is not total", 0);
      s.functions[name] = std::move(tab);
    } else {
      throw ParseError(where + "unknown statement '" + key + "'", 0);
    }
  }
  if (s.domain.empty()) throw ParseError("structure has no domain", 0);
  return s;
}

/// Canonical structure listing in the file format (without a hedges line).
inline std::string print_structure(const Structure& s) {
  std::string out = "domain";
  for (const auto& d : s.domain) out += " " + d;
  out += "\n";
  for (const auto& [name, e] : s.constants) out += "const '" + name + " = " + s.domain[e] + "\n";
  auto key = [&](std::size_t idx, int arity) {
    auto t = s.tuple(idx, arity);
    std::string k;
    for (std::size_t i = 0; i < t.size(); ++i) k += (i ? "," : "") + s.domain[t[i]];
    return arity > 1 ? "(" + k + ")" : k;
  };
  for (const auto& [name, tab] : s.functions) {
    out += "fun " + name + "/" + std::to_string(tab.arity) + " {";
    for (std::size_t i = 0; i < tab.values.size(); ++i)
      out += (i ? ", " : " ") + key(i, tab.arity) + ": " + s.domain[tab.values[i]];
    out += " }\n";
  }
  for (const auto& [name, tab] : s.predicates) {
    out += "pred " + name + "/" + std::to_string(tab.arity) + " {";
    for (std::size_t i = 0; i < tab.values.size(); ++i) {
      out += i ? ", " : " ";
      if (tab.arity > 0) out += key(i, tab.arity) + ": ";
      out += tab.values[i].str();
    }
    out += " }\n";
  }
  return out;
}

}  // namespace fln
