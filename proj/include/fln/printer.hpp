#pragma once

#include <string>

#include "fln/formula.hpp"

namespace fln {

struct PrintOptions {
  /// Show `A -> #0` as `~A`.
  bool recover_negation = false;
};

namespace detail {

// Binding strength; quantifiers are weakest and extend as far right as possible.
inline int level(Op op) {
  switch (op) {
    case Op::Forall: case Op::Exists: return 0;
    case Op::Implies: return 1;
    case Op::Equiv: return 2;
    case Op::Join: return 3;
    case Op::Meet: return 4;
    case Op::Or: return 5;
    case Op::And: return 6;
    case Op::Not: case Op::Hedge: case Op::Multiple: return 7;
    case Op::Power: return 8;
    default: return 9;
  }
}

inline const char* infix(Op op) {
  switch (op) {
    case Op::Implies: return " -> ";
    case Op::Equiv: return " <-> ";
    case Op::Join: return " \\/ ";
    case Op::Meet: return " /\\ ";
    case Op::Or: return " + ";
    case Op::And: return " & ";
    default: return "?";
  }
}

inline bool is_neg_shape(const Formula& f) {
  return f.op() == Op::Implies && f.rhs().op() == Op::Constant && f.rhs().value().is_zero();
}

inline void print_rec(const Formula& f, int min_level, const PrintOptions& opt, std::string& out);

}  // namespace detail

inline std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable: return t.name;
    case Term::Kind::Constant: return "'" + t.name;
    case Term::Kind::Function: {
      std::string s = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ", ";
        s += print_term(t.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

inline std::string print_constant(const TruthValue& v) {
  if (v.is_zero()) return "#0";
  if (v.is_one()) return "#1";
  return "#(" + v.str() + ")";
}

inline std::string print_formula(const Formula& f, const PrintOptions& opt = {}) {
  std::string out;
  detail::print_rec(f, 0, opt, out);
  return out;
}

namespace detail {

inline void print_rec(const Formula& f, int min_level, const PrintOptions& opt, std::string& out) {
  bool as_neg = opt.recover_negation && is_neg_shape(f);
  int lv = as_neg ? level(Op::Not) : level(f.op());
  bool paren = lv < min_level;
  if (paren) out += '(';
  if (as_neg) {
    out += '~';
    print_rec(f.lhs(), level(Op::Not), opt, out);
  } else {
    switch (f.op()) {
      case Op::Constant:
        out += print_constant(f.value());
        break;
      case Op::Predicate:
        out += f.name();
        if (!f.args().empty()) {
          out += '(';
          for (std::size_t i = 0; i < f.args().size(); ++i) {
            if (i) out += ", ";
            out += print_term(f.args()[i]);
          }
          out += ')';
        }
        break;
      case Op::Forall:
      case Op::Exists:
        out += f.op() == Op::Forall ? "forall " : "exists ";
        out += f.name();
        out += ". ";
        print_rec(f.body(), 0, opt, out);
        break;
      case Op::Hedge:
        out += f.name();
        out += ' ';
        print_rec(f.body(), lv, opt, out);
        break;
      case Op::Not:
        out += '~';
        print_rec(f.body(), lv, opt, out);
        break;
      case Op::Multiple:
        out += std::to_string(f.count());
        out += '*';
        print_rec(f.body(), lv, opt, out);
        break;
      case Op::Power:
        print_rec(f.body(), lv + 1, opt, out);
        out += '^';
        out += std::to_string(f.count());
        break;
      case Op::Implies:
        print_rec(f.lhs(), lv + 1, opt, out);
        out += infix(f.op());
        print_rec(f.rhs(), lv, opt, out);
        break;
      default:
        print_rec(f.lhs(), lv, opt, out);
        out += infix(f.op());
        print_rec(f.rhs(), lv + 1, opt, out);
        break;
    }
  }
  if (paren) out += ')';
}

}  // namespace detail

}  // namespace fln
