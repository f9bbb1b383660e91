#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fln/error.hpp"
#include "fln/truth_value.hpp"

namespace fln {

struct Term {
  enum class Kind { Variable, Constant, Function };

  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string n) { return Term{Kind::Variable, std::move(n), {}}; }
  static Term constant(std::string n) { return Term{Kind::Constant, std::move(n), {}}; }
  static Term apply(std::string f, std::vector<Term> a) {
    return Term{Kind::Function, std::move(f), std::move(a)};
  }

  bool is_var() const { return kind == Kind::Variable; }
};

inline int compare(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}

inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.name);
  for (const auto& a : t.args) collect_vars(a, out);
}

inline std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

/// Connectives. The first five are primitive; the rest are abbreviations kept
/// for display and removed by expand().
enum class Op {
  Constant,
  Predicate,
  Implies,
  Forall,
  Hedge,
  Not,
  And,       // Łukasiewicz conjunction &
  Or,        // Łukasiewicz disjunction ▽, written +
  Meet,      // ∧, written /\ .
  Join,      // ∨, written \/ .
  Equiv,
  Exists,
  Power,     // A^n
  Multiple,  // n*A
};

inline bool is_primitive(Op op) {
  return op == Op::Constant || op == Op::Predicate || op == Op::Implies || op == Op::Forall ||
         op == Op::Hedge;
}

inline bool is_binary(Op op) {
  switch (op) {
    case Op::Implies: case Op::And: case Op::Or: case Op::Meet: case Op::Join: case Op::Equiv:
      return true;
    default:
      return false;
  }
}

/// Immutable formula tree with shared subterms. Copies are cheap.
class Formula {
public:
  struct Node;

  /// Empty placeholder; only valid as an assignment target.
  Formula() = default;

  static Formula constant(TruthValue v);
  static Formula predicate(std::string name, std::vector<Term> args = {});
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula hedge(std::string h, Formula body);
  static Formula negation(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula meet(Formula a, Formula b);
  static Formula join(Formula a, Formula b);
  static Formula equiv(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula power(Formula a, int n);
  static Formula multiple(Formula a, int n);

  Op op() const;
  const TruthValue& value() const;
  /// Predicate name, bound variable, or hedge name depending on op().
  const std::string& name() const;
  const std::vector<Term>& args() const;
  /// Antecedent / left operand / quantifier or hedge body.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }
  int count() const;
  std::size_t size() const;

  bool empty() const { return !node_; }
  bool same_node(const Formula& o) const { return node_ == o.node_; }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op = Op::Constant;
  TruthValue value;
  std::string name;
  std::vector<Term> args;
  Formula a;
  Formula b;
  int count = 0;
  std::size_t size = 1;
};

inline Formula Formula::make(Node n) {
  n.size = 1 + (n.a.empty() ? 0 : n.a.size()) + (n.b.empty() ? 0 : n.b.size());
  return Formula(std::make_shared<const Node>(std::move(n)));
}

inline Formula Formula::constant(TruthValue v) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(v);
  return make(std::move(n));
}

inline Formula Formula::predicate(std::string name, std::vector<Term> args) {
  Node n;
  n.op = Op::Predicate;
  n.name = std::move(name);
  n.args = std::move(args);
  return make(std::move(n));
}

namespace detail {
inline Formula::Node binary_node(Op op, Formula a, Formula b) {
  Formula::Node n;
  n.op = op;
  n.a = std::move(a);
  n.b = std::move(b);
  return n;
}
inline Formula::Node unary_node(Op op, std::string name, Formula a) {
  Formula::Node n;
  n.op = op;
  n.name = std::move(name);
  n.a = std::move(a);
  return n;
}
}  // namespace detail

inline Formula Formula::implies(Formula a, Formula b) { return make(detail::binary_node(Op::Implies, std::move(a), std::move(b))); }
inline Formula Formula::conj(Formula a, Formula b) { return make(detail::binary_node(Op::And, std::move(a), std::move(b))); }
inline Formula Formula::disj(Formula a, Formula b) { return make(detail::binary_node(Op::Or, std::move(a), std::move(b))); }
inline Formula Formula::meet(Formula a, Formula b) { return make(detail::binary_node(Op::Meet, std::move(a), std::move(b))); }
inline Formula Formula::join(Formula a, Formula b) { return make(detail::binary_node(Op::Join, std::move(a), std::move(b))); }
inline Formula Formula::equiv(Formula a, Formula b) { return make(detail::binary_node(Op::Equiv, std::move(a), std::move(b))); }
inline Formula Formula::forall(std::string v, Formula body) { return make(detail::unary_node(Op::Forall, std::move(v), std::move(body))); }
inline Formula Formula::exists(std::string v, Formula body) { return make(detail::unary_node(Op::Exists, std::move(v), std::move(body))); }
inline Formula Formula::hedge(std::string h, Formula body) { return make(detail::unary_node(Op::Hedge, std::move(h), std::move(body))); }
inline Formula Formula::negation(Formula a) { return make(detail::unary_node(Op::Not, {}, std::move(a))); }

inline Formula Formula::power(Formula a, int k) {
  if (k < 1) throw RangeError("power exponent must be >= 1");
  auto n = detail::unary_node(Op::Power, {}, std::move(a));
  n.count = k;
  return make(std::move(n));
}

inline Formula Formula::multiple(Formula a, int k) {
  if (k < 1) throw RangeError("multiple count must be >= 1");
  auto n = detail::unary_node(Op::Multiple, {}, std::move(a));
  n.count = k;
  return make(std::move(n));
}

inline Op Formula::op() const { return node_->op; }
inline const TruthValue& Formula::value() const { return node_->value; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::lhs() const { return node_->a; }
inline const Formula& Formula::rhs() const { return node_->b; }
inline int Formula::count() const { return node_->count; }
inline std::size_t Formula::size() const { return node_->size; }

/// Structural total order (no alpha-renaming).
inline int compare(const Formula& x, const Formula& y) {
  if (x.same_node(y)) return 0;
  if (x.empty() || y.empty()) return x.empty() ? (y.empty() ? 0 : -1) : 1;
  if (x.op() != y.op()) return x.op() < y.op() ? -1 : 1;
  switch (x.op()) {
    case Op::Constant:
      return x.value() == y.value() ? 0 : (x.value() < y.value() ? -1 : 1);
    case Op::Predicate: {
      if (int c = x.name().compare(y.name()); c != 0) return c < 0 ? -1 : 1;
      const auto &xa = x.args(), &ya = y.args();
      if (xa.size() != ya.size()) return xa.size() < ya.size() ? -1 : 1;
      for (std::size_t i = 0; i < xa.size(); ++i)
        if (int c = compare(xa[i], ya[i]); c != 0) return c;
      return 0;
    }
    default:
      break;
  }
  if (x.count() != y.count()) return x.count() < y.count() ? -1 : 1;
  if (int c = x.name().compare(y.name()); c != 0) return c < 0 ? -1 : 1;
  if (int c = compare(x.lhs(), y.lhs()); c != 0) return c;
  return compare(x.rhs(), y.rhs());
}

inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

inline Formula neg_primitive(Formula a) {
  return Formula::implies(std::move(a), Formula::constant(TruthValue::zero()));
}

/// Rewrites every abbreviation into constants, predicates, ->, forall and
/// hedges, following the textbook definitions literally:
///   ~A = A -> #0            A & B = ~(A -> ~B)         A \/ B = (B -> A) -> A
///   A + B = ~(~A & ~B)      A /\ B = ~((B -> A) -> ~B)  A <-> B = (A -> B) /\ (B -> A)
///   exists x. A = ~forall x. ~A,  A^n and n*A fold & and + from the left.
inline Formula expand(const Formula& f) {
  switch (f.op()) {
    case Op::Constant:
    case Op::Predicate:
      return f;
    case Op::Implies: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
      return Formula::implies(std::move(a), std::move(b));
    }
    case Op::Forall: {
      Formula a = expand(f.body());
      if (a.same_node(f.body())) return f;
      return Formula::forall(f.name(), std::move(a));
    }
    case Op::Hedge: {
      Formula a = expand(f.body());
      if (a.same_node(f.body())) return f;
      return Formula::hedge(f.name(), std::move(a));
    }
    case Op::Not:
      return neg_primitive(expand(f.body()));
    case Op::And: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      return neg_primitive(Formula::implies(a, neg_primitive(b)));
    }
    case Op::Join: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      return Formula::implies(Formula::implies(b, a), a);
    }
    case Op::Or: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      return expand(Formula::negation(Formula::conj(neg_primitive(a), neg_primitive(b))));
    }
    case Op::Meet: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      return neg_primitive(Formula::implies(Formula::implies(b, a), neg_primitive(b)));
    }
    case Op::Equiv: {
      Formula a = expand(f.lhs()), b = expand(f.rhs());
      return expand(Formula::meet(Formula::implies(a, b), Formula::implies(b, a)));
    }
    case Op::Exists:
      return neg_primitive(Formula::forall(f.name(), neg_primitive(expand(f.body()))));
    case Op::Power:
    case Op::Multiple: {
      Formula a = expand(f.body());
      Formula acc = a;
      for (int i = 1; i < f.count(); ++i)
        acc = f.op() == Op::Power ? Formula::conj(acc, a) : Formula::disj(acc, a);
      return expand(acc);
    }
  }
  return f;
}

inline bool is_expanded(const Formula& f) {
  if (!is_primitive(f.op())) return false;
  if (!f.lhs().empty() && !is_expanded(f.lhs())) return false;
  if (!f.rhs().empty() && !is_expanded(f.rhs())) return false;
  return true;
}

namespace detail {
inline void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Constant:
      return;
    case Op::Predicate: {
      std::set<std::string> vs;
      for (const auto& t : f.args()) collect_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Op::Forall:
    case Op::Exists: {
      bool fresh = bound.insert(f.name()).second;
      free_vars_into(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    default:
      if (!f.lhs().empty()) free_vars_into(f.lhs(), bound, out);
      if (!f.rhs().empty()) free_vars_into(f.rhs(), bound, out);
  }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars_into(f, bound, out);
  return out;
}

inline bool is_closed(const Formula& f) { return free_vars(f).empty(); }

inline bool occurs_free(const Formula& f, const std::string& x) { return free_vars(f).count(x) > 0; }

inline Term substitute(const Term& t, const std::string& x, const Term& s) {
  if (t.is_var()) return t.name == x ? s : t;
  if (t.args.empty()) return t;
  Term out = t;
  for (auto& a : out.args) a = substitute(a, x, s);
  return out;
}

namespace detail {
struct Binder {
  Op op;
  std::string var;
};

inline Formula substitute_rec(const Formula& f, const std::string& x, const Term& t,
                              const std::set<std::string>& tvars, std::vector<Binder>& scope) {
  switch (f.op()) {
    case Op::Constant:
      return f;
    case Op::Predicate: {
      bool hit = false;
      for (const auto& a : f.args())
        if (term_vars(a).count(x)) hit = true;
      if (!hit) return f;
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (tvars.count(it->var))
          throw SubstitutionError("term is not substitutable for " + x + ": variable " + it->var +
                                  " captured by " + (it->op == Op::Forall ? "forall " : "exists ") +
                                  it->var);
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(substitute(a, x, t));
      return Formula::predicate(f.name(), std::move(args));
    }
    case Op::Forall:
    case Op::Exists: {
      if (f.name() == x) return f;
      scope.push_back({f.op(), f.name()});
      Formula b = substitute_rec(f.body(), x, t, tvars, scope);
      scope.pop_back();
      if (b.same_node(f.body())) return f;
      return f.op() == Op::Forall ? Formula::forall(f.name(), b) : Formula::exists(f.name(), b);
    }
    case Op::Hedge: {
      Formula b = substitute_rec(f.body(), x, t, tvars, scope);
      return b.same_node(f.body()) ? f : Formula::hedge(f.name(), b);
    }
    case Op::Not: {
      Formula b = substitute_rec(f.body(), x, t, tvars, scope);
      return b.same_node(f.body()) ? f : Formula::negation(b);
    }
    case Op::Power:
    case Op::Multiple: {
      Formula b = substitute_rec(f.body(), x, t, tvars, scope);
      if (b.same_node(f.body())) return f;
      return f.op() == Op::Power ? Formula::power(b, f.count()) : Formula::multiple(b, f.count());
    }
    default: {
      Formula a = substitute_rec(f.lhs(), x, t, tvars, scope);
      Formula b = substitute_rec(f.rhs(), x, t, tvars, scope);
      if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
      switch (f.op()) {
        case Op::Implies: return Formula::implies(a, b);
        case Op::And: return Formula::conj(a, b);
        case Op::Or: return Formula::disj(a, b);
        case Op::Meet: return Formula::meet(a, b);
        case Op::Join: return Formula::join(a, b);
        default: return Formula::equiv(a, b);
      }
    }
  }
}
}  // namespace detail

/// A_x[t]: replaces the free occurrences of x by t. Throws SubstitutionError
/// when a variable of t would be captured by an enclosing quantifier.
inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  auto tvars = term_vars(t);
  std::vector<detail::Binder> scope;
  return detail::substitute_rec(f, x, t, tvars, scope);
}

inline bool is_substitutable(const Formula& f, const std::string& x, const Term& t) {
  try {
    (void)substitute(f, x, t);
    return true;
  } catch (const SubstitutionError&) {
    return false;
  }
}

/// Every subformula of f (including f), each once, in post-order.
inline void subformulas(const Formula& f, std::vector<Formula>& out) {
  if (!f.lhs().empty()) subformulas(f.lhs(), out);
  if (!f.rhs().empty()) subformulas(f.rhs(), out);
  out.push_back(f);
}

inline void collect_constants(const Formula& f, std::set<TruthValue>& out) {
  if (f.op() == Op::Constant) out.insert(f.value());
  if (!f.lhs().empty()) collect_constants(f.lhs(), out);
  if (!f.rhs().empty()) collect_constants(f.rhs(), out);
}

}  // namespace fln
