#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fln/formula.hpp"
#include "fln/signature.hpp"

namespace fln {

enum class Schema {
  R1, R2, R3, R4, B1, T1, T2,
  H6, H7, H8, H9, H10,
  DH11, DH12, DH13, DH14, DH15,
  CONST,
};

inline constexpr std::array<const char*, 18> kSchemaNames = {
    "R1", "R2", "R3", "R4", "B1", "T1", "T2", "H6", "H7",
    "H8", "H9", "H10", "DH11", "DH12", "DH13", "DH14", "DH15", "CONST"};

inline std::string to_string(Schema s) { return kSchemaNames[static_cast<std::size_t>(s)]; }

inline std::optional<Schema> schema_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kSchemaNames.size(); ++i)
    if (name == kSchemaNames[i]) return static_cast<Schema>(i);
  return std::nullopt;
}

/// Which schema a formula instantiates, with the metavariable bindings.
struct AxiomMatch {
  Schema schema = Schema::CONST;
  std::map<std::string, Formula> formulas;  // A, B, C; constants for B1
  std::string variable;                     // T1, T2
  std::optional<Term> term;                 // T1
  std::string hedge;                        // hedge schemas
  std::size_t index = 0;                    // i or j in s_i / d_j schemas
};

struct LaxGrade {
  TruthValue grade;
  std::optional<AxiomMatch> match;
};

namespace detail {

inline Formula meta(const char* name) { return Formula::predicate(std::string("?") + name); }

inline bool is_meta(const Formula& f) {
  return f.op() == Op::Predicate && f.args().empty() && !f.name().empty() && f.name()[0] == '?';
}

inline bool match_pattern(const Formula& pat, const Formula& f, std::map<std::string, Formula>& bind) {
  if (is_meta(pat)) {
    auto key = pat.name().substr(1);
    auto it = bind.find(key);
    if (it == bind.end()) {
      bind.emplace(key, f);
      return true;
    }
    return it->second == f;
  }
  if (pat.op() != f.op()) return false;
  switch (pat.op()) {
    case Op::Constant:
    case Op::Predicate:
      return pat == f;
    case Op::Implies:
      return match_pattern(pat.lhs(), f.lhs(), bind) && match_pattern(pat.rhs(), f.rhs(), bind);
    case Op::Forall:
    case Op::Hedge:
      return pat.name() == f.name() && match_pattern(pat.body(), f.body(), bind);
    default:
      return false;
  }
}

inline Formula fill(const Formula& pat, const std::map<std::string, Formula>& bind) {
  if (is_meta(pat)) return bind.at(pat.name().substr(1));
  switch (pat.op()) {
    case Op::Constant:
    case Op::Predicate:
      return pat;
    case Op::Implies:
      return Formula::implies(fill(pat.lhs(), bind), fill(pat.rhs(), bind));
    case Op::Forall:
      return Formula::forall(pat.name(), fill(pat.body(), bind));
    case Op::Hedge:
      return Formula::hedge(pat.name(), fill(pat.body(), bind));
    default:
      return pat;
  }
}

inline Formula hedged(const std::vector<std::string>& names, std::size_t i, Formula a) {
  return i == 0 ? a : Formula::hedge(names.at(i - 1), std::move(a));
}

/// Expanded pattern for the propositional and hedge schemas. Metavariables are
/// 0-ary predicates named ?A, ?B, ?C.
inline Formula schema_pattern(Schema s, const HedgeSignature& sig, const std::string& hedge, std::size_t i) {
  const Formula A = meta("A"), B = meta("B"), C = meta("C");
  const Formula zero = Formula::constant(TruthValue::zero());
  const Formula one = Formula::constant(TruthValue::one());
  auto imp = [](Formula x, Formula y) { return Formula::implies(std::move(x), std::move(y)); };
  switch (s) {
    case Schema::R1: return imp(A, imp(B, A));
    case Schema::R2: return imp(imp(A, B), imp(imp(B, C), imp(A, C)));
    case Schema::R3: return imp(imp(neg_primitive(B), neg_primitive(A)), imp(A, B));
    case Schema::R4: return imp(imp(imp(A, B), B), imp(imp(B, A), A));
    case Schema::B1: return expand(Formula::equiv(imp(A, B), C));
    case Schema::H6:
    case Schema::DH11:
      return imp(imp(A, B), imp(Formula::hedge(hedge, A), Formula::hedge(hedge, B)));
    case Schema::H7:
    case Schema::DH12:
      return imp(hedged(sig.stressers, i, A), hedged(sig.stressers, i - 1, A));
    case Schema::H8:
    case Schema::DH13:
      return hedged(sig.stressers, sig.stressers.size(), one);
    case Schema::H9:
    case Schema::DH14:
      return imp(hedged(sig.depressers, i - 1, A), hedged(sig.depressers, i, A));
    case Schema::H10:
      return neg_primitive(hedged(sig.depressers, sig.depressers.size(), zero));
    case Schema::DH15:
      return imp(hedged(sig.depressers, i, A),
                 neg_primitive(Formula::hedge(sig.stressers.at(i - 1), neg_primitive(A))));
    default:
      return A;
  }
}

// Matches A against C where C = A_x[t] for some t; binds t on the first free
// occurrence of x.
inline bool match_term_subst(const Term& a, const Term& c, const std::string& x,
                             const std::set<std::string>& bound, std::optional<Term>& t) {
  if (a.is_var() && a.name == x && !bound.count(x)) {
    if (t) return *t == c;
    t = c;
    return true;
  }
  if (a.kind != c.kind || a.name != c.name || a.args.size() != c.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!match_term_subst(a.args[i], c.args[i], x, bound, t)) return false;
  return true;
}

inline bool match_subst(const Formula& a, const Formula& c, const std::string& x, std::set<std::string>& bound,
                        std::optional<Term>& t) {
  if (a.op() != c.op()) return false;
  switch (a.op()) {
    case Op::Constant:
      return a.value() == c.value();
    case Op::Predicate:
      if (a.name() != c.name() || a.args().size() != c.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!match_term_subst(a.args()[i], c.args()[i], x, bound, t)) return false;
      return true;
    case Op::Implies:
      return match_subst(a.lhs(), c.lhs(), x, bound, t) && match_subst(a.rhs(), c.rhs(), x, bound, t);
    case Op::Hedge:
      return a.name() == c.name() && match_subst(a.body(), c.body(), x, bound, t);
    case Op::Forall: {
      if (a.name() != c.name()) return false;
      bool fresh = bound.insert(a.name()).second;
      bool ok = match_subst(a.body(), c.body(), x, bound, t);
      if (fresh) bound.erase(a.name());
      return ok;
    }
    default:
      return false;
  }
}

inline std::optional<AxiomMatch> match_t1(const Formula& f) {
  if (f.op() != Op::Implies || f.lhs().op() != Op::Forall) return std::nullopt;
  const std::string& x = f.lhs().name();
  const Formula& body = f.lhs().body();
  std::set<std::string> bound;
  std::optional<Term> t;
  if (!match_subst(body, f.rhs(), x, bound, t)) return std::nullopt;
  if (!t) t = Term::var(x);
  if (!is_substitutable(body, x, *t)) return std::nullopt;
  if (substitute(body, x, *t) != f.rhs()) return std::nullopt;
  AxiomMatch m;
  m.schema = Schema::T1;
  m.formulas.emplace("A", body);
  m.variable = x;
  m.term = t;
  return m;
}

inline std::optional<AxiomMatch> match_t2(const Formula& f) {
  if (f.op() != Op::Implies) return std::nullopt;
  const Formula &l = f.lhs(), &r = f.rhs();
  if (l.op() != Op::Forall || l.body().op() != Op::Implies) return std::nullopt;
  if (r.op() != Op::Implies || r.rhs().op() != Op::Forall) return std::nullopt;
  const std::string& x = l.name();
  const Formula &a = l.body().lhs(), &b = l.body().rhs();
  if (r.rhs().name() != x || r.lhs() != a || r.rhs().body() != b) return std::nullopt;
  if (occurs_free(a, x)) return std::nullopt;
  AxiomMatch m;
  m.schema = Schema::T2;
  m.formulas.emplace("A", a);
  m.formulas.emplace("B", b);
  m.variable = x;
  return m;
}

inline std::optional<AxiomMatch> try_pattern(const Formula& f, Schema s, const HedgeSignature& sig,
                                             const std::string& hedge = {}, std::size_t i = 0) {
  std::map<std::string, Formula> bind;
  if (!match_pattern(schema_pattern(s, sig, hedge, i), f, bind)) return std::nullopt;
  if (s == Schema::B1) {
    for (const char* k : {"A", "B", "C"})
      if (bind.at(k).op() != Op::Constant) return std::nullopt;
    if (luk_imp(bind.at("A").value(), bind.at("B").value()) != bind.at("C").value()) return std::nullopt;
  }
  AxiomMatch m;
  m.schema = s;
  m.formulas = std::move(bind);
  m.hedge = hedge;
  m.index = i;
  return m;
}

inline std::vector<Schema> enabled_schemas(const HedgeSignature& sig) {
  std::vector<Schema> out = {Schema::R1, Schema::R2, Schema::R3, Schema::R4, Schema::B1, Schema::T1, Schema::T2};
  if (sig.mode == HedgeMode::H)
    out.insert(out.end(), {Schema::H6, Schema::H7, Schema::H8, Schema::H9, Schema::H10});
  else
    out.insert(out.end(), {Schema::DH11, Schema::DH12, Schema::DH13, Schema::DH14, Schema::DH15});
  return out;
}

}  // namespace detail

/// Tries one schema against an expanded formula.
inline std::optional<AxiomMatch> match_schema(const Formula& f, Schema s, const HedgeSignature& sig) {
  using detail::try_pattern;
  const std::size_t p = sig.stressers.size(), q = sig.depressers.size();
  const bool dh = sig.mode == HedgeMode::DH;
  switch (s) {
    case Schema::CONST:
      if (f.op() != Op::Constant) return std::nullopt;
      return AxiomMatch{Schema::CONST, {{"a", f}}, {}, std::nullopt, {}, 0};
    case Schema::T1:
      return detail::match_t1(f);
    case Schema::T2:
      return detail::match_t2(f);
    case Schema::R1: case Schema::R2: case Schema::R3: case Schema::R4: case Schema::B1:
      return try_pattern(f, s, sig);
    default:
      break;
  }
  bool for_h = s == Schema::H6 || s == Schema::H7 || s == Schema::H8 || s == Schema::H9 || s == Schema::H10;
  if (for_h == dh) return std::nullopt;
  switch (s) {
    case Schema::H6:
    case Schema::DH11:
      if (f.op() != Op::Implies || f.rhs().op() != Op::Implies || f.rhs().lhs().op() != Op::Hedge) return std::nullopt;
      if (!sig.contains(f.rhs().lhs().name())) return std::nullopt;
      return try_pattern(f, s, sig, f.rhs().lhs().name());
    case Schema::H7:
    case Schema::DH12:
      for (std::size_t i = 1; i <= p; ++i)
        if (auto m = try_pattern(f, s, sig, sig.stressers[i - 1], i)) return m;
      return std::nullopt;
    case Schema::H8:
    case Schema::DH13:
      if (p == 0) return std::nullopt;
      return try_pattern(f, s, sig, sig.stressers[p - 1], p);
    case Schema::H9:
    case Schema::DH14:
      for (std::size_t j = 1; j <= q; ++j)
        if (auto m = try_pattern(f, s, sig, sig.depressers[j - 1], j)) return m;
      return std::nullopt;
    case Schema::H10:
      if (q == 0) return std::nullopt;
      return try_pattern(f, s, sig, sig.depressers[q - 1], q);
    case Schema::DH15:
      for (std::size_t i = 1; i <= std::min(p, q); ++i)
        if (auto m = try_pattern(f, s, sig, sig.depressers[i - 1], i)) return m;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

/// Rebuilds the formula a match stands for.
inline Formula instantiate(const AxiomMatch& m, const HedgeSignature& sig) {
  switch (m.schema) {
    case Schema::CONST:
      return m.formulas.at("a");
    case Schema::T1:
      return Formula::implies(Formula::forall(m.variable, m.formulas.at("A")),
                              substitute(m.formulas.at("A"), m.variable, *m.term));
    case Schema::T2: {
      const Formula &a = m.formulas.at("A"), &b = m.formulas.at("B");
      return Formula::implies(Formula::forall(m.variable, Formula::implies(a, b)),
                              Formula::implies(a, Formula::forall(m.variable, b)));
    }
    default:
      return detail::fill(detail::schema_pattern(m.schema, sig, m.hedge, m.index), m.formulas);
  }
}

/// Membership degree in the fuzzy set of logical axioms: 1 for an instance of
/// an enabled schema, a for the constant #a, 0 otherwise.
inline LaxGrade lax_grade(const Formula& formula, const HedgeSignature& sig) {
  Formula f = is_expanded(formula) ? formula : expand(formula);
  if (auto m = match_schema(f, Schema::CONST, sig)) return {f.value(), m};
  for (Schema s : detail::enabled_schemas(sig))
    if (auto m = match_schema(f, s, sig)) return {TruthValue::one(), m};
  return {TruthValue::zero(), std::nullopt};
}

}  // namespace fln
