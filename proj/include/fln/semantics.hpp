#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fln/error.hpp"
#include "fln/hedge.hpp"
#include "fln/structure.hpp"
#include "fln/theory.hpp"

namespace fln {

inline constexpr int kDefaultChain = 10;
inline constexpr int kDefaultMaxDomain = 2;
inline constexpr double kDefaultSearchLimit = 2e7;

/// Non-logical symbols a structure has to interpret.
struct Vocabulary {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;  // arity >= 1
  std::set<std::string> constants;

  void add(const SymbolTable& t) {
    for (const auto& [name, arity] : t.predicates) predicates.emplace(name, arity);
    for (const auto& [name, arity] : t.functions) {
      if (arity == 0)
        constants.insert(name);
      else
        functions.emplace(name, arity);
    }
  }

  void add(const Formula& f) {
    SymbolTable t;
    t.declare(f);
    add(t);
  }

  /// No argument places anywhere: the domain cannot influence any value.
  bool propositional() const {
    if (!functions.empty() || !constants.empty()) return false;
    for (const auto& [_, arity] : predicates)
      if (arity > 0) return false;
    return true;
  }
};

/// Number of structures over `vocab` with a domain of exactly n elements on
/// a chain with `chain_size` values (as a double; only compared to limits).
inline double structure_count(const Vocabulary& vocab, std::size_t n, std::size_t chain_size) {
  auto pw = [](double b, double e) { return std::pow(b, e); };
  double total = pw(static_cast<double>(n), static_cast<double>(vocab.constants.size()));
  for (const auto& [_, arity] : vocab.functions) total *= pw(static_cast<double>(n), pw(static_cast<double>(n), arity));
  for (const auto& [_, arity] : vocab.predicates)
    total *= pw(static_cast<double>(chain_size), pw(static_cast<double>(n), arity));
  return total;
}

struct EnumerationOptions {
  int max_domain = kDefaultMaxDomain;
  double limit = kDefaultSearchLimit;
};

/// Calls `visit` on every structure over `vocab` with domain sizes 1..max_domain
/// (only size 1 for a propositional vocabulary) and tables valued in `chain`.
/// Sizes ascend; within a size, constants vary slowest and predicate tables
/// fastest, each in lexicographic order. `visit` returns false to stop early.
/// Throws SearchSpaceError when the total count would exceed `opt.limit`.
inline void for_each_structure(const Vocabulary& vocab, const MVChain& chain, const HedgeModel& hedges,
                               const EnumerationOptions& opt, const std::function<bool(const Structure&)>& visit) {
  if (opt.max_domain < 1) throw Error("max_domain must be at least 1");
  const std::size_t top = vocab.propositional() ? 1 : static_cast<std::size_t>(opt.max_domain);
  double total = 0;
  for (std::size_t n = 1; n <= top; ++n) total += structure_count(vocab, n, chain.size());
  if (total > opt.limit)
    throw SearchSpaceError("search space of " + std::to_string(static_cast<long double>(total)) +
                           " structures exceeds the limit of " + std::to_string(static_cast<long double>(opt.limit)));
  const std::vector<TruthValue> values = chain.values();

  for (std::size_t n = 1; n <= top; ++n) {
    Structure s;
    s.hedges = hedges;
    for (std::size_t i = 1; i <= n; ++i) s.domain.push_back("d" + std::to_string(i));

    // One odometer digit per table cell. setters write digit values into s.
    std::vector<std::size_t> radix;
    std::vector<std::function<void(std::size_t)>> set;
    for (const auto& c : vocab.constants) {
      radix.push_back(n);
      set.emplace_back([&s, c](std::size_t v) { s.constants[c] = v; });
    }
    for (const auto& [name, arity] : vocab.functions) {
      auto& tab = s.functions[name];
      tab = {arity, std::vector<std::size_t>(s.table_size(arity), 0)};
      for (std::size_t cell = 0; cell < tab.values.size(); ++cell) {
        radix.push_back(n);
        set.emplace_back([&tab, cell](std::size_t v) { tab.values[cell] = v; });
      }
    }
    for (const auto& [name, arity] : vocab.predicates) {
      auto& tab = s.predicates[name];
      tab = {arity, std::vector<TruthValue>(s.table_size(arity), values[0])};
      for (std::size_t cell = 0; cell < tab.values.size(); ++cell) {
        radix.push_back(values.size());
        set.emplace_back([&tab, cell, &values](std::size_t v) { tab.values[cell] = values[v]; });
      }
    }
    for (std::size_t d = 0; d < set.size(); ++d) set[d](0);

    std::vector<std::size_t> digit(radix.size(), 0);
    while (true) {
      if (!visit(s)) return;
      bool wrapped = true;
      for (std::size_t d = digit.size(); d-- > 0;) {
        if (++digit[d] < radix[d]) {
          set[d](digit[d]);
          wrapped = false;
          break;
        }
        digit[d] = 0;
        set[d](0);
      }
      if (wrapped) break;
    }
  }
}

struct ModelCheck {
  bool model = false;
  std::optional<Formula> counterexample;  // first SAx formula with SAx(A) > D(A)
  ValidationReport hedge_report;          // hedge axioms failing on the chain
};

namespace detail {

inline void require_closed_axioms(const Theory& theory) {
  for (const auto& a : theory.axioms())
    if (!is_closed(a.expanded))
      throw EvaluationError("special axiom " + print_formula(a.formula) + " is not closed");
}

inline bool satisfies(const Structure& s, const Theory& theory, std::optional<Formula>* failed = nullptr) {
  for (const auto& a : theory.axioms()) {
    if (eval_formula(s, a.expanded) < a.grade) {
      if (failed) *failed = a.formula;
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// D is a model of T iff SAx(A) <= D(A) for every special axiom and the hedge
/// model satisfies the hedge axioms on `chain`.
inline ModelCheck is_model(const Structure& s, const Theory& theory, const MVChain& chain) {
  detail::require_closed_axioms(theory);
  ModelCheck r;
  r.hedge_report = validate_axioms(s.hedges, chain);
  std::optional<Formula> failed;
  bool ok = detail::satisfies(s, theory, &failed);
  r.counterexample = failed;
  r.model = ok && r.hedge_report.passed();
  return r;
}

/// Same, on the coarsest chain containing every table value and axiom grade.
inline ModelCheck is_model(const Structure& s, const Theory& theory) {
  std::vector<TruthValue> vals;
  for (const auto& [_, tab] : s.predicates) vals.insert(vals.end(), tab.values.begin(), tab.values.end());
  for (const auto& a : theory.axioms()) vals.push_back(a.grade);
  return is_model(s, theory, MVChain(common_granularity(vals)));
}

struct DegreeResult {
  TruthValue degree = TruthValue::one();
  std::optional<Structure> witness;  // first structure attaining the minimum
  std::size_t models = 0;            // models visited
  bool hedges_valid = true;
};

inline Vocabulary vocabulary(const Theory& theory, const Formula& goal) {
  Vocabulary v;
  v.add(theory.symbols());
  for (const auto& a : theory.axioms()) v.add(a.expanded);
  v.add(goal);
  return v;
}

/// min D(goal) over the models D of `theory` with domain size <= max_domain
/// and tables valued in `chain`; 1 when there are none. This is the degree
/// relative to that class of structures, an upper bound on the [0,1] degree.
inline DegreeResult sem_degree(const Theory& theory, const Formula& goal, const MVChain& chain, const HedgeModel& hedges,
                               const EnumerationOptions& opt = {}) {
  detail::require_closed_axioms(theory);
  if (!is_closed(goal)) throw EvaluationError("goal " + print_formula(goal) + " is not closed");
  DegreeResult r;
  if (!validate_axioms(hedges, chain).passed()) {
    r.hedges_valid = false;
    return r;
  }
  const Formula g = expand(goal);
  bool any = false;
  for_each_structure(vocabulary(theory, g), chain, hedges, opt, [&](const Structure& s) {
    if (!detail::satisfies(s, theory)) return true;
    ++r.models;
    TruthValue v = eval_formula(s, g);
    if (!any || v < r.degree) {
      r.degree = v;
      r.witness = s;
      any = true;
    }
    return !r.degree.is_zero();
  });
  return r;
}

inline DegreeResult sem_degree(const Theory& theory, const Formula& goal, const MVChain& chain,
                               const EnumerationOptions& opt = {}) {
  return sem_degree(theory, goal, chain, HedgeModel::identity(theory.signature()), opt);
}

/// a such that the formula is an a-tautology, relative to the enumerated class.
inline DegreeResult tautology_degree(const Formula& a, const MVChain& chain, const HedgeModel& hedges,
                                     const EnumerationOptions& opt = {}) {
  return sem_degree(Theory(hedges.signature()), a, chain, hedges, opt);
}

inline DegreeResult tautology_degree(const Formula& a, const MVChain& chain, const EnumerationOptions& opt = {}) {
  return tautology_degree(a, chain, HedgeModel(), opt);
}

struct LemmaCheck {
  bool holds = false;       // D(a) <= D(b) in every enumerated structure
  bool consistent = false;  // agrees with tautology_degree(a -> b) == 1
  std::optional<Structure> witness;  // a structure with D(a) > D(b)
};

/// Cross-checks |= a -> b against the pointwise inequality D(a) <= D(b).
inline LemmaCheck check_equivalence_lemma(const Formula& a, const Formula& b, const MVChain& chain,
                                          const HedgeModel& hedges, const EnumerationOptions& opt = {}) {
  if (!is_closed(a) || !is_closed(b)) throw EvaluationError("formulas must be closed");
  const Formula ea = expand(a), eb = expand(b);
  LemmaCheck r;
  r.holds = true;
  if (validate_axioms(hedges, chain).passed()) {
    Vocabulary v;
    v.add(ea);
    v.add(eb);
    for_each_structure(v, chain, hedges, opt, [&](const Structure& s) {
      if (eval_formula(s, ea) > eval_formula(s, eb)) {
        r.holds = false;
        r.witness = s;
        return false;
      }
      return true;
    });
  }
  bool taut = tautology_degree(Formula::implies(ea, eb), chain, hedges, opt).degree.is_one();
  r.consistent = taut == r.holds;
  return r;
}

inline LemmaCheck check_equivalence_lemma(const Formula& a, const Formula& b, const MVChain& chain,
                                          const EnumerationOptions& opt = {}) {
  return check_equivalence_lemma(a, b, chain, HedgeModel(), opt);
}

}  // namespace fln
