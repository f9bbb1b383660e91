#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fln/axioms.hpp"
#include "fln/proof.hpp"
#include "fln/theory.hpp"
#include "fln/universe.hpp"

namespace fln {

inline constexpr std::size_t kDefaultBudget = 100000;
inline constexpr int kDefaultDepth = 1;

/// One derivation recorded during saturation. Premises refer to earlier
/// events, so the log is a DAG from which proofs can be read off.
struct Derivation {
  std::size_t target;  // universe index
  TruthValue grade;
  Justification why;   // premise indices here are event ids, not step numbers
};

/// Best known grades over a finite universe (a restriction of the fuzzy set
/// of syntactic consequences).
class GradedMap {
public:
  GradedMap() = default;
  explicit GradedMap(std::vector<Formula> universe) : universe_(std::move(universe)) {
    for (std::size_t i = 0; i < universe_.size(); ++i) index_.emplace(universe_[i], i);
    grades_.assign(universe_.size(), TruthValue::zero());
    best_.assign(universe_.size(), kNone);
  }

  const std::vector<Formula>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }

  std::optional<std::size_t> index_of(const Formula& f) const {
    auto it = index_.find(is_expanded(f) ? f : expand(f));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Formula& f) const { return index_of(f).has_value(); }

  const TruthValue& grade(std::size_t i) const { return grades_.at(i); }
  TruthValue grade(const Formula& f) const {
    auto i = index_of(f);
    return i ? grades_[*i] : TruthValue::zero();
  }

  bool fixpoint() const { return fixpoint_; }
  std::size_t attempts() const { return attempts_; }
  const std::vector<Derivation>& derivations() const { return events_; }

  /// Linear proof of universe member i attaining its current grade.
  Proof proof(std::size_t i) const {
    Proof p;
    std::map<std::size_t, std::size_t> step_of;  // event id -> step number
    std::function<std::size_t(std::size_t)> emit = [&](std::size_t ev) -> std::size_t {
      if (auto it = step_of.find(ev); it != step_of.end()) return it->second;
      const Derivation& d = events_[ev];
      Justification why = d.why;
      for (auto& prem : why.premises) prem = emit(prem);
      p.steps.push_back({{d.grade, universe_[d.target]}, why});
      return step_of[ev] = p.steps.size();
    };
    emit(best_.at(i));
    return p;
  }
  Proof proof(const Formula& f) const {
    auto i = index_of(f);
    if (!i) throw Error("formula is not in the saturation universe");
    return proof(*i);
  }

private:
  friend GradedMap saturate(const Theory&, std::vector<Formula>, std::size_t);
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  /// Records the derivation if it improves the target; returns whether it did.
  bool offer(std::size_t target, TruthValue grade, Justification why) {
    if (best_[target] != kNone && grade <= grades_[target]) return false;
    grades_[target] = grade;
    best_[target] = events_.size();
    events_.push_back({target, std::move(grade), std::move(why)});
    return true;
  }

  std::vector<Formula> universe_;
  std::map<Formula, std::size_t> index_;
  std::vector<TruthValue> grades_;
  std::vector<std::size_t> best_;
  std::vector<Derivation> events_;
  bool fixpoint_ = false;
  std::size_t attempts_ = 0;
};

/// Least fixpoint of MP, G and LC over `universe`, starting from the leaf grades
/// max(SAx, LAx). Conclusions outside the universe are discarded. `budget`
/// bounds the number of rule applications tried; if it runs out the map is
/// returned with fixpoint() == false.
inline GradedMap saturate(const Theory& theory, std::vector<Formula> universe, std::size_t budget = kDefaultBudget) {
  for (auto& f : universe)
    if (!is_expanded(f)) f = expand(f);
  GradedMap m(std::move(universe));
  const auto& U = m.universe_;
  const std::size_t n = U.size();
  const auto& sig = theory.signature();

  // Premise-to-conclusion wiring, fixed by the universe.
  std::vector<std::vector<std::size_t>> as_antecedent(n), as_body(n), as_consequent(n);
  std::vector<std::optional<std::size_t>> lhs(n), rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Formula& f = U[j];
    if (f.op() == Op::Implies) {
      lhs[j] = m.index_of(f.lhs());
      rhs[j] = m.index_of(f.rhs());
      if (lhs[j] && rhs[j]) as_antecedent[*lhs[j]].push_back(j);
      if (rhs[j] && f.lhs().op() == Op::Constant) as_consequent[*rhs[j]].push_back(j);
    } else if (f.op() == Op::Forall) {
      if (auto b = m.index_of(f.body())) as_body[*b].push_back(j);
    }
  }

  std::deque<std::size_t> queue;
  std::vector<bool> queued(n, false);
  auto push = [&](std::size_t i) {
    if (!queued[i]) {
      queued[i] = true;
      queue.push_back(i);
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    TruthValue s = theory.sax(U[i]);
    LaxGrade l = lax_grade(U[i], sig);
    if (l.match && l.grade >= s)
      m.offer(i, l.grade, Justification::logical(l.match->schema));
    else
      m.offer(i, s, Justification::special());
    push(i);
  }

  auto try_rule = [&](std::size_t target, TruthValue grade, Justification why) -> bool {
    if (m.attempts_ >= budget) return false;
    ++m.attempts_;
    if (m.offer(target, std::move(grade), std::move(why))) push(target);
    return true;
  };

  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    queued[i] = false;
    const std::size_t ev_i = m.best_[i];
    bool ok = true;
    // i as minor premise of MP
    for (std::size_t j : as_antecedent[i]) {
      ok = ok && try_rule(*rhs[j], luk_and(m.grades_[i], m.grades_[j]), Justification::mp(ev_i, m.best_[j]));
    }
    // i as major premise of MP
    if (lhs[i] && rhs[i])
      ok = ok && try_rule(*rhs[i], luk_and(m.grades_[*lhs[i]], m.grades_[i]), Justification::mp(m.best_[*lhs[i]], ev_i));
    for (std::size_t j : as_body[i])
      ok = ok && try_rule(j, m.grades_[i], Justification::gen(ev_i, U[j].name()));
    for (std::size_t j : as_consequent[i]) {
      const TruthValue& a = U[j].lhs().value();
      ok = ok && try_rule(j, luk_imp(a, m.grades_[i]), Justification::lc(ev_i, a));
    }
    if (!ok) {
      m.fixpoint_ = false;
      return m;
    }
  }
  m.fixpoint_ = true;
  return m;
}

struct BoundResult {
  TruthValue bound;
  Proof proof;
  bool fixpoint = false;
};

/// Certified lower bound on the provability degree of `goal`, with a proof
/// whose value equals the bound.
inline BoundResult provability_lower_bound(const Theory& theory, const Formula& goal, int depth = kDefaultDepth,
                                           std::size_t budget = kDefaultBudget) {
  std::vector<Formula> seed = theory.support();
  seed.push_back(goal);
  std::set<TruthValue> consts = theory.constants();
  collect_constants(expand(goal), consts);
  GradedMap m = saturate(theory, subformula_universe(seed, consts, depth), budget);
  std::size_t g = *m.index_of(goal);
  return {m.grade(g), m.proof(g), m.fixpoint()};
}

struct Contradiction {
  Formula formula;
  TruthValue degree;  // bound(A) ⊗ bound(¬A)
  Proof positive;
  Proof negative;
};

struct ConsistencyResult {
  std::optional<Contradiction> witness;
  bool fixpoint = false;
};

/// Searches the subformula universe of the theory, closed under one negation,
/// for a formula A other than a truth constant with bound(A) ⊗ bound(¬A) > 0. Without a witness the answer
/// only certifies consistency relative to that universe.
inline ConsistencyResult detect_contradiction(const Theory& theory, int depth = kDefaultDepth,
                                              std::size_t budget = kDefaultBudget) {
  std::vector<Formula> base = subformula_universe(theory.support(), theory.constants(), depth);
  std::set<Formula, UniverseOrder> all(base.begin(), base.end());
  all.insert(Formula::constant(TruthValue::zero()));
  for (const auto& a : base) all.insert(neg_primitive(a));
  GradedMap m = saturate(theory, {all.begin(), all.end()}, budget);
  ConsistencyResult r;
  r.fixpoint = m.fixpoint();
  for (const auto& a : base) {
    if (a.op() == Op::Constant) continue;  // #0 itself is never the reported witness
    Formula na = neg_primitive(a);
    TruthValue d = luk_and(m.grade(a), m.grade(na));
    if (!d.is_zero()) {
      r.witness = Contradiction{a, d, m.proof(a), m.proof(na)};
      break;
    }
  }
  return r;
}

}  // namespace fln
