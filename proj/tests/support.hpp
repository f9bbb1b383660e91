#pragma once

#include <random>
#include <string>
#include <vector>

#include "fln/fln.hpp"

namespace fln::test {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline TruthValue chain_value(Rng& rng, int k) { return TruthValue(uniform(rng, 0, k), k); }

/// Integer oracle on Ł_k numerators: ops on i/k computed without rationals.
struct ChainOracle {
  int k;
  int conj(int a, int b) const { return std::max(0, a + b - k); }
  int imp(int a, int b) const { return std::min(k, k - a + b); }
  int neg(int a) const { return k - a; }
  int disj(int a, int b) const { return std::min(k, a + b); }
  int bires(int a, int b) const { return k - (a > b ? a - b : b - a); }
  TruthValue value(int a) const { return TruthValue(a, k); }
};

struct GenOptions {
  HedgeSignature sig;
  bool quantifiers = true;
  bool sugar = true;
  bool hedges = true;
  bool terms = true;     // predicates with arguments
  int atoms = 3;         // propositional atoms P, Q, R ...
  int const_den = 10;
};

/// Random formulas over a small vocabulary: 0-ary P, Q, R, unary F, binary G,
/// object constants u and v, unary function f.
class FormulaGen {
public:
  FormulaGen(Rng& rng, GenOptions opt) : rng_(rng), opt_(std::move(opt)) {}

  Formula formula(int depth) {
    std::vector<std::string> scope;
    return gen(depth, scope);
  }

  Term term(std::vector<std::string>& scope, int depth) {
    int c = uniform(rng_, 0, depth > 0 ? 3 : 2);
    if (c == 0 && !scope.empty()) return Term::var(scope[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(scope.size()) - 1))]);
    if (c == 1) return Term::constant(uniform(rng_, 0, 1) ? "u" : "v");
    if (c == 3) return Term::apply("f", {term(scope, depth - 1)});
    if (!scope.empty()) return Term::var(scope.back());
    return Term::constant("u");
  }

  Formula atom(std::vector<std::string>& scope) {
    int c = uniform(rng_, 0, opt_.terms ? 5 : 3);
    if (c == 0) return Formula::constant(chain_value(rng_, opt_.const_den));
    if (c <= 3 || !opt_.terms) {
      static const char* names[] = {"P", "Q", "R", "S", "T"};
      return Formula::predicate(names[uniform(rng_, 0, opt_.atoms - 1)]);
    }
    if (c == 4) return Formula::predicate("F", {term(scope, 1)});
    return Formula::predicate("G", {term(scope, 1), term(scope, 0)});
  }

  Formula gen(int depth, std::vector<std::string>& scope) {
    if (depth <= 0) return atom(scope);
    std::vector<int> kinds = {0, 1, 1, 2};
    if (opt_.sugar) kinds.insert(kinds.end(), {3, 4, 5, 6, 7, 8, 9, 10, 11});
    if (opt_.quantifiers) kinds.insert(kinds.end(), {12, 13});
    auto hedges = opt_.sig.all();
    if (opt_.hedges && !hedges.empty()) kinds.insert(kinds.end(), {14, 14});
    int k = kinds[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(kinds.size()) - 1))];
    auto sub = [&] { return gen(depth - 1, scope); };
    switch (k) {
      case 0: return atom(scope);
      case 1: { auto a = sub(); return Formula::implies(a, sub()); }
      case 2: return Formula::implies(sub(), Formula::constant(TruthValue::zero()));
      case 3: return Formula::negation(sub());
      case 4: { auto a = sub(); return Formula::conj(a, sub()); }
      case 5: { auto a = sub(); return Formula::disj(a, sub()); }
      case 6: { auto a = sub(); return Formula::meet(a, sub()); }
      case 7: { auto a = sub(); return Formula::join(a, sub()); }
      case 8: { auto a = sub(); return Formula::equiv(a, sub()); }
      case 9: return Formula::power(sub(), uniform(rng_, 1, 3));
      case 10: return Formula::multiple(sub(), uniform(rng_, 1, 3));
      case 11: return Formula::negation(Formula::negation(sub()));
      case 12:
      case 13: {
        std::string x = std::string(1, "xyzw"[uniform(rng_, 0, 3)]);
        if (uniform(rng_, 0, 2) == 0) x += std::to_string(uniform(rng_, 1, 2));
        scope.push_back(x);
        Formula body = sub();
        scope.pop_back();
        return k == 12 ? Formula::forall(x, body) : Formula::exists(x, body);
      }
      default: {
        const auto& h = hedges[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(hedges.size()) - 1))];
        return Formula::hedge(h, sub());
      }
    }
  }

private:
  Rng& rng_;
  GenOptions opt_;
};

inline Formula P(const char* name) { return Formula::predicate(name); }
inline Formula C(long n, long d) { return Formula::constant(TruthValue(n, d)); }
inline Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
inline TruthValue tv(long n, long d = 1) { return TruthValue(n, d); }

/// Propositional structure with the given atom values.
inline Structure prop_structure(const std::vector<std::pair<std::string, TruthValue>>& atoms, HedgeModel h = {}) {
  Structure s;
  s.domain = {"d1"};
  for (const auto& [n, v] : atoms) s.predicates[n] = {0, {v}};
  s.hedges = std::move(h);
  return s;
}

}  // namespace fln::test
