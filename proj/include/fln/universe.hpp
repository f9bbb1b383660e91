#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "fln/formula.hpp"

namespace fln {

/// Orders by size first, then structurally.
struct UniverseOrder {
  bool operator()(const Formula& a, const Formula& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return compare(a, b) < 0;
  }
};

/// Finite formula universe for saturation: the subformula closure of the
/// expanded seed, extended `depth` times with c -> A for every truth constant c
/// in `consts` and with forall x. A for every free variable x of A.
inline std::vector<Formula> subformula_universe(const std::vector<Formula>& seed,
                                                const std::set<TruthValue>& consts, int depth) {
  std::set<Formula, UniverseOrder> u;
  auto close = [&](const Formula& f) {
    std::vector<Formula> subs;
    subformulas(f, subs);
    u.insert(subs.begin(), subs.end());
  };
  for (const auto& f : seed) close(expand(f));
  for (int d = 0; d < depth; ++d) {
    std::vector<Formula> snapshot(u.begin(), u.end());
    for (const auto& a : consts) u.insert(Formula::constant(a));
    for (const auto& f : snapshot) {
      for (const auto& a : consts) u.insert(Formula::implies(Formula::constant(a), f));
      for (const auto& x : free_vars(f)) u.insert(Formula::forall(x, f));
    }
  }
  return {u.begin(), u.end()};
}

}  // namespace fln
