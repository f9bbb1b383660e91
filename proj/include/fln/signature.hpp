#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fln/error.hpp"

namespace fln {

/// H: hedges without duals. DH: s_i and d_i paired for i = 1..n.
enum class HedgeMode { H, DH };

inline std::string to_string(HedgeMode m) { return m == HedgeMode::H ? "h" : "dh"; }

enum class HedgeKind { Stresser, Depresser };

/// Hedge connectives of the language in strength order: stressers[0] is s_1,
/// depressers[0] is d_1. The identities s_0 and d_0 are implicit.
struct HedgeSignature {
  HedgeMode mode = HedgeMode::H;
  std::vector<std::string> stressers;
  std::vector<std::string> depressers;

  HedgeSignature() = default;
  HedgeSignature(HedgeMode m, std::vector<std::string> s, std::vector<std::string> d)
      : mode(m), stressers(std::move(s)), depressers(std::move(d)) {
    validate();
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto* list : {&stressers, &depressers})
      for (const auto& n : *list) {
        if (n.empty()) throw SymbolError("empty hedge name");
        if (n == "forall" || n == "exists") throw SymbolError("hedge name '" + n + "' is reserved");
        if (!seen.insert(n).second) throw SymbolError("duplicate hedge name '" + n + "'");
      }
    if (mode == HedgeMode::DH && stressers.size() != depressers.size())
      throw SymbolError("dual-hedge mode needs as many stressers as depressers");
  }

  bool contains(const std::string& name) const { return kind_of(name).has_value(); }

  std::optional<HedgeKind> kind_of(const std::string& name) const {
    if (std::find(stressers.begin(), stressers.end(), name) != stressers.end())
      return HedgeKind::Stresser;
    if (std::find(depressers.begin(), depressers.end(), name) != depressers.end())
      return HedgeKind::Depresser;
    return std::nullopt;
  }

  /// 1-based strength index within its kind; 0 when undeclared.
  std::size_t index_of(const std::string& name) const {
    for (const auto* list : {&stressers, &depressers}) {
      auto it = std::find(list->begin(), list->end(), name);
      if (it != list->end()) return static_cast<std::size_t>(it - list->begin()) + 1;
    }
    return 0;
  }

  std::vector<std::string> all() const {
    std::vector<std::string> out = stressers;
    out.insert(out.end(), depressers.begin(), depressers.end());
    return out;
  }

  friend bool operator==(const HedgeSignature&, const HedgeSignature&) = default;
};

}  // namespace fln
