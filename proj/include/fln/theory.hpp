#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/formula.hpp"
#include "fln/parser.hpp"
#include "fln/printer.hpp"
#include "fln/signature.hpp"

namespace fln {

/// Graded formula a/A.
struct EvaluatedFormula {
  TruthValue grade;
  Formula formula;
};

struct SpecialAxiom {
  Formula formula;   // as written
  Formula expanded;
  TruthValue grade;
};

/// A fuzzy theory: hedge signature plus the fuzzy set of special axioms.
/// Axioms are keyed by their expanded form; absent formulas have grade 0.
class Theory {
public:
  Theory() = default;
  explicit Theory(HedgeSignature sig) : signature_(std::move(sig)) {}

  const HedgeSignature& signature() const { return signature_; }
  void set_signature(HedgeSignature sig) { signature_ = std::move(sig); }

  SymbolTable& symbols() { return symbols_; }
  const SymbolTable& symbols() const { return symbols_; }

  /// Adds a/A; a formula already present keeps the larger grade.
  void add(const Formula& f, const TruthValue& grade) {
    symbols_.declare(f);
    Formula e = expand(f);
    auto it = index_.find(e);
    if (it == index_.end()) {
      index_.emplace(e, axioms_.size());
      axioms_.push_back({f, e, grade});
    } else if (axioms_[it->second].grade < grade) {
      axioms_[it->second].grade = grade;
    }
  }

  TruthValue sax(const Formula& f) const {
    auto it = index_.find(is_expanded(f) ? f : expand(f));
    return it == index_.end() ? TruthValue::zero() : axioms_[it->second].grade;
  }

  const std::vector<SpecialAxiom>& axioms() const { return axioms_; }
  bool empty() const { return axioms_.empty(); }

  std::vector<Formula> support() const {
    std::vector<Formula> out;
    for (const auto& a : axioms_) out.push_back(a.expanded);
    return out;
  }

  /// Truth constants occurring inside axiom formulas.
  std::set<TruthValue> constants() const {
    std::set<TruthValue> out;
    for (const auto& a : axioms_) collect_constants(a.expanded, out);
    return out;
  }

private:
  HedgeSignature signature_;
  SymbolTable symbols_;
  std::vector<SpecialAxiom> axioms_;
  std::map<Formula, std::size_t> index_;
};

/// Theory file: optional signature header lines, then `grade : formula` lines.
/// A header inside the file replaces `sig`.
inline Theory parse_theory(std::string_view text, const HedgeSignature& sig = {}) {
  Theory th(sig);
  HedgeSignature header;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  bool seen_axiom = false, seen_header = false;
  auto commit_header = [&] {
    if (!seen_header) return;
    header.validate();
    th.set_signature(header);
    seen_header = false;
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (!seen_axiom && apply_signature_line(line, header)) {
      seen_header = true;
      continue;
    }
    commit_header();
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(where() + "expected 'grade : formula'", 0);
    std::string grade_text = strip_comment(line.substr(0, colon));
    TruthValue grade;
    try {
      grade = TruthValue::parse(grade_text);
    } catch (const RangeError& e) {
      throw RangeError(where() + e.what());
    }
    std::string body = line.substr(colon + 1);
    Formula f;
    try {
      f = parse_formula(body, th.signature(), th.symbols());
    } catch (const ParseError& e) {
      throw ParseError(where() + e.message(), colon + 1 + e.offset());
    }
    th.add(f, grade);
    seen_axiom = true;
  }
  commit_header();
  return th;
}

inline std::string print_theory(const Theory& th) {
  std::string out = print_signature(th.signature());
  for (const auto& a : th.axioms()) out += a.grade.str() + " : " + print_formula(a.formula) + "\n";
  return out;
}

}  // namespace fln
