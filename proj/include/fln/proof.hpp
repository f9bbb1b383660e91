#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/axioms.hpp"
#include "fln/parser.hpp"
#include "fln/printer.hpp"
#include "fln/theory.hpp"

namespace fln {

enum class Rule { MP, G, LC };

struct Justification {
  enum class Kind { Logical, Special, Rule };

  Kind kind = Kind::Special;
  Schema schema = Schema::CONST;       // Logical
  Rule rule = Rule::MP;                // Rule
  std::vector<std::size_t> premises;   // 1-based step numbers
  std::string variable;                // G
  TruthValue constant;                 // LC

  static Justification logical(Schema s) { return {Kind::Logical, s, Rule::MP, {}, {}, {}}; }
  static Justification special() { return {}; }
  static Justification mp(std::size_t i, std::size_t j) { return {Kind::Rule, Schema::CONST, Rule::MP, {i, j}, {}, {}}; }
  static Justification gen(std::size_t i, std::string x) {
    return {Kind::Rule, Schema::CONST, Rule::G, {i}, std::move(x), {}};
  }
  static Justification lc(std::size_t i, TruthValue a) { return {Kind::Rule, Schema::CONST, Rule::LC, {i}, {}, std::move(a)}; }
};

struct ProofStep {
  EvaluatedFormula conclusion;
  Justification why;
};

/// Sequence of evaluated formulas; its value is the grade of the last step.
struct Proof {
  std::vector<ProofStep> steps;

  const TruthValue& value() const { return steps.back().conclusion.grade; }
  const Formula& conclusion() const { return steps.back().conclusion.formula; }
  bool empty() const { return steps.empty(); }
};

/// a/A, b/(A -> B)  ⊢  (a ⊗ b)/B
inline EvaluatedFormula apply_mp(const EvaluatedFormula& minor, const EvaluatedFormula& major) {
  const Formula& imp = major.formula;
  if (imp.op() != Op::Implies) throw RuleError("modus ponens: second premise is not an implication");
  if (imp.lhs() != minor.formula) throw RuleError("modus ponens: antecedent does not match first premise");
  return {luk_and(minor.grade, major.grade), imp.rhs()};
}

/// a/A  ⊢  a/(forall x. A)
inline EvaluatedFormula apply_gen(const EvaluatedFormula& premise, const std::string& x) {
  if (!is_variable_name(x)) throw RuleError("generalization: '" + x + "' is not a variable");
  return {premise.grade, Formula::forall(x, premise.formula)};
}

/// b/A  ⊢  (a ⇒ b)/(#a -> A)
inline EvaluatedFormula apply_lc(const EvaluatedFormula& premise, const TruthValue& a) {
  return {luk_imp(a, premise.grade), Formula::implies(Formula::constant(a), premise.formula)};
}

struct RuleParams {
  std::string variable;
  std::optional<Rational> constant;
};

inline EvaluatedFormula apply_rule(Rule rule, const std::vector<EvaluatedFormula>& premises,
                                   const RuleParams& params = {}) {
  switch (rule) {
    case Rule::MP:
      if (premises.size() != 2) throw RuleError("modus ponens takes two premises");
      return apply_mp(premises[0], premises[1]);
    case Rule::G:
      if (premises.size() != 1) throw RuleError("generalization takes one premise");
      return apply_gen(premises[0], params.variable);
    case Rule::LC:
      if (premises.size() != 1) throw RuleError("constant introduction takes one premise");
      if (!params.constant || *params.constant < 0 || *params.constant > 1)
        throw RuleError("constant introduction parameter must lie in [0,1]");
      return apply_lc(premises[0], TruthValue(*params.constant));
  }
  throw RuleError("unknown rule");
}

/// Verifies every step against LAx ∪ SAx and the rules and returns the proof's
/// value. A leaf may claim less than its axiom grade, never more; logical
/// leaves must name a schema the formula instantiates and claim its full grade.
inline TruthValue check_proof(const Proof& p, const Theory& theory) {
  if (p.steps.empty()) throw ProofError(0, "empty proof");
  const auto& sig = theory.signature();
  std::vector<Formula> expanded;
  for (std::size_t n = 1; n <= p.steps.size(); ++n) {
    const ProofStep& step = p.steps[n - 1];
    const Formula f = expand(step.conclusion.formula);
    const TruthValue& claimed = step.conclusion.grade;
    for (std::size_t i : step.why.premises) {
      if (i == 0 || i > p.steps.size()) throw ProofError(n, "invalid step index");
      if (i >= n) throw ProofError(n, "forward reference");
    }
    switch (step.why.kind) {
      case Justification::Kind::Logical: {
        auto m = match_schema(f, step.why.schema, sig);
        if (!m) throw ProofError(n, "schema match failure");
        TruthValue grade = step.why.schema == Schema::CONST ? f.value() : TruthValue::one();
        if (claimed != grade) throw ProofError(n, "grade mismatch");
        break;
      }
      case Justification::Kind::Special: {
        TruthValue allowed = join(theory.sax(f), lax_grade(f, sig).grade);
        if (claimed > allowed) throw ProofError(n, "grade mismatch");
        break;
      }
      case Justification::Kind::Rule: {
        std::vector<EvaluatedFormula> prem;
        for (std::size_t i : step.why.premises) prem.push_back({p.steps[i - 1].conclusion.grade, expanded[i - 1]});
        RuleParams params{step.why.variable, step.why.constant.rational()};
        EvaluatedFormula out;
        try {
          out = apply_rule(step.why.rule, prem, params);
        } catch (const RuleError&) {
          throw ProofError(n, "premise shape mismatch");
        }
        if (out.formula != f) throw ProofError(n, "premise shape mismatch");
        if (out.grade != claimed) throw ProofError(n, "grade mismatch");
        break;
      }
    }
    expanded.push_back(f);
  }
  return p.value();
}

inline std::string print_justification(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::Logical:
      return "lax(" + to_string(j.schema) + ")";
    case Justification::Kind::Special:
      return "sax";
    case Justification::Kind::Rule:
      switch (j.rule) {
        case Rule::MP:
          return "mp(" + std::to_string(j.premises.at(0)) + "," + std::to_string(j.premises.at(1)) + ")";
        case Rule::G:
          return "gen(" + std::to_string(j.premises.at(0)) + "," + j.variable + ")";
        case Rule::LC:
          return "lc(" + std::to_string(j.premises.at(0)) + "," + print_constant(j.constant) + ")";
      }
  }
  return {};
}

/// One line per step: `n. <grade> / <formula> ; <justification>`.
inline std::string print_proof(const Proof& p) {
  std::string out;
  for (std::size_t n = 1; n <= p.steps.size(); ++n) {
    const auto& s = p.steps[n - 1];
    out += std::to_string(n) + ". " + s.conclusion.grade.str() + " / " + print_formula(s.conclusion.formula) +
           " ; " + print_justification(s.why) + "\n";
  }
  return out;
}

namespace detail {

inline std::size_t parse_index(const std::string& s, const std::string& where) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(where + "bad step number '" + s + "'", 0);
  return static_cast<std::size_t>(std::stoul(s));
}

inline Justification parse_justification(const std::string& text, const std::string& where) {
  std::string t = strip_comment(text);
  if (t == "sax") return Justification::special();
  auto open = t.find('('), close = t.rfind(')');
  if (open == std::string::npos || close != t.size() - 1)
    throw ParseError(where + "bad justification '" + t + "'", 0);
  std::string head = t.substr(0, open);
  std::string inner = t.substr(open + 1, close - open - 1);
  auto comma = inner.find(',');
  auto arg0 = strip_comment(inner.substr(0, comma));
  auto arg1 = comma == std::string::npos ? std::string() : strip_comment(inner.substr(comma + 1));
  if (head == "lax") {
    auto s = schema_from_string(arg0);
    if (!s) throw ParseError(where + "unknown schema '" + arg0 + "'", 0);
    return Justification::logical(*s);
  }
  if (comma == std::string::npos) throw ParseError(where + "justification needs two arguments", 0);
  if (head == "mp") return Justification::mp(parse_index(arg0, where), parse_index(arg1, where));
  if (head == "gen") return Justification::gen(parse_index(arg0, where), arg1);
  if (head == "lc") {
    Formula c = parse_formula(arg1);
    if (c.op() != Op::Constant) throw ParseError(where + "lc parameter must be a truth constant", 0);
    return Justification::lc(parse_index(arg0, where), c.value());
  }
  throw ParseError(where + "unknown justification '" + head + "'", 0);
}

}  // namespace detail

inline Proof parse_proof(std::string_view text, const HedgeSignature& sig = {}) {
  Proof p;
  SymbolTable symbols;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::string where = "line " + std::to_string(lineno) + ": ";
    auto dot = line.find('.');
    if (dot == std::string::npos) throw ParseError(where + "expected step number", 0);
    std::size_t number = detail::parse_index(line.substr(0, dot), where);
    if (number != p.steps.size() + 1) throw ParseError(where + "steps must be numbered consecutively from 1", 0);
    std::string rest = line.substr(dot + 1);
    auto semi = rest.rfind(';');
    if (semi == std::string::npos) throw ParseError(where + "expected '; <justification>'", 0);
    std::string body = rest.substr(0, semi);
    auto slash = body.find(" / ");
    if (slash == std::string::npos) throw ParseError(where + "expected '<grade> / <formula>'", 0);
    TruthValue grade;
    try {
      grade = TruthValue::parse(strip_comment(body.substr(0, slash)));
    } catch (const RangeError& e) {
      throw ParseError(where + e.what(), dot + 1);
    }
    Formula f;
    try {
      f = parse_formula(body.substr(slash + 3), sig, symbols);
    } catch (const ParseError& e) {
      throw ParseError(where + e.message(), dot + 1 + slash + 3 + e.offset());
    }
    p.steps.push_back({{grade, f}, detail::parse_justification(rest.substr(semi + 1), where)});
  }
  if (p.steps.empty()) throw ParseError("proof has no steps", 0);
  return p;
}

}  // namespace fln
