#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fln/axioms.hpp"
#include "fln/hedge.hpp"
#include "fln/parser.hpp"
#include "fln/printer.hpp"
#include "fln/proof.hpp"
#include "fln/saturation.hpp"
#include "fln/semantics.hpp"
#include "fln/structure.hpp"
#include "fln/theory.hpp"

namespace fln::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kParse = 2, kBudget = 3, kSearchSpace = 4 };

enum class Format { Human, Tsv };

struct RunConfig {
  std::string command;
  std::string sig_path;
  std::string theory_path;
  std::string hedges_path;
  std::string structure_path;
  std::string proof_path;
  std::string goal;
  int chain = kDefaultChain;
  int max_domain = kDefaultMaxDomain;
  int depth = kDefaultDepth;
  std::size_t budget = kDefaultBudget;
  Format format = Format::Human;
  bool no_sugar = false;

  void validate() const {
    if (chain < 1) throw Error("--chain must be at least 1");
    if (max_domain < 1) throw Error("--max-domain must be at least 1");
    if (depth < 0) throw Error("--depth must be non-negative");
    if (budget < 1) throw Error("--budget must be at least 1");
  }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"parse",     "prove",           "check-proof", "eval",
                                                 "sem-degree", "tautology",      "validate-hedges",
                                                 "consistency", "boundaries"};
  return names;
}

/// Input problems that map to exit code 2.
class UsageError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inputs shared by the commands, loaded lazily from the config.
class Context {
public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

  std::optional<HedgeModel> hedge_file() {
    if (cfg_.hedges_path.empty()) return std::nullopt;
    if (!hedges_) hedges_ = parse_hedge_model(read_file(cfg_.hedges_path));
    return hedges_;
  }

  HedgeSignature signature() {
    if (!cfg_.sig_path.empty()) return parse_signature(read_file(cfg_.sig_path));
    if (auto h = hedge_file()) return h->signature();
    return {};
  }

  Theory& theory() {
    if (!theory_) {
      HedgeSignature sig = signature();
      theory_ = cfg_.theory_path.empty() ? Theory(sig) : parse_theory(read_file(cfg_.theory_path), sig);
    }
    return *theory_;
  }

  /// The goal is parsed against the theory so that arities stay consistent.
  Formula goal() {
    if (cfg_.goal.empty()) throw UsageError("no goal formula given");
    Theory& th = theory();
    return parse_formula(cfg_.goal, th.signature(), th.symbols());
  }

  /// Hedge truth functions for semantic commands: the hedge file when given,
  /// identity functions otherwise.
  HedgeModel hedges() {
    const HedgeSignature& sig = theory().signature();
    if (auto h = hedge_file()) {
      if (!(h->signature() == sig))
        throw UsageError("hedge file declares a different hedge signature than the theory");
      return *h;
    }
    return HedgeModel::identity(sig);
  }

  const RunConfig& config() const { return cfg_; }

private:
  const RunConfig& cfg_;
  std::optional<HedgeModel> hedges_;
  std::optional<Theory> theory_;
};

inline bool tsv(const RunConfig& c) { return c.format == Format::Tsv; }

inline void print_violations(const ValidationReport& r, const RunConfig& cfg, std::ostream& out) {
  for (const auto& v : r.violations) {
    if (tsv(cfg)) {
      std::string in;
      for (std::size_t i = 0; i < v.inputs.size(); ++i) in += (i ? "," : "") + v.inputs[i].str();
      out << "VIOLATION\t" << v.property << '\t' << v.subject << '\t' << in << '\t' << v.value.str() << '\n';
    } else {
      out << format_violation(v) << '\n';
    }
  }
}

inline int cmd_parse(Context& ctx, std::ostream& out) {
  Formula f = parse_formula(ctx.config().goal, ctx.signature());
  if (ctx.config().no_sugar) f = expand(f);
  out << print_formula(f) << '\n';
  return kPass;
}

inline int cmd_prove(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  Formula goal = ctx.goal();
  BoundResult r = provability_lower_bound(ctx.theory(), goal, cfg.depth, cfg.budget);
  if (tsv(cfg)) {
    out << "BOUND\t" << r.bound.str() << '\t' << (r.fixpoint ? "yes" : "no") << '\n';
  } else {
    out << "BOUND " << r.bound.str() << '\n' << "FIXPOINT " << (r.fixpoint ? "yes" : "no") << '\n';
    out << print_proof(r.proof);
  }
  return !r.fixpoint && r.bound.is_zero() ? kBudget : kPass;
}

inline int cmd_check_proof(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  if (cfg.proof_path.empty()) throw UsageError("check-proof needs a proof file");
  Theory& th = ctx.theory();
  Proof p = parse_proof(read_file(cfg.proof_path), th.signature());
  try {
    TruthValue v = check_proof(p, th);
    out << (tsv(cfg) ? "VAL\t" : "VAL ") << v.str() << '\n';
    return kPass;
  } catch (const ProofError& e) {
    if (tsv(cfg))
      out << "INVALID\t" << e.step() << '\t' << e.reason() << '\n';
    else
      out << "INVALID step " << e.step() << ": " << e.reason() << '\n';
    return kViolation;
  }
}

inline void print_degree(const TruthValue& d, const RunConfig& cfg, std::ostream& out) {
  out << (tsv(cfg) ? "DEGREE\t" : "DEGREE ") << d.str() << '\n';
}

inline int cmd_eval(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  if (cfg.structure_path.empty()) throw UsageError("eval needs --structure");
  auto base = std::filesystem::path(cfg.structure_path).parent_path();
  Structure s = parse_structure(read_file(cfg.structure_path), [&](const std::string& file) {
    auto p = std::filesystem::path(file);
    return parse_hedge_model(read_file((p.is_absolute() ? p : base / p).string()));
  });
  if (auto h = ctx.hedge_file()) s.hedges = *h;
  Formula goal = parse_formula(cfg.goal, s.hedges.signature());
  if (!is_closed(goal)) throw UsageError("goal must be closed");
  print_degree(eval_formula(s, goal), cfg, out);
  return kPass;
}

inline int cmd_sem_degree(Context& ctx, std::ostream& out, bool tautology) {
  const auto& cfg = ctx.config();
  if (tautology && !cfg.theory_path.empty()) throw UsageError("tautology takes no theory");
  Formula goal = ctx.goal();
  if (!is_closed(goal)) throw UsageError("goal must be closed");
  EnumerationOptions opt{cfg.max_domain, kDefaultSearchLimit};
  MVChain chain(cfg.chain);
  DegreeResult r = sem_degree(ctx.theory(), goal, chain, ctx.hedges(), opt);
  print_degree(r.degree, cfg, out);
  if (tsv(cfg)) return kPass;
  if (!r.hedges_valid) {
    out << "NO MODELS (hedge functions violate the hedge axioms on the chain)\n";
  } else if (!r.witness) {
    out << "NO MODELS\n";
  } else if (!tautology) {
    out << "WITNESS\n" << print_structure(*r.witness);
  }
  return kPass;
}

inline int cmd_validate_hedges(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  auto model = ctx.hedge_file();
  if (!model) throw UsageError("validate-hedges needs --hedges");
  MVChain chain(cfg.chain);
  ValidationReport all;
  all.append(validate_shapes(*model));
  all.append(validate_axioms(*model, chain));
  if (model->signature().mode == HedgeMode::DH) all.append(boundaries(*model, chain).report);
  if (!tsv(cfg))
    for (const auto& h : model->signature().all())
      out << "HEDGE " << h << " fitting " << fitting_constant(model->at(h)) << '\n';
  print_violations(all, cfg, out);
  if (all.passed()) out << "PASS\n";
  else if (!tsv(cfg)) out << "FAIL " << all.violations.size() << " violations\n";
  return all.passed() ? kPass : kViolation;
}

inline int cmd_consistency(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  ConsistencyResult r = detect_contradiction(ctx.theory(), cfg.depth, cfg.budget);
  if (r.witness) {
    const auto& w = *r.witness;
    if (tsv(cfg)) {
      out << "CONTRADICTORY\t" << print_formula(w.formula) << '\t' << w.degree.str() << '\n';
    } else {
      out << "CONTRADICTORY " << print_formula(w.formula) << " deg " << w.degree.str() << '\n';
      out << "PROOF " << print_formula(w.formula) << '\n' << print_proof(w.positive);
      out << "PROOF " << print_formula(neg_primitive(w.formula)) << '\n' << print_proof(w.negative);
    }
    return kViolation;
  }
  if (!r.fixpoint) {
    out << (tsv(cfg) ? "UNDECIDED\tbudget" : "UNDECIDED (budget exhausted)") << '\n';
    return kBudget;
  }
  out << (tsv(cfg) ? "CONSISTENT\tuniverse-relative" : "CONSISTENT (universe-relative)") << '\n';
  return kPass;
}

inline int cmd_boundaries(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config();
  auto model = ctx.hedge_file();
  if (!model) throw UsageError("boundaries needs --hedges");
  if (model->signature().mode != HedgeMode::DH) throw UsageError("boundaries needs a mode dh hedge file");
  BoundaryReport r = boundaries(*model, MVChain(cfg.chain));
  for (const auto& env : r.envelopes) {
    if (!tsv(cfg)) out << "ENVELOPE " << env.hedge << "\n  x lower upper value\n";
    for (const auto& row : env.rows) {
      if (tsv(cfg))
        out << "ROW\t" << env.hedge << '\t' << row.x.str() << '\t' << row.lower.str() << '\t' << row.upper.str()
            << '\t' << row.value.str() << '\n';
      else
        out << "  " << row.x.str() << ' ' << row.lower.str() << ' ' << row.upper.str() << ' ' << row.value.str()
            << '\n';
    }
  }
  print_violations(r.report, cfg, out);
  if (r.report.passed()) out << "PASS\n";
  return r.report.passed() ? kPass : kViolation;
}

}  // namespace detail

/// Runs one command. Results go to `out`, diagnostics to `err`; the return
/// value is the process exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::Context ctx(cfg);
  try {
    cfg.validate();
    const std::string& c = cfg.command;
    if (c == "parse") return detail::cmd_parse(ctx, out);
    if (c == "prove") return detail::cmd_prove(ctx, out);
    if (c == "check-proof") return detail::cmd_check_proof(ctx, out);
    if (c == "eval") return detail::cmd_eval(ctx, out);
    if (c == "sem-degree") return detail::cmd_sem_degree(ctx, out, false);
    if (c == "tautology") return detail::cmd_sem_degree(ctx, out, true);
    if (c == "validate-hedges") return detail::cmd_validate_hedges(ctx, out);
    if (c == "consistency") return detail::cmd_consistency(ctx, out);
    if (c == "boundaries") return detail::cmd_boundaries(ctx, out);
    throw UsageError("unknown command '" + c + "'");
  } catch (const SearchSpaceError& e) {
    err << "error: " << e.what() << '\n';
    return kSearchSpace;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }
}

}  // namespace fln::cli
