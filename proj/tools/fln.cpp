#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fln/cli.hpp"

int main(int argc, char** argv) {
  using fln::cli::RunConfig;
  RunConfig cfg;
  std::string format = "human";
  std::vector<std::string> positional;

  CLI::App app{"Graded fuzzy logic with hedges: parse, prove, check, evaluate."};
  app.add_option("command", cfg.command, "parse | prove | check-proof | eval | sem-degree | tautology | "
                                         "validate-hedges | consistency | boundaries")
      ->required()
      ->check(CLI::IsMember(fln::cli::commands()));
  app.add_option("args", positional, "goal formula, or the proof file for check-proof");
  app.add_option("--sig", cfg.sig_path, "hedge signature file");
  app.add_option("--theory", cfg.theory_path, "theory file (grade : formula lines)");
  app.add_option("--hedges", cfg.hedges_path, "hedge truth-function file");
  app.add_option("--structure", cfg.structure_path, "finite structure file");
  app.add_option("--goal", cfg.goal, "goal formula");
  app.add_option("--chain", cfg.chain, "granularity k of the chain L_k")->capture_default_str();
  app.add_option("--max-domain", cfg.max_domain, "largest domain size enumerated")->capture_default_str();
  app.add_option("--depth", cfg.depth, "constant/generalization closure depth of the proof universe")
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "maximum rule applications during saturation")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "tsv"}))->capture_default_str();
  app.add_flag("--no-sugar", cfg.no_sugar, "print formulas with derived connectives expanded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fln::cli::kParse;
  }

  cfg.format = format == "tsv" ? fln::cli::Format::Tsv : fln::cli::Format::Human;
  if (positional.size() > 1) {
    std::cerr << "error: too many positional arguments\n";
    return fln::cli::kParse;
  }
  if (!positional.empty()) {
    if (cfg.command == "check-proof") {
      cfg.proof_path = positional[0];
    } else if (cfg.goal.empty()) {
      cfg.goal = positional[0];
    } else {
      std::cerr << "error: goal given twice\n";
      return fln::cli::kParse;
    }
  }
  return fln::cli::run(cfg, std::cout, std::cerr);
}
