#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <string>

#include "kstab/error.hpp"
#include "kstab/formulas.hpp"
#include "kstab/git.hpp"
#include "kstab/invariants.hpp"
#include "kstab/runner.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int exit_code_for(const kstab::Error& e) {
  static const std::set<std::string> usage{"ParseError", "SchemaError", "UsageError", "UnknownFormula",
                                           "HypothesisViolated", "InvalidParameters", "BoundExceeded",
                                           "FixtureMissing"};
  return usage.count(e.kind()) ? kUsage : kFail;
}

std::vector<long> parse_lambda(const std::string& text) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw kstab::Error("ParseError", "bad lambda entry '" + item + "'");
    }
  }
  if (out.size() != 2) throw kstab::Error("ParseError", "lambda needs two comma-separated integers");
  return out;
}

kstab::Json parse_json_arg(const std::string& text, const std::string& what) {
  try {
    return kstab::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw kstab::Error("ParseError", what + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-stability computations: cases, suite, formulas, GIT weights, invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string data_dir = kstab::default_data_dir().string();
  app.add_option("--data-dir", data_dir, "Directory with models/, chambers/, flags/ and cases/");

  std::string format = "text";
  auto* run = app.add_subcommand("run", "Evaluate one case file");
  std::string case_path;
  run->add_option("case", case_path, "Path to the case JSON")->required();
  run->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* suite = app.add_subcommand("suite", "Run every bundled case");
  int jobs = 1;
  std::uint64_t seed = 0;
  suite->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  suite->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = suite->add_option("--seed", seed, "Seed for randomized cases (overrides per-case seeds)");

  auto* formulas = app.add_subcommand("formulas", "Closed-form formulas");
  formulas->require_subcommand(1);
  auto* feval = formulas->add_subcommand("eval", "Evaluate a formula");
  std::string fname, fparams = "{}";
  feval->add_option("name", fname)->required();
  feval->add_option("--params", fparams, "JSON object of parameters");
  auto* flist = formulas->add_subcommand("list", "List formula names");

  auto* git = app.add_subcommand("git", "Hilbert-Mumford weights of (2,2)-forms");
  git->require_subcommand(1);
  std::string support, lambda = "1,1";
  long bound = 5;
  auto* gweight = git->add_subcommand("weight", "Weight of a support under a one-parameter subgroup");
  gweight->add_option("--support", support)->required();
  gweight->add_option("--lambda", lambda);
  auto* gdest = git->add_subcommand("destabilize", "Search for a destabilizing subgroup");
  gdest->add_option("--support", support)->required();
  gdest->add_option("--bound", bound)->check(CLI::PositiveNumber);

  auto* inv = app.add_subcommand("inv", "Invariants of (2,2)-forms");
  inv->require_subcommand(1);
  int upto = 8;
  std::string coeffs;
  int trials = 20;
  std::uint64_t inv_seed = 0;
  auto* idims = inv->add_subcommand("dims", "Invariant dimensions against the closed-form series");
  idims->add_option("--upto", upto)->check(CLI::Range(0, 12));
  auto* ipeano = inv->add_subcommand("peano", "J2, J3, J4 of a coefficient vector");
  ipeano->add_option("--coeffs", coeffs, "JSON object such as {\"11\": \"1\"}")->required();
  auto* icheck = inv->add_subcommand("check-invariance", "Random invariance trials");
  icheck->add_option("--trials", trials)->check(CLI::PositiveNumber);
  icheck->add_option("--seed", inv_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  kstab::RunOptions opts{data_dir, std::nullopt};
  try {
    if (*run) {
      kstab::StabilityReport report;
      report.rows.push_back(kstab::run_case(case_path, opts));
      std::cout << kstab::emit_report(report, format);
      return report.ok() ? kPass : kFail;
    }
    if (*suite) {
      if (*seed_opt) opts.seed = seed;
      kstab::StabilityReport report = kstab::run_suite(opts, jobs);
      std::cout << kstab::emit_report(report, format);
      return report.ok() ? kPass : kFail;
    }
    if (*flist) {
      for (const auto& n : kstab::formula_names()) std::cout << n << "\n";
      return kPass;
    }
    if (*feval) {
      kstab::Json out = kstab::evaluate_formula(fname, parse_json_arg(fparams, "--params"));
      std::cout << out.dump() << "\n";
      return kPass;
    }
    if (*gweight) {
      auto l = parse_lambda(lambda);
      long w = kstab::hm_weight(kstab::parse_support(support), {l[0], l[1]});
      std::cout << w << "\n";
      return kPass;
    }
    if (*gdest) {
      auto s = kstab::parse_support(support);
      auto d = kstab::find_destabilizer(s, bound);
      if (!d) {
        std::cout << "no destabilizing subgroup with r1 <= " << bound << "\n";
      } else {
        std::cout << "lambda=(" << d->lambda.r0 << "," << d->lambda.r1 << ") weight=" << d->weight
                  << (d->strictly_semistable_direction ? " (weight zero: strictly semistable direction)" : " (unstable)")
                  << "\n";
      }
      return kPass;
    }
    if (*idims) {
      auto series = kstab::hilbert_prefix(upto);
      bool ok = true;
      for (int k = 0; k <= upto; ++k) {
        long long d = kstab::invariant_dimension(k);
        ok = ok && d == series[k];
        std::cout << "k=" << k << " dim=" << d << " series=" << series[k] << (d == series[k] ? "" : "  MISMATCH") << "\n";
      }
      return ok ? kPass : kFail;
    }
    if (*ipeano) {
      auto p = kstab::peano_invariants(kstab::coefficients_from_json(parse_json_arg(coeffs, "--coeffs")));
      std::cout << kstab::Json{{"J2", p.j2.str()}, {"J3", p.j3.str()}, {"J4", p.j4.str()}}.dump() << "\n";
      return kPass;
    }
    if (*icheck) {
      auto t = kstab::check_invariance_trials(trials, inv_seed);
      std::cout << t.passed << "/" << t.trials << " trials invariant (seed " << t.seed << ")\n";
      return t.passed == t.trials ? kPass : kFail;
    }
  } catch (const kstab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
