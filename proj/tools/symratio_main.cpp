#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symratio/error.hpp"
#include "symratio/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace symratio;

  CLI::App app{"Spectral-to-Frobenius ratios of low-rank tensors"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::size_t budget = 0;
  double tol = -1.0;
  std::string out = "json";
  int jobs = 0;
  bool timing = false;
  int starts = -1;
  int max_iters = -1;
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--budget", budget, "Cases per order (verify) or evaluations/samples (search)");
  app.add_option("--tol", tol, "Convergence tolerance of iterative solvers");
  app.add_option("--out", out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Include wall time in suite output");
  app.add_option("--starts", starts, "Random starts of iterative solvers");
  app.add_option("--max-iters", max_iters, "Iteration cap of iterative solvers");

  std::string input;
  auto* report = app.add_subcommand("report", "Ratio report for a builtin or a JSON tensor file");
  report->add_option("input", input, "wd:<d> | ranktwo:<alpha>,<beta>,<cos>,<d> | border:<a>,<b>,<d> | file")
      ->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();

  std::string kind;
  SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep->add_option("kind", kind, "diff_t | border_ab | limit_d")->required();
  sweep->add_option("--d", sweep_cfg.d, "Order for diff_t and border_ab");
  sweep->add_option("--d-min", sweep_cfg.d_min);
  sweep->add_option("--d-max", sweep_cfg.d_max);
  sweep->add_option("--t-min", sweep_cfg.t_min);
  sweep->add_option("--t-max", sweep_cfg.t_max);
  sweep->add_option("--steps", sweep_cfg.steps);

  std::string target;
  int search_d = 3;
  std::string trace_path;
  auto* search = app.add_subcommand("search", "Infimum search or counterexample sampling");
  search->add_option("target", target, "min-ratio-sym | counterexample-nonsym")->required();
  search->add_option("--d", search_d, "Order");
  search->add_option("--trace", trace_path, "Write the search trace as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (jobs > 0) set_worker_count(jobs);

  try {
    if (*report) {
      IterConfig cfg;
      cfg.seed = seed;
      if (tol > 0.0) cfg.tol = tol;
      if (starts >= 0) cfg.starts = starts;
      if (max_iters > 0) cfg.max_iters = max_iters;
      const RatioReport r = cmd_report(load_input(input), cfg);
      std::cout << (out == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n");
      return kExitPass;
    }
    if (*verify) {
      VerifyConfig cfg;
      cfg.seed = seed;
      cfg.budget = budget;
      std::vector<std::string> names;
      if (suite == "all") {
        names = suite_names();
      } else {
        names.push_back(suite);
      }
      bool all_passed = true;
      Json results = Json::array();
      for (std::size_t i = 0; i < names.size(); ++i) {
        const SuiteResult r = cmd_verify(names[i], cfg);
        all_passed = all_passed && r.passed();
        if (out == "csv") {
          const std::string text = to_csv(r);
          // one header for all suites
          std::cout << (i == 0 ? text : text.substr(text.find('\n') + 1));
        } else {
          results.push_back(to_json(r, timing));
        }
      }
      if (out != "csv") std::cout << (suite == "all" ? results : results[0]).dump(2) << "\n";
      return all_passed ? kExitPass : kExitFailure;
    }
    if (*sweep) {
      std::cout << cmd_sweep(kind, sweep_cfg);
      return kExitPass;
    }
    if (*search) {
      SearchConfig cfg;
      cfg.seed = seed;
      if (budget > 0) cfg.budget = static_cast<int>(budget);
      if (tol > 0.0) cfg.tol = tol;
      if (starts > 0) cfg.starts = starts;
      std::vector<SearchTraceEntry> trace;
      const Json result = cmd_search(target, search_d, cfg, &trace);
      if (!trace_path.empty()) {
        std::ofstream file(trace_path);
        for (const auto& e : trace) file << to_json(e).dump() << "\n";
      }
      std::cout << result.dump(2) << "\n";
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::invalid_argument || e.kind() == ErrorKind::parse_error;
    return usage ? kExitUsage : kExitFailure;
  }
  return kExitUsage;
}
