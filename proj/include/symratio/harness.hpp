#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symratio/io.hpp"
#include "symratio/ranktwo.hpp"
#include "symratio/spectral.hpp"

namespace symratio {

/// Spectral/Frobenius summary of one tensor.
struct RatioReport {
  std::string input;
  std::string method;  // "exact_binary", "power" or "als"
  double spectral_norm = 0.0;
  double frob_norm = 0.0;
  double ratio = 0.0;
  double relative_distance = 0.0;
  std::vector<Vector> maximizers;  // one per antipodal class; factors for "als"
  bool converged = true;
};

RatioReport cmd_report(const Input& input, const IterConfig& cfg = {});
Json to_json(const RatioReport& r);
std::string to_csv(const RatioReport& r);

struct CaseFailure {
  std::size_t case_id = 0;
  std::string input;
  double observed = 0.0;
  double threshold = 0.0;
  std::string message;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<CaseFailure> failures;  // sorted by case id
  Json details = Json::object();      // suite-specific extremes
  double wall_seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

struct VerifyConfig {
  std::uint64_t seed = 0;
  std::size_t budget = 0;  // cases per order (suite default when 0)
  Execution exec = Execution::parallel;
};

const std::vector<std::string>& suite_names();

/// Throws invalid_argument for an unknown suite.
SuiteResult cmd_verify(const std::string& suite, const VerifyConfig& cfg = {});

/// Wall time is left out unless `timing` so that output is reproducible.
Json to_json(const SuiteResult& r, bool timing = false);
std::string to_csv(const SuiteResult& r);

struct SweepConfig {
  int d = 4;           // diff_t, border_ab
  int d_min = 3;       // limit_d
  int d_max = 40;
  double t_min = 1e-4;  // diff_t: log-spaced grid
  double t_max = 1.0;
  int steps = 1000;
};

/// CSV text. diff_t: "t,ratio_sq,diff_bound,limit";
/// border_ab: "a,b,ratio,lb_interior,lb_axis";
/// limit_d: "d,ratio,relative_distance,bound,limit_ratio,limit_distance".
std::string cmd_sweep(const std::string& kind, const SweepConfig& cfg = {});

/// "min-ratio-sym" runs min_ratio_search; "counterexample-nonsym" samples
/// random order-d rank-two tensors on R^2 x ... x R^2 (cfg.budget of them)
/// and records the smallest spectral-to-Frobenius ratio.
Json cmd_search(const std::string& target, int d, const SearchConfig& cfg,
                std::vector<SearchTraceEntry>* trace = nullptr);

Json to_json(const SearchTraceEntry& e);

}  // namespace symratio
