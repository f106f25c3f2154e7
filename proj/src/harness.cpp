#include "symratio/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "symratio/cube222.hpp"
#include "symratio/error.hpp"

namespace symratio {

RatioReport cmd_report(const Input& input, const IterConfig& cfg) {
  RatioReport r;
  r.input = input.descriptor;
  if (const auto* a = std::get_if<SymTensor>(&input.tensor)) {
    if (a->is_zero()) throw Error(ErrorKind::zero_tensor, "tensor is zero");
    const bool exact = a->dim() == 2;
    const MaximizerSet set =
        spectral_maximizers(*a, exact ? SolverMethod::exact_binary : SolverMethod::power, cfg);
    r.method = exact ? "exact_binary" : "power";
    r.spectral_norm = set.value;
    r.frob_norm = frob_norm(*a);
    r.maximizers = set.points;
    r.converged = set.converged;
  } else {
    const auto& t = std::get<DenseTensor>(input.tensor);
    if (t.is_zero()) throw Error(ErrorKind::zero_tensor, "tensor is zero");
    IterConfig als = als_defaults();
    als.seed = cfg.seed;
    als.exec = cfg.exec;
    const SpectralResult3 res = spectral_norm_3(t, als);
    r.method = "als";
    r.spectral_norm = res.value;
    r.frob_norm = frob_norm(t);
    r.maximizers = res.factors;
    r.converged = res.converged;
  }
  r.ratio = r.spectral_norm / r.frob_norm;
  r.relative_distance = relative_distance_from_ratio(r.ratio);
  return r;
}

Json to_json(const RatioReport& r) {
  Json points = Json::array();
  for (const auto& p : r.maximizers) points.push_back(to_json(p));
  return {{"input", r.input},
          {"method", r.method},
          {"spectral_norm", r.spectral_norm},
          {"frob_norm", r.frob_norm},
          {"ratio", r.ratio},
          {"relative_distance", r.relative_distance},
          {r.method == "als" ? "factors" : "maximizers", points},
          {"converged", r.converged}};
}

std::string to_csv(const RatioReport& r) {
  return "input,method,spectral_norm,frob_norm,ratio,relative_distance\n" + r.input + "," +
         r.method + "," + format_double(r.spectral_norm) + "," + format_double(r.frob_norm) +
         "," + format_double(r.ratio) + "," + format_double(r.relative_distance) + "\n";
}

namespace {

struct Outcome {
  bool ok = true;
  double observed = 0.0;
  double threshold = 0.0;
  std::string input;
  std::string message;
};

// Runs count cases (ids first_id, first_id + 1, ...) and appends failures.
std::vector<Outcome> run_cases(SuiteResult& result, std::size_t first_id, std::size_t count,
                               Execution exec, const std::function<Outcome(std::size_t)>& fn) {
  std::vector<Outcome> outcomes(count);
  for_each_index(count, exec, [&](std::size_t i) {
    try {
      outcomes[i] = fn(first_id + i);
    } catch (const Error& e) {
      outcomes[i].ok = false;
      outcomes[i].observed = std::numeric_limits<double>::quiet_NaN();
      outcomes[i].message = std::string(to_string(e.kind())) + ": " + e.what();
    }
  });
  for (std::size_t i = 0; i < count; ++i) {
    if (!outcomes[i].ok) {
      result.failures.push_back({first_id + i, outcomes[i].input, outcomes[i].observed,
                                 outcomes[i].threshold, outcomes[i].message});
    }
  }
  result.cases += count;
  return outcomes;
}

double min_observed(const std::vector<Outcome>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& o : v) {
    if (std::isfinite(o.observed)) m = std::min(m, o.observed);
  }
  return m;
}

std::string describe(const RankTwoParams& p, int d) {
  std::ostringstream s;
  s.precision(17);
  s << "d=" << d << " alpha=" << p.alpha << " beta=" << p.beta << " u=[" << p.u.transpose()
    << "] v=[" << p.v.transpose() << "]";
  return s.str();
}

std::string describe_planar(double alpha, double beta, double theta, int d) {
  std::ostringstream s;
  s.precision(17);
  s << "d=" << d << " alpha=" << alpha << " beta=" << beta << " theta=" << theta;
  return s.str();
}

std::size_t budget_or(const VerifyConfig& cfg, std::size_t fallback) {
  return cfg.budget > 0 ? cfg.budget : fallback;
}

Vector gaussian(std::mt19937_64& rng, int n) { return random_gaussian_vector(rng, n); }

// Rank-two tensors: half generic in R^3, half planar close to the infimum
// (small angle, alpha close to beta).
void suite_thm1(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = budget_or(cfg, 10000);
  std::size_t id = 0;
  for (int d = 3; d <= 6; ++d) {
    const double bound = rank_two_ratio_bound(d);
    auto out = run_cases(r, id, n, cfg.exec, [&](std::size_t cid) {
      auto rng = stream_rng(cfg.seed, cid);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      Outcome o;
      o.threshold = bound - 1e-9;
      if (cid % 2 == 0) {
        std::normal_distribution<double> normal;
        RankTwoParams p{normal(rng), normal(rng), gaussian(rng, 3), gaussian(rng, 3)};
        p = canonicalize(p, d);
        o.input = describe(p, d);
        o.observed = std::sqrt(ratio_F(p, d));
      } else {
        const double theta = 0.5 * std::numbers::pi * std::pow(10.0, -3.0 * unit(rng));
        const double beta = 1.0 - std::pow(10.0, -4.0 * unit(rng));
        const SymTensor a = make_rank_two_planar(1.0, beta, theta, d);
        o.input = describe_planar(1.0, beta, theta, d);
        o.observed = spectral_norm_binary(a).value / frob_norm(a);
      }
      o.ok = o.observed > o.threshold;
      if (!o.ok) o.message = "ratio below (1-1/d)^((d-1)/2)";
      return o;
    });
    r.details["min_ratio_d" + std::to_string(d)] = min_observed(out);
    r.details["bound_d" + std::to_string(d)] = bound;
    id += n;
  }
}

void suite_sum(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = budget_or(cfg, 1000);
  std::size_t id = 0;
  for (int d = 3; d <= 8; ++d) {
    auto out = run_cases(r, id, n, cfg.exec, [&](std::size_t cid) {
      auto rng = stream_rng(cfg.seed, cid);
      std::normal_distribution<double> normal;
      RankTwoParams p{std::abs(normal(rng)), -std::abs(normal(rng)), gaussian(rng, 3),
                      gaussian(rng, 3)};
      if (p.u.dot(p.v) < 0.0) p.v = -p.v;
      Outcome o;
      o.input = describe(p, d);
      o.observed = ratio_F(p, d);
      o.threshold = 0.5 - 1e-12;
      o.ok = o.observed >= o.threshold;
      if (!o.ok) o.message = "ratio^2 below 1/2";
      return o;
    });
    r.details["min_ratio_sq_d" + std::to_string(d)] = min_observed(out);
    id += n;
  }
}

void suite_equal(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(budget_or(cfg, 1000), 2);
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = std::pow(10.0, -4.0 + 4.0 * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  std::size_t id = 0;
  for (int d = 3; d <= 8; ++d) {
    const double limit = diff_bound_limit(d);
    const double t_max = 1.0 / std::sqrt(d - 1.0);
    auto out = run_cases(r, id, n, cfg.exec, [&](std::size_t cid) {
      const std::size_t k = cid - id;
      const double t = grid[k];
      Outcome o;
      o.input = "d=" + std::to_string(d) + " t=" + format_double(t);
      o.observed = equal_family_ratio_sq(d, t);
      o.threshold = limit;
      const double lower = diff_bound(d, t).value;
      if (!(o.observed > limit)) {
        o.ok = false;
        o.message = "ratio^2 not above (1-1/d)^(d-1)";
      } else if (o.observed < lower - 1e-12) {
        o.ok = false;
        o.message = "ratio^2 below the h^2/g lower bound";
      } else if (k > 0 && t < t_max && !(lower > diff_bound(d, grid[k - 1]).value)) {
        o.ok = false;
        o.message = "h^2/g not strictly increasing";
      } else if (k == 0 && std::abs(lower - limit) > 1e-6) {
        o.ok = false;
        o.message = "h^2/g at the smallest t is not within 1e-6 of the limit";
      }
      return o;
    });
    r.details["min_gap_d" + std::to_string(d)] = min_observed(out) - limit;
    id += n;
  }
}

void suite_roots(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = budget_or(cfg, 1000);
  std::size_t id = 0;
  for (int d = 3; d <= 8; ++d) {
    run_cases(r, id, n, cfg.exec, [&](std::size_t cid) {
      auto rng = stream_rng(cfg.seed, cid);
      std::uniform_real_distribution<double> pos(0.05, 3.0);
      std::uniform_real_distribution<double> nonneg(0.0, 3.0);
      const double a = pos(rng), b = nonneg(rng), gamma = pos(rng);
      const RootSet roots = critical_eq_roots(a, b, gamma, d);
      Outcome o;
      o.input = "d=" + std::to_string(d) + " a=" + format_double(a) + " b=" + format_double(b) +
                " gamma=" + format_double(gamma);
      o.observed = static_cast<double>(roots.roots.size());
      o.threshold = 2.0 + d % 2;
      o.ok = o.observed == o.threshold;
      if (!o.ok) o.message = "wrong number of real roots";
      return o;
    });
    id += n;
  }
}

void suite_unique(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = budget_or(cfg, 1000);
  std::size_t id = 0;
  for (int d = 3; d <= 7; ++d) {
    run_cases(r, id, n, cfg.exec, [&](std::size_t cid) {
      auto rng = stream_rng(cfg.seed, cid);
      std::normal_distribution<double> normal;
      double x = std::abs(normal(rng)), y = std::abs(normal(rng));
      if (x < y) std::swap(x, y);
      RankTwoParams p{x, y, gaussian(rng, 3).normalized(), gaussian(rng, 3).normalized()};
      if (p.u.dot(p.v) < 0.0) p.v = -p.v;
      const SymTensor a = make_rank_two(p, d);
      const PlaneRestriction plane = restrict_to_plane(a, p.u, p.v);
      Outcome o;
      o.input = describe(p, d);
      o.observed = count_global_maximizers(plane.tensor);
      o.threshold = 1.0;
      if (o.observed != 1.0) {
        o.ok = false;
        o.message = "best rank-one approximation is not unique";
      } else if (!maximizer_side_check(p, d)) {
        o.ok = false;
        o.message = "maximizer closer to v than to u";
      }
      return o;
    });
    id += n;
  }
}

void suite_border(SuiteResult& r, const VerifyConfig& cfg) {
  const int steps = static_cast<int>(std::max<std::size_t>(budget_or(cfg, 1001), 2));
  std::size_t id = 0;
  for (int d = 3; d <= 8; ++d) {
    const auto rows = border_ratio_scan(d, steps);
    const double bound = rank_two_ratio_bound(d);
    run_cases(r, id, rows.size(), cfg.exec, [&](std::size_t cid) {
      const std::size_t k = cid - id;
      const BorderScanRow& row = rows[k];
      Outcome o;
      o.input = "d=" + std::to_string(d) + " a=" + format_double(row.a) + " b=" + format_double(row.b);
      o.observed = row.ratio;
      o.threshold = bound;
      if (k == 0 && std::abs(row.ratio - bound) > 1e-10) {
        o.ok = false;
        o.message = "ratio at a=0 differs from the bound";
      } else if (k > 0 && !(row.ratio > rows[0].ratio)) {
        o.ok = false;
        o.message = "ratio not minimized at a=0";
      } else if (row.lb_interior > row.ratio + 1e-12 || row.lb_axis > row.ratio + 1e-12) {
        o.ok = false;
        o.message = "lower bound exceeds the exact ratio";
      }
      return o;
    });
    r.details["ratio_at_a0_d" + std::to_string(d)] = rows[0].ratio;
    id += rows.size();
  }
}

void suite_thm3(SuiteResult& r, const VerifyConfig& cfg) {
  const std::size_t n = budget_or(cfg, 10000);
  IterConfig als = als_defaults();
  als.seed = cfg.seed;
  als.exec = Execution::serial;  // parallelism is over cases
  auto out = run_cases(r, 0, n, cfg.exec, [&](std::size_t cid) {
    auto rng = stream_rng(cfg.seed, cid);
    DenseTensor t = random_rank_two(rng, 3, 2);
    for (int tries = 0; tries < 100 && !(hyperdet(t) > 0.0); ++tries) t = random_rank_two(rng, 3, 2);
    Outcome o;
    o.input = to_json(t).dump();
    o.observed = ratio_3(t, als);
    o.threshold = 2.0 / 3.0 - 1e-9;
    o.ok = hyperdet(t) > 0.0 && o.observed > o.threshold;
    if (!o.ok) o.message = "ratio_3 not above 2/3";
    return o;
  });
  r.details["min_ratio"] = min_observed(out);

  // W_3 itself, then rank-two tensors ((e1 + s e2)^3 - (e1 - s e2)^3) / (2s) -> W_3
  const std::vector<double> scales{1e-1, 1e-2, 1e-3};
  std::vector<double> approach(scales.size());
  run_cases(r, n, 1 + scales.size(), cfg.exec, [&](std::size_t cid) {
    Outcome o;
    if (cid == n) {
      const Tensor3 w = make_w3();
      o.input = "W_3";
      o.observed = ratio_3(w, als);
      o.threshold = 2.0 / 3.0;
      const double dist = relative_distance_from_ratio(o.observed);
      o.ok = std::abs(o.observed - 2.0 / 3.0) <= 1e-8 && std::abs(dist - std::sqrt(5.0) / 3.0) <= 1e-8;
      if (!o.ok) o.message = "ratio_3(W_3) != 2/3 or distance != sqrt(5)/3";
      return o;
    }
    const std::size_t k = cid - n - 1;
    const double s = scales[k];
    Vector p(2), m(2);
    p << 1.0, s;
    m << 1.0, -s;
    const double c = 1.0 / (2.0 * s);
    const Tensor3 t = make_rank_two_3(c * p, p, p, -c * m, m, m);
    o.input = "W_3 approach s=" + format_double(s);
    o.observed = ratio_3(t, als);
    approach[k] = o.observed;
    o.threshold = 2.0 / 3.0 - 1e-9;
    o.ok = o.observed > o.threshold;
    if (!o.ok) o.message = "ratio_3 not above 2/3";
    return o;
  });
  Json path = Json::array();
  for (std::size_t k = 0; k < scales.size(); ++k) path.push_back({{"s", scales[k]}, {"ratio", approach[k]}});
  r.details["w3_approach"] = path;
  for (std::size_t k = 1; k < scales.size(); ++k) {
    if (!(approach[k] < approach[k - 1])) {
      r.failures.push_back({n + 1 + k, "W_3 approach", approach[k], approach[k - 1],
                            "ratio does not decrease towards W_3"});
    }
  }
}

void suite_kkt(SuiteResult& r, const VerifyConfig& cfg) {
  FeasibleScanConfig scan;
  scan.samples = budget_or(cfg, 1000000);
  scan.seed = cfg.seed;
  scan.exec = cfg.exec;
  const FeasibleScanResult boundary = feasible_max_scan(scan);
  scan.margin = 0.01;
  const FeasibleScanResult interior = feasible_max_scan(scan);
  r.details["max_objective"] = boundary.max_objective;
  r.details["argmax"] = {boundary.argmax.a, boundary.argmax.b, boundary.argmax.c, boundary.argmax.d};
  r.details["argmax_hyperdet"] = hyperdet(embed_normal_form(boundary.argmax));
  r.details["boundary"] = boundary.boundary;
  r.details["max_objective_margin_0.01"] = interior.max_objective;

  const std::size_t signs = 10000;
  run_cases(r, 0, 3 + signs, cfg.exec, [&](std::size_t cid) {
    Outcome o;
    if (cid == 0) {
      o.input = "feasible max";
      o.observed = boundary.max_objective;
      o.threshold = 2.25;
      o.ok = std::abs(o.observed - 2.25) <= 1e-4 && boundary.boundary;
      if (!o.ok) o.message = "max != 9/4 or not on d^2+4abc = 0";
    } else if (cid == 1) {
      o.input = "feasible max with d^2+4abc >= 0.01";
      o.observed = interior.max_objective;
      o.threshold = 2.25;
      o.ok = o.observed < 2.25 - 1e-4;
      if (!o.ok) o.message = "interior max not below 9/4";
    } else if (cid == 2) {
      const NormalForm222 nf{0.5, 0.5, -0.5, std::sqrt(0.5)};
      o.input = "(1/2,1/2,-1/2,sqrt(1/2))";
      o.observed = nf.rank_indicator();
      o.threshold = 0.0;
      o.ok = is_feasible(nf) && std::abs(o.observed) < 1e-12 &&
             std::abs(frob_norm(embed_normal_form(nf)) - 1.5) < 1e-12;
      if (!o.ok) o.message = "extremal normal form mismatch";
    } else {
      // rejection-sample a feasible normal form
      auto rng = stream_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, cid);
      std::uniform_real_distribution<double> box(-1.0, 1.0);
      NormalForm222 nf;
      do {
        nf = {box(rng), box(rng), box(rng), box(rng)};
      } while (!is_feasible(nf, 0.0));
      const double indicator = nf.rank_indicator();
      const double h = hyperdet(embed_normal_form(nf));
      o.input = "a=" + format_double(nf.a) + " b=" + format_double(nf.b) + " c=" +
                format_double(nf.c) + " d=" + format_double(nf.d);
      o.observed = h;
      o.threshold = indicator;
      o.ok = std::abs(indicator) < 1e-12 || (h > 0.0) == (indicator > 0.0);
      if (!o.ok) o.message = "sign(hyperdet) != sign(d^2+4abc)";
    }
    return o;
  });
}

using SuiteFn = void (*)(SuiteResult&, const VerifyConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"thm1-bound", suite_thm1},   {"prop-sum", suite_sum},       {"prop-equal", suite_equal},
      {"lemma-roots", suite_roots}, {"prop-unique", suite_unique}, {"border-scan", suite_border},
      {"thm3-bound", suite_thm3},   {"kkt-region", suite_kkt},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult cmd_verify(const std::string& suite, const VerifyConfig& cfg) {
  for (const auto& [name, fn] : suites()) {
    if (name != suite) continue;
    SuiteResult r;
    r.suite = suite;
    r.seed = cfg.seed;
    const auto start = std::chrono::steady_clock::now();
    fn(r, cfg);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::stable_sort(r.failures.begin(), r.failures.end(),
                     [](const CaseFailure& x, const CaseFailure& y) { return x.case_id < y.case_id; });
    return r;
  }
  throw Error(ErrorKind::invalid_argument, "unknown suite \"" + suite + "\"");
}

Json to_json(const SuiteResult& r, bool timing) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"case", f.case_id},
                        {"input", f.input},
                        {"observed", f.observed},
                        {"threshold", f.threshold},
                        {"message", f.message}});
  }
  Json out{{"suite", r.suite},    {"seed", r.seed},         {"cases", r.cases},
           {"passed", r.passed()}, {"failures", failures}, {"details", r.details}};
  if (timing) out["wall_seconds"] = r.wall_seconds;
  return out;
}

std::string to_csv(const SuiteResult& r) {
  return "suite,seed,cases,failures,passed\n" + r.suite + "," + std::to_string(r.seed) + "," +
         std::to_string(r.cases) + "," + std::to_string(r.failures.size()) + "," +
         (r.passed() ? "true" : "false") + "\n";
}

std::string cmd_sweep(const std::string& kind, const SweepConfig& cfg) {
  std::ostringstream out;
  if (kind == "diff_t") {
    if (cfg.d < 2 || !(cfg.t_min > 0.0) || !(cfg.t_max <= 1.0) || !(cfg.t_min <= cfg.t_max) || cfg.steps < 2) {
      throw Error(ErrorKind::invalid_argument, "diff_t needs d >= 2, 0 < t_min <= t_max <= 1, steps >= 2");
    }
    const double limit = diff_bound_limit(cfg.d);
    out << "t,ratio_sq,diff_bound,limit\n";
    const double lo = std::log10(cfg.t_min), hi = std::log10(cfg.t_max);
    for (int k = 0; k < cfg.steps; ++k) {
      const double t = std::pow(10.0, lo + (hi - lo) * k / (cfg.steps - 1));
      out << format_double(t) << "," << format_double(equal_family_ratio_sq(cfg.d, t)) << ","
          << format_double(diff_bound(cfg.d, t).value) << "," << format_double(limit) << "\n";
    }
  } else if (kind == "border_ab") {
    if (cfg.d < 2 || cfg.steps < 2) throw Error(ErrorKind::invalid_argument, "border_ab needs d >= 2, steps >= 2");
    out << "a,b,ratio,lb_interior,lb_axis\n";
    for (const auto& row : border_ratio_scan(cfg.d, cfg.steps)) {
      out << format_double(row.a) << "," << format_double(row.b) << "," << format_double(row.ratio)
          << "," << format_double(row.lb_interior) << "," << format_double(row.lb_axis) << "\n";
    }
  } else if (kind == "limit_d") {
    if (cfg.d_min < 2 || cfg.d_max < cfg.d_min) {
      throw Error(ErrorKind::invalid_argument, "limit_d needs 2 <= d_min <= d_max");
    }
    const double limit_ratio = 1.0 / std::sqrt(std::numbers::e);
    const double limit_distance = std::sqrt(1.0 - 1.0 / std::numbers::e);
    out << "d,ratio,relative_distance,bound,limit_ratio,limit_distance\n";
    for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
      const double r = ratio(make_w(d), SolverMethod::exact_binary);
      out << d << "," << format_double(r) << "," << format_double(relative_distance_from_ratio(r))
          << "," << format_double(rank_two_ratio_bound(d)) << "," << format_double(limit_ratio)
          << "," << format_double(limit_distance) << "\n";
    }
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown sweep kind \"" + kind + "\"");
  }
  return out.str();
}

Json to_json(const SearchTraceEntry& e) {
  return {{"start", e.start}, {"step", e.step},   {"alpha", e.alpha}, {"beta", e.beta},
          {"theta", e.theta}, {"F", e.F},         {"mode", e.mode}};
}

Json cmd_search(const std::string& target, int d, const SearchConfig& cfg,
                std::vector<SearchTraceEntry>* trace) {
  if (d < 3) throw Error(ErrorKind::invalid_argument, "search needs d >= 3");
  if (cfg.budget < 1) throw Error(ErrorKind::invalid_argument, "search needs a positive budget");
  const double bound = rank_two_ratio_bound(d);
  if (target == "min-ratio-sym") {
    MinRatioResult res = min_ratio_search(d, cfg);
    if (trace) *trace = std::move(res.trace);
    return {{"target", target},
            {"d", d},
            {"seed", cfg.seed},
            {"best_ratio", res.best_ratio},
            {"best_F", res.best_F},
            {"bound", bound},
            {"gap", res.best_ratio - bound},
            {"alpha", res.alpha},
            {"beta", res.beta},
            {"theta", res.theta},
            {"alpha_unit_frob", res.alpha_unit_frob},
            {"beta_unit_frob", res.beta_unit_frob},
            {"case", to_string(res.best_case)},
            {"evaluations", res.evaluations},
            {"budget_exhausted", res.budget_exhausted},
            {"no_decrease", res.no_decrease},
            {"note",
             "the infimum over rank-two tensors is not attained: minimizing sequences have "
             "theta -> 0 and alpha, beta -> infinity at unit Frobenius norm, converging to the "
             "border tensor W_d"}};
  }
  if (target == "counterexample-nonsym") {
    const std::size_t n = static_cast<std::size_t>(cfg.budget);
    IterConfig als = als_defaults();
    als.seed = cfg.seed;
    als.exec = Execution::serial;
    std::vector<double> ratios(n);
    std::vector<DenseTensor> tensors(n);
    for_each_index(n, cfg.exec, [&](std::size_t i) {
      auto rng = stream_rng(cfg.seed, i);
      tensors[i] = random_rank_two(rng, d, 2);
      ratios[i] = ratio_3(tensors[i], als);
    });
    const auto best = std::min_element(ratios.begin(), ratios.end()) - ratios.begin();
    const auto below = std::count_if(ratios.begin(), ratios.end(),
                                     [&](double r) { return r <= bound - 1e-9; });
    return {{"target", target},
            {"d", d},
            {"seed", cfg.seed},
            {"samples", n},
            {"min_ratio", ratios[static_cast<std::size_t>(best)]},
            {"bound", bound},
            {"below_bound", below},
            {"argmin", to_json(tensors[static_cast<std::size_t>(best)])},
            {"note", d == 3 ? "order 3: the bound 2/3 is proved for rank two"
                            : "order >= 4 nonsymmetric: open; no expected answer"}};
  }
  throw Error(ErrorKind::invalid_argument, "unknown search target \"" + target + "\"");
}

}  // namespace symratio
