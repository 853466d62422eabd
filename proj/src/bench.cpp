#include "smco/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "smco/randomfns.hpp"
#include "smco/testfns.hpp"

#include "json.hpp"

namespace smco {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct ProblemInstance {
  Objective objective;
  Box box;
};

bool is_random_criterion(const std::string& fn) {
  return fn == "ms" || fn == "ew";
}

// Known analytic optima of the untransformed problems, for audit output.
std::optional<double> known_optimum(const ProblemSpec& p) {
  if (p.transform || is_random_criterion(p.fn)) return std::nullopt;
  const auto fn = testfn_from_name(p.fn);
  if (!fn) return std::nullopt;
  if (p.direction == Direction::Minimize) {
    switch (*fn) {
      case TestFn::Rastrigin:
      case TestFn::Ackley:
      case TestFn::Griewank:
        return 0.0;
      case TestFn::Michalewicz:
        if (p.dim == 2) return -1.8013034101;
        if (p.dim == 5) return -4.687658179;
        if (p.dim == 10) return -9.66015;
        return std::nullopt;
    }
  }
  if (*fn == TestFn::Michalewicz) return 0.0;  // vertex maxima
  return std::nullopt;
}

void validate(const ExperimentSpec& spec) {
  detail::require(spec.replications >= 1, "experiment: replications >= 1");
  detail::require(!spec.algorithms.empty(), "experiment: no algorithms");
  detail::require(spec.workers >= 1, "experiment: workers >= 1");
  detail::require(spec.starts >= 0, "experiment: starts >= 0");
  detail::require(spec.problem.dim >= 1, "experiment: dim >= 1");
  if (is_random_criterion(spec.problem.fn)) {
    detail::require(!spec.problem.transform,
                    "experiment: random criteria have no domain transform");
    detail::require(spec.problem.n_samples >= 1, "experiment: n_samples >= 1");
    if (spec.problem.fn == "ew")
      detail::require(spec.problem.dim >= 2, "experiment: ew needs dim >= 2");
  } else {
    detail::require(testfn_from_name(spec.problem.fn).has_value(),
                    "experiment: unknown problem '" + spec.problem.fn + "'");
  }
}

// The synthetic dataset of a random criterion is generated once from the
// master seed and shared by all replications, so cross-replication errors
// are comparable.
ProblemInstance base_instance(const ProblemSpec& p, std::uint64_t seed) {
  ProblemInstance inst;
  if (p.fn == "ms") {
    const MsDataset data = gen_ms_data(p.dim, p.n_samples, seed);
    inst.objective = make_ms_objective(data);
    inst.box = ms_default_box(p.dim);
  } else if (p.fn == "ew") {
    const EwDataset data = gen_ew_data(p.dim, p.n_samples, seed);
    inst.objective = make_ew_objective(data);
    inst.box = ew_default_box(p.dim);
  } else {
    const TestFn fn = *testfn_from_name(p.fn);
    inst.objective = make_testfn_objective(fn, p.dim, p.direction);
    inst.box = default_box(fn, p.dim);
  }
  inst.objective.direction = p.direction;
  return inst;
}

}  // namespace

double percentile_nearest_rank(std::vector<double> sorted, double pct) {
  detail::require(!sorted.empty(), "percentile: empty sample");
  const auto n = static_cast<double>(sorted.size());
  const auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

BenchReport compute_metrics(
    const std::vector<std::pair<std::string, std::vector<double>>>& values,
    Direction direction) {
  detail::require(!values.empty(), "compute_metrics: no algorithms");
  bool any = false;
  double best = 0.0;
  for (const auto& [name, vals] : values) {
    detail::require(!vals.empty(), "compute_metrics: empty value list");
    for (double v : vals) {
      if (!any || improves(v, best, direction)) best = v;
      any = true;
    }
  }

  BenchReport report;
  report.best_value = best;
  for (const auto& [name, vals] : values) {
    AlgoMetrics m;
    m.name = name;
    m.values = vals;
    m.times_s.assign(vals.size(), 0.0);
    std::vector<double> errs(vals.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      errs[i] = std::abs(vals[i] - best);
      sq += errs[i] * errs[i];
    }
    std::sort(errs.begin(), errs.end());
    m.rmse = std::sqrt(sq / static_cast<double>(errs.size()));
    m.ae50 = percentile_nearest_rank(errs, 50.0);
    m.ae95 = percentile_nearest_rank(errs, 95.0);
    m.ae99 = percentile_nearest_rank(errs, 99.0);
    report.algorithms.push_back(std::move(m));
  }
  return report;
}

BenchReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const int reps = spec.replications;
  const int nalgos = static_cast<int>(spec.algorithms.size());
  const int start_count = spec.starts > 0
                              ? spec.starts
                              : default_start_count(spec.problem.dim,
                                                    Regime::LowDim);

  const bool transforming =
      spec.problem.transform && !is_random_criterion(spec.problem.fn);
  ProblemInstance base;
  if (!transforming) base = base_instance(spec.problem, spec.seed);

  // All stochastic inputs derive from a fixed substream tree, so results do
  // not depend on the worker count or schedule. Substream 0 of a replication
  // feeds the transform, 1 the start set, 2+k algorithm k.
  const RngStream master(spec.seed, 0);

  struct Cell {
    double value = 0.0;
    double time_s = 0.0;
  };
  std::vector<std::vector<Cell>> cells(reps, std::vector<Cell>(nalgos));
  std::vector<std::vector<Vec>> rep_starts(reps);

  const int tasks = reps * nalgos;
  const int outer_workers = tasks > 1 ? spec.workers : 1;
  const int inner_workers = tasks > 1 ? 1 : spec.workers;

  parallel_for(tasks, outer_workers, [&](int task) {
    const int r = task / nalgos;
    const int k = task % nalgos;
    const RngStream rep_rng = master.substream(static_cast<std::uint64_t>(r));

    ProblemInstance inst;
    if (transforming) {
      const TestFn fn = *testfn_from_name(spec.problem.fn);
      TransformedProblem tp = transform_problem(
          fn, spec.problem.dim, spec.problem.direction, rep_rng.substream(0));
      inst.objective = std::move(tp.objective);
      inst.box = tp.box;
    } else {
      inst = base;
    }

    StartPlan plan{spec.start_mode, start_count, rep_rng.substream(1)};
    const std::vector<Vec> starts = gen_starts(plan, inst.box);
    if (k == 0) rep_starts[r] = starts;

    const auto t0 = std::chrono::steady_clock::now();
    const MultistartResult res = multistart_run_on(
        inst.objective, inst.box, spec.algorithms[k], starts, spec.config,
        rep_rng.substream(static_cast<std::uint64_t>(2 + k)), inner_workers);
    const auto t1 = std::chrono::steady_clock::now();

    cells[r][k].value = res.best.best_value;
    cells[r][k].time_s = std::chrono::duration<double>(t1 - t0).count();
  });

  std::vector<std::pair<std::string, std::vector<double>>> values;
  values.reserve(nalgos);
  for (int k = 0; k < nalgos; ++k) {
    std::vector<double> vals(reps);
    for (int r = 0; r < reps; ++r) vals[r] = cells[r][k].value;
    values.emplace_back(algo_name(spec.algorithms[k]), std::move(vals));
  }

  BenchReport report = compute_metrics(values, spec.problem.direction);
  report.problem = spec.problem;
  report.start_mode = spec.start_mode;
  report.starts = start_count;
  report.replications = reps;
  report.seed = spec.seed;
  report.known_optimum = known_optimum(spec.problem);
  report.rep_starts = std::move(rep_starts);
  for (int k = 0; k < nalgos; ++k) {
    auto& m = report.algorithms[k];
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
      m.times_s[r] = cells[r][k].time_s;
      total += cells[r][k].time_s;
    }
    m.mean_time_s = total / reps;
  }
  return report;
}

std::string render_csv(const BenchReport& report, bool include_times) {
  std::ostringstream out;
  out << "problem,algo,rep,value,abs_err,time_s\n";
  for (const auto& m : report.algorithms) {
    for (std::size_t r = 0; r < m.values.size(); ++r) {
      const double err = std::abs(m.values[r] - report.best_value);
      const double t = include_times ? m.times_s[r] : 0.0;
      out << report.problem.fn << ',' << m.name << ',' << r << ','
          << format_double(m.values[r]) << ',' << format_double(err) << ','
          << format_double(t) << '\n';
    }
  }
  return out.str();
}

std::string render_json(const BenchReport& report, bool include_times) {
  nlohmann::ordered_json j;
  j["problem"] = {{"fn", report.problem.fn},
                  {"dim", report.problem.dim},
                  {"direction", direction_name(report.problem.direction)},
                  {"transform", report.problem.transform}};
  if (is_random_criterion(report.problem.fn))
    j["problem"]["n_samples"] = report.problem.n_samples;
  j["start_mode"] = start_mode_name(report.start_mode);
  j["starts"] = report.starts;
  j["replications"] = report.replications;
  j["seed"] = report.seed;
  j["best_value"] = report.best_value;
  if (report.known_optimum) j["known_optimum"] = *report.known_optimum;
  j["algorithms"] = nlohmann::ordered_json::array();
  for (const auto& m : report.algorithms) {
    nlohmann::ordered_json a;
    a["name"] = m.name;
    a["rmse"] = m.rmse;
    a["ae50"] = m.ae50;
    a["ae95"] = m.ae95;
    a["ae99"] = m.ae99;
    a["mean_time_s"] = include_times ? m.mean_time_s : 0.0;
    a["values"] = m.values;
    j["algorithms"].push_back(std::move(a));
  }
  return j.dump(2) + "\n";
}

const char* direction_name(Direction direction) {
  return direction == Direction::Maximize ? "max" : "min";
}

std::optional<Direction> direction_from_name(const std::string& name) {
  if (name == "max" || name == "maximize") return Direction::Maximize;
  if (name == "min" || name == "minimize") return Direction::Minimize;
  return std::nullopt;
}

const char* start_mode_name(StartMode mode) {
  return mode == StartMode::Uniform ? "uniform" : "diagonal";
}

std::optional<StartMode> start_mode_from_name(const std::string& name) {
  if (name == "uniform") return StartMode::Uniform;
  if (name == "diagonal") return StartMode::Diagonal;
  return std::nullopt;
}

std::vector<std::string> known_problem_names() {
  std::vector<std::string> names;
  for (TestFn fn : all_testfns()) names.emplace_back(testfn_name(fn));
  names.emplace_back("ms");
  names.emplace_back("ew");
  return names;
}

}  // namespace smco
