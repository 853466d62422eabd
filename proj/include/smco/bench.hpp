#ifndef SMCO_BENCH_HPP
#define SMCO_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smco/core.hpp"
#include "smco/multistart.hpp"

namespace smco {

// Problem identifier: one of the deterministic test functions by name, or a
// random criterion ("ms", "ew") built on synthetic data that is fixed across
// replications. transform applies the domain shift/asymmetrize/rotate
// pipeline with a fresh seed per replication (test functions only).
struct ProblemSpec {
  std::string fn = "rastrigin";
  int dim = 2;
  Direction direction = Direction::Minimize;
  bool transform = false;
  int n_samples = 500;  // sample size of the random criteria
};

struct ExperimentSpec {
  ProblemSpec problem;
  std::vector<Algo> algorithms;
  StartMode start_mode = StartMode::Uniform;
  int starts = 0;  // 0 = round(10 sqrt(d))
  int replications = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  AlgoConfig config;
};

struct AlgoMetrics {
  std::string name;
  std::vector<double> values;   // one best value per replication
  std::vector<double> times_s;  // wall time per replication (informational)
  double rmse = 0.0;
  double ae50 = 0.0;
  double ae95 = 0.0;
  double ae99 = 0.0;
  double mean_time_s = 0.0;
};

struct BenchReport {
  ProblemSpec problem;
  StartMode start_mode = StartMode::Uniform;
  int starts = 1;
  int replications = 1;
  std::uint64_t seed = 0;
  double best_value = 0.0;  // best across all algorithms and replications
  std::optional<double> known_optimum;  // printed for audit when analytic
  std::vector<AlgoMetrics> algorithms;
  std::vector<std::vector<Vec>> rep_starts;  // not serialized
};

// Absolute errors against the cross-algorithm best value; AExx percentiles
// use the nearest-rank rule (lower of the two middle ranks at even counts).
BenchReport compute_metrics(
    const std::vector<std::pair<std::string, std::vector<double>>>& values,
    Direction direction);

double percentile_nearest_rank(std::vector<double> sorted_ascending,
                               double pct);

// Full protocol: per replication, a fresh transform seed (when transforming)
// and a fresh start set shared by every algorithm in the spec. The report is
// a pure function of the spec apart from the time fields.
BenchReport run_experiment(const ExperimentSpec& spec);

// Payload renderers. Wall times are nondeterministic, so they are emitted
// only when include_times is set; otherwise the time fields read 0 and the
// payload is byte-stable for a fixed spec.
std::string render_csv(const BenchReport& report, bool include_times);
std::string render_json(const BenchReport& report, bool include_times);

const char* direction_name(Direction direction);
std::optional<Direction> direction_from_name(const std::string& name);
const char* start_mode_name(StartMode mode);
std::optional<StartMode> start_mode_from_name(const std::string& name);

std::vector<std::string> known_problem_names();

}  // namespace smco

#endif  // SMCO_BENCH_HPP
