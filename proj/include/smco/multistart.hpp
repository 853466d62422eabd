#ifndef SMCO_MULTISTART_HPP
#define SMCO_MULTISTART_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smco/baselines.hpp"
#include "smco/core.hpp"
#include "smco/smco.hpp"

namespace smco {

enum class StartMode { Uniform, Diagonal };

struct StartPlan {
  StartMode mode = StartMode::Uniform;
  int count = 1;
  RngStream rng{0, 0};
};

// Uniform: i.i.d. uniform points on the box. Diagonal: equally spaced points
// on the lower-to-upper corner segment, endpoints included for count >= 2,
// box center for count == 1 (seed-independent).
std::vector<Vec> gen_starts(const StartPlan& plan, const Box& box);

enum class Regime { LowDim, HighDim };

// round(10*sqrt(d)) for the low-dimensional protocol, round(sqrt(d)) for the
// high-dimensional one.
int default_start_count(int dim, Regime regime);

enum class Algo { Smco, SmcoR, SmcoBr, Gd, SignGd, Spsa };

const char* algo_name(Algo algo);
std::optional<Algo> algo_from_name(const std::string& name);

struct AlgoConfig {
  SmcoConfig smco;
  BaselineConfig baseline;
};

RunRecord run_algorithm(Algo algo, const Objective& obj, const Box& box,
                        const Vec& x0, const AlgoConfig& cfg, RngStream rng);

struct MultistartResult {
  RunRecord best;
  int best_index = -1;
  std::vector<Vec> starts;
  std::vector<RunRecord> runs;        // index-aligned with starts
  std::vector<std::string> failures;  // empty string = run succeeded
};

// Fan-out/fan-in over precomputed starts. Start i runs on rng.substream(i),
// so the result is a pure function of the inputs, never of the worker count
// or schedule. Ties on best_value resolve to the lowest start index. Throws
// only if every start fails.
MultistartResult multistart_run_on(const Objective& obj, const Box& box,
                                   Algo algo, const std::vector<Vec>& starts,
                                   const AlgoConfig& cfg, RngStream rng,
                                   int workers);

MultistartResult multistart_run(const Objective& obj, const Box& box,
                                Algo algo, const StartPlan& plan,
                                const AlgoConfig& cfg, RngStream rng,
                                int workers);

// Runs fn(i) for i in [0, count) on the given number of threads. Work items
// must be independent; results must be written to index-distinct slots.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace smco

#endif  // SMCO_MULTISTART_HPP
