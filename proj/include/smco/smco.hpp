#ifndef SMCO_SMCO_HPP
#define SMCO_SMCO_HPP

#include <functional>
#include <vector>

#include "smco/core.hpp"

namespace smco {

// Hyperparameters shared by the three optimizer variants.
struct SmcoConfig {
  double buffer_fraction = 0.05;  // bound expansion, delta* per coordinate
  // stop when |f(x_{n+1}) - f(x_n)| <= tol and the probe stencil of the
  // iteration is flat within tol (a lone flat pair on a plateaued criterion
  // is not convergence)
  double tolerance = 1e-6;
  int max_iter = 500;
  long long boost_n0 = 0;         // starting iteration counter of a plain run
  double stage_split = 0.5;       // fraction of max_iter for stage one of -R
  long long stage2_counter = 1000;  // boost of -R's local second stage
  long long br_counter = 100;       // extra boost of -BR's second pass
};

// Per-coordinate two-armed sampler: the high arm is centered at the upper
// bound, the low arm at the lower bound, both with U[-delta_j, delta_j] noise.
struct ArmPair {
  Vec high_mean;
  Vec low_mean;
  Vec noise_half_width;

  int dim() const { return static_cast<int>(high_mean.size()); }
};

ArmPair make_arms(const BufferedBox& domain);

// One reward vector: coordinate j pulls the high arm iff signs[j]. Consumes
// exactly one uniform draw per coordinate.
Vec draw_reward(const ArmPair& arms, const std::vector<bool>& signs,
                RngStream& rng);

// Step-adaptive finite-difference sign oracle. The step in coordinate j is
// width_j / (counter + 1); probes are clamped to the buffered box before
// evaluation. Component j is true iff f(x + h e_j) - f(x - h e_j) >= 0, with
// NaN differences mapping to false. Costs exactly 2*dim evaluations.
std::vector<bool> fd_sign(const std::function<double(const Vec&)>& f,
                          const Vec& x, long long counter,
                          const BufferedBox& domain);

// Optional trajectory capture for property tests. Each stage records its
// boost counter and the full sequence of running means (including the start).
struct RunTrace {
  struct Stage {
    long long boost = 0;
    std::vector<Vec> means;
  };
  std::vector<Stage> stages;
};

// Plain two-armed run: running-mean iterate driven by fd_sign arm choices.
RunRecord smco_run(const Objective& obj, const Box& box, const Vec& x0,
                   const SmcoConfig& cfg, RngStream rng,
                   RunTrace* trace = nullptr);

// Two-stage refinement: a global stage followed by a local stage whose
// iteration counter starts at stage2_counter; reports the running best.
RunRecord smco_r_run(const Objective& obj, const Box& box, const Vec& x0,
                     const SmcoConfig& cfg, RngStream rng,
                     RunTrace* trace = nullptr);

// Two passes of the refined run on half budgets; the second pass restarts
// from the first pass's best point with an extra br_counter boost.
RunRecord smco_br_run(const Objective& obj, const Box& box, const Vec& x0,
                      const SmcoConfig& cfg, RngStream rng,
                      RunTrace* trace = nullptr);

}  // namespace smco

#endif  // SMCO_SMCO_HPP
