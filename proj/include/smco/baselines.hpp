#ifndef SMCO_BASELINES_HPP
#define SMCO_BASELINES_HPP

#include "smco/core.hpp"

namespace smco {

// Comparison optimizers with the usual textbook update rules. Gradients are
// central finite differences with a fixed step of fd_step_fraction * width_j;
// iterates and probes are clamped to the buffered box.
struct BaselineConfig {
  struct Gd {
    double learning_rate = 0.1;
    double momentum = 0.9;
    int max_iter = 1000;
    double tolerance = 1e-6;
  } gd;

  struct SignGd {
    double learning_rate = 0.1;
    double decay = 0.995;
    int max_iter = 1000;
    double tolerance = 1e-6;
  } signgd;

  struct Spsa {
    double stability = 50.0;  // A
    double gain = 0.1;        // a
    double alpha = 0.602;
    double gamma = 0.101;
    double perturbation = 1e-3;  // c
    double tolerance = 1e-7;
    int max_iter = 1000;
  } spsa;

  double buffer_fraction = 0.05;
  double fd_step_fraction = 1e-6;
};

RunRecord gd_run(const Objective& obj, const Box& box, const Vec& x0,
                 const BaselineConfig& cfg, RngStream rng);
RunRecord signgd_run(const Objective& obj, const Box& box, const Vec& x0,
                     const BaselineConfig& cfg, RngStream rng);
RunRecord spsa_run(const Objective& obj, const Box& box, const Vec& x0,
                   const BaselineConfig& cfg, RngStream rng);

}  // namespace smco

#endif  // SMCO_BASELINES_HPP
