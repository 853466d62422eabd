#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "smco/multistart.hpp"

using namespace smco;

namespace {

Objective make_objective(int dim, std::function<double(const Vec&)> f) {
  Objective obj;
  obj.dim = dim;
  obj.direction = Direction::Maximize;
  obj.eval = std::move(f);
  return obj;
}

}  // namespace

TEST_CASE("diagonal starts are equally spaced and seed independent") {
  const Box box(2, 0.0, 1.0);
  const auto starts =
      gen_starts({StartMode::Diagonal, 3, RngStream(1, 0)}, box);
  REQUIRE(starts.size() == 3);
  CHECK(starts[0] == Vec{0.0, 0.0});
  CHECK(starts[1] == Vec{0.5, 0.5});
  CHECK(starts[2] == Vec{1.0, 1.0});

  const auto other =
      gen_starts({StartMode::Diagonal, 3, RngStream(99, 5)}, box);
  CHECK(starts == other);

  const Box line(1, -2.0, 4.0);
  const auto center =
      gen_starts({StartMode::Diagonal, 1, RngStream(1, 0)}, line);
  CHECK(center == std::vector<Vec>{Vec{1.0}});
}

TEST_CASE("uniform starts follow the uniform law") {
  const Box box(1, 0.0, 1.0);
  const auto starts =
      gen_starts({StartMode::Uniform, 100, RngStream(7, 0)}, box);
  double mean = 0.0;
  for (const Vec& p : starts) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] <= 1.0);
    mean += p[0];
  }
  mean /= 100.0;
  CHECK(std::abs(mean - 0.5) < 0.15);
}

TEST_CASE("default start counts") {
  CHECK(default_start_count(2, Regime::LowDim) == 14);
  CHECK(default_start_count(10, Regime::LowDim) == 32);
  CHECK(default_start_count(20, Regime::LowDim) == 45);
  CHECK(default_start_count(50, Regime::LowDim) == 71);
  CHECK(default_start_count(200, Regime::HighDim) == 14);
  CHECK(default_start_count(1, Regime::LowDim) == 10);
}

TEST_CASE("single start reduces to the underlying algorithm") {
  const Box box(2, -5.0, 5.0);
  const Objective obj = make_objective(2, [](const Vec& x) {
    return -(x[0] * x[0] + x[1] * x[1]);
  });
  const AlgoConfig cfg;
  const RngStream rng(42, 0);
  const auto ms = multistart_run(obj, box, Algo::SmcoR,
                                 {StartMode::Diagonal, 1, RngStream(5, 0)},
                                 cfg, rng, 1);
  const RunRecord direct =
      run_algorithm(Algo::SmcoR, obj, box, box.center(), cfg, rng.substream(0));
  CHECK(ms.best.final_point == direct.final_point);
  CHECK(ms.best.best_value == direct.best_value);
  CHECK(ms.best.evaluations == direct.evaluations);
  CHECK(ms.best_index == 0);
}

TEST_CASE("results do not depend on the worker count") {
  const Box box(2, -5.12, 5.12);
  const Objective obj = make_objective(2, [](const Vec& x) {
    double s = 0.0;
    for (double xi : x) s -= xi * xi - 10.0 * std::cos(2.0 * 3.14159 * xi);
    return s;
  });
  const AlgoConfig cfg;
  const StartPlan plan{StartMode::Uniform, 8, RngStream(3, 1)};
  const auto a = multistart_run(obj, box, Algo::Smco, plan, cfg,
                                RngStream(11, 0), 1);
  const auto b = multistart_run(obj, box, Algo::Smco, plan, cfg,
                                RngStream(11, 0), 8);
  CHECK(a.best_index == b.best_index);
  CHECK(a.best.best_value == b.best.best_value);
  CHECK(a.best.final_point == b.best.final_point);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i)
    CHECK(a.runs[i].best_value == b.runs[i].best_value);
}

TEST_CASE("best selection is the max over per-start bests, ties to lowest") {
  const Box box(1, 0.0, 1.0);
  const Objective flat = make_objective(1, [](const Vec&) { return 1.0; });
  const auto res = multistart_run(flat, box, Algo::Smco,
                                  {StartMode::Diagonal, 4, RngStream(1, 0)},
                                  AlgoConfig{}, RngStream(2, 0), 2);
  CHECK(res.best_index == 0);
  double max_best = -1e300;
  for (const auto& run : res.runs) max_best = std::max(max_best, run.best_value);
  CHECK(res.best.best_value == max_best);
}

TEST_CASE("per-start failures are reported and survivors win") {
  const Box box(2, 0.0, 1.0);
  // poisons exactly the third diagonal start point; probes shift a single
  // coordinate so no other run evaluates it
  const Objective picky = make_objective(2, [](const Vec& x) {
    if (x[0] == 1.0 && x[1] == 1.0) throw std::runtime_error("poison point");
    return x[0] + x[1];
  });
  const auto res = multistart_run(picky, box, Algo::Smco,
                                  {StartMode::Diagonal, 3, RngStream(1, 0)},
                                  AlgoConfig{}, RngStream(4, 0), 1);
  CHECK(res.failures[2] == "poison point");
  CHECK(res.failures[0].empty());
  CHECK(res.failures[1].empty());
  CHECK(res.best_index >= 0);

  const Objective hostile = make_objective(2, [](const Vec&) -> double {
    throw std::runtime_error("always fails");
  });
  CHECK_THROWS_AS(multistart_run(hostile, box, Algo::Smco,
                                 {StartMode::Diagonal, 2, RngStream(1, 0)},
                                 AlgoConfig{}, RngStream(4, 0), 1),
                  std::runtime_error);
}

TEST_CASE("multistart smco-r solves untransformed rastrigin reliably") {
  // oracle: dense grid search certifies the global minimum of the surface
  const Box box(2, -5.12, 5.12);
  double grid_min = 1e300;
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; j <= 1000; ++j) {
      const Vec x{-5.12 + 10.24 * i / 1000.0, -5.12 + 10.24 * j / 1000.0};
      double v = 20.0;
      for (double xi : x) v += xi * xi - 10.0 * std::cos(2.0 * 3.14159265358979323846 * xi);
      grid_min = std::min(grid_min, v);
    }
  }
  CHECK(grid_min >= 0.0);
  CHECK(grid_min < 1e-3);

  Objective obj;
  obj.dim = 2;
  obj.direction = Direction::Minimize;
  obj.eval = [](const Vec& x) {
    double v = 20.0;
    for (double xi : x)
      v += xi * xi - 10.0 * std::cos(2.0 * 3.14159265358979323846 * xi);
    return v;
  };

  int good = 0;
  const int reps = 50;
  for (int rep = 0; rep < reps; ++rep) {
    const auto res = multistart_run(
        obj, box, Algo::SmcoR,
        {StartMode::Uniform, 14, RngStream(100 + rep, 0)}, AlgoConfig{},
        RngStream(200 + rep, 0), 1);
    if (res.best.best_value <= grid_min + 2.0) ++good;
  }
  CHECK(good >= 45);  // >= 90% of replications
}

TEST_CASE("minimize direction picks the smallest best value") {
  const Box box(1, -2.0, 2.0);
  Objective obj;
  obj.dim = 1;
  obj.direction = Direction::Minimize;
  obj.eval = [](const Vec& x) { return (x[0] - 1.0) * (x[0] - 1.0); };
  const auto res = multistart_run(obj, box, Algo::SmcoR,
                                  {StartMode::Diagonal, 5, RngStream(1, 0)},
                                  AlgoConfig{}, RngStream(8, 0), 2);
  for (const auto& run : res.runs)
    CHECK(res.best.best_value <= run.best_value);
  CHECK(res.best.best_value < 0.05);
}
