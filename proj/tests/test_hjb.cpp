#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smco/hjb.hpp"
#include "smco/smco.hpp"

using namespace smco;

namespace {

Objective make_1d(std::function<double(double)> f) {
  Objective obj;
  obj.dim = 1;
  obj.direction = Direction::Maximize;
  obj.eval = [f = std::move(f)](const Vec& x) { return f(x[0]); };
  return obj;
}

HjbGrid solve_neg_square(double epsilon, int nodes) {
  const Box box(1, -1.0, 1.0);
  const BufferedBox dom(box, 0.05);
  const auto [glo, ghi] = default_grid_interval(dom, epsilon);
  const Fn1d fhat =
      extend_function(make_1d([](double x) { return -x * x; }), dom);
  return hjb_solve_1d(fhat, -1.0, 1.0, epsilon, glo, ghi, nodes);
}

}  // namespace

TEST_CASE("extend_function clamps outside the buffered box") {
  const Box box(1, 0.0, 1.0);
  const BufferedBox dom(box, 0.05);
  const Fn1d fhat = extend_function(make_1d([](double x) { return x; }), dom);
  CHECK(fhat(-1.0) == doctest::Approx(-0.05));  // boundary value of the box
  CHECK(fhat(3.0) == doctest::Approx(1.05));
  CHECK(fhat(0.4) == doctest::Approx(0.4));  // restriction is the identity

  Objective two;
  two.dim = 2;
  two.direction = Direction::Maximize;
  two.eval = [](const Vec&) { return 0.0; };
  CHECK_THROWS(extend_function(two, BufferedBox(Box(2, 0.0, 1.0), 0.05)));
}

TEST_CASE("constants solve the equation exactly") {
  const Fn1d flat = [](double) { return 2.5; };
  const HjbGrid grid = hjb_solve_1d(flat, -1.0, 1.0, 0.1, -2.0, 2.0, 101);
  for (double v : grid.values) CHECK(v == 2.5);
}

TEST_CASE("grid respects the stability bound") {
  const HjbGrid grid = solve_neg_square(0.05, 401);
  const double drift = 1.0;
  CHECK(grid.dt <=
        grid.dx * grid.dx / (grid.epsilon * grid.epsilon + grid.dx * drift));
  CHECK(grid.t_end() == doctest::Approx(1.05));
}

TEST_CASE("value at the origin approximates the maximum, improving in eps") {
  const HjbGrid coarse = solve_neg_square(0.05, 401);
  const int mid = static_cast<int>(std::lround((0.0 - coarse.x_lo) / coarse.dx));
  const double u0 = coarse.at(0, mid);
  CHECK(std::abs(u0 - 0.0) < 0.05);

  const HjbGrid fine = solve_neg_square(0.025, 401);
  const int mid2 = static_cast<int>(std::lround((0.0 - fine.x_lo) / fine.dx));
  CHECK(std::abs(fine.at(0, mid2)) < std::abs(u0));
}

TEST_CASE("deterministic-control representation bounds the field") {
  // with eps -> 0 the value is max_{y in ctrl} fhat(x + (1 - t) y); the
  // numerical field must dominate the terminal payoff and stay within the
  // eps-scale band of the representation
  const HjbGrid grid = solve_neg_square(0.05, 401);
  const Box box(1, -1.0, 1.0);
  const BufferedBox dom(box, 0.05);
  const Fn1d fhat =
      extend_function(make_1d([](double x) { return -x * x; }), dom);

  double worst_gap = 0.0;
  for (int k = 0; k < grid.nx; ++k) {
    const double x = grid.x(k);
    const double u = grid.at(0, k);
    CHECK(u >= fhat(x) - 0.05);
    double rep = -1e300;
    for (int i = 0; i <= 400; ++i) {
      const double y = -1.0 + 2.0 * i / 400.0;
      rep = std::max(rep, fhat(x + 1.0 * y));
    }
    worst_gap = std::max(worst_gap, std::abs(u - rep));
  }
  CHECK(worst_gap < 0.15);
}

TEST_CASE("comparison principle and translation equivariance") {
  const Fn1d f = [](double x) { return -x * x; };
  const Fn1d g = [](double x) { return -x * x + 0.3 * (1.0 + std::sin(3.0 * x)); };
  const HjbGrid uf = hjb_solve_1d(f, -1.0, 1.0, 0.05, -2.2, 2.2, 221);
  const HjbGrid ug = hjb_solve_1d(g, -1.0, 1.0, 0.05, -2.2, 2.2, 221);
  REQUIRE(uf.values.size() == ug.values.size());
  for (std::size_t i = 0; i < uf.values.size(); ++i)
    CHECK(uf.values[i] <= ug.values[i] + 1e-12);

  const Fn1d shifted = [&f](double x) { return f(x) + 4.0; };
  const HjbGrid us = hjb_solve_1d(shifted, -1.0, 1.0, 0.05, -2.2, 2.2, 221);
  for (std::size_t i = 0; i < uf.values.size(); ++i)
    CHECK(us.values[i] == doctest::Approx(uf.values[i] + 4.0).epsilon(1e-9));
}

TEST_CASE("refinement changes shrink with the mesh") {
  const Fn1d f = [](double x) { return -x * x; };
  const HjbGrid g1 = hjb_solve_1d(f, -1.0, 1.0, 0.05, -2.0, 2.0, 101);
  const HjbGrid g2 = hjb_solve_1d(f, -1.0, 1.0, 0.05, -2.0, 2.0, 201);
  const HjbGrid g3 = hjb_solve_1d(f, -1.0, 1.0, 0.05, -2.0, 2.0, 401);
  double d12 = 0.0, d23 = 0.0;
  for (int k = 0; k < g1.nx; ++k) {
    d12 = std::max(d12, std::abs(g1.at(0, k) - g2.at(0, 2 * k)));
    d23 = std::max(d23, std::abs(g2.at(0, 2 * k) - g3.at(0, 4 * k)));
  }
  CHECK(d23 <= d12 * 1.05 + 1e-12);
}

TEST_CASE("strategy signs on monotone and symmetric payoffs") {
  // strictly increasing payoff: high arm wherever the truncated boundary's
  // flat continuation (advancing inward at drift speed) has not reached
  const Fn1d ramp = [](double x) { return x; };
  const HjbGrid up = hjb_solve_1d(ramp, -1.0, 1.0, 0.05, -1.3, 1.3, 261);
  for (int m = 0; m <= up.nt; m += std::max(1, up.nt / 7)) {
    const double t = up.time(m);
    const double untouched = up.x_hi() - (up.t_end() - t) - 5.0 * up.dx;
    for (int k = 1; k + 1 < up.nx && up.x(k) <= untouched; ++k)
      CHECK(pde_strategy_sign(up, t, up.x(k)));
  }

  // even payoff: the centered difference at the symmetry point is zero and
  // the strict inequality classifies it as the low arm
  const HjbGrid even = solve_neg_square(0.05, 401);
  const int mid = static_cast<int>(std::lround((0.0 - even.x_lo) / even.dx));
  CHECK(even.x(mid) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!pde_strategy_sign(even, 0.5, even.x(mid)));

  // signs never contradict the payoff gradient away from the flat plateau
  for (int m = 0; m <= even.nt; m += std::max(1, even.nt / 9)) {
    const double t = even.time(m);
    if (t > 1.0) continue;
    for (int k = 1; k + 1 < even.nx; ++k) {
      const double x = even.x(k);
      const double grad = even.gradient(t, x);
      if (grad > 0.0) CHECK(x < 0.0);
      if (grad < 0.0) CHECK(x > 0.0);
    }
  }

  CHECK_THROWS(pde_strategy_sign(even, 99.0, 0.0));
  CHECK_THROWS(pde_strategy_sign(even, 0.5, 99.0));
}

TEST_CASE("pde strategy simulation basics") {
  // increasing objective drives the mean to the upper bound
  const Objective ramp = make_1d([](double x) { return x; });
  const Box box(1, -1.0, 1.0);
  const RunRecord rec =
      simulate_pde_strategy(ramp, box, 0.05, 2000, 0.05, RngStream(5, 0));
  CHECK(rec.final_point[0] > 0.9);

  // a nearly degenerate control set pins the mean at the arm value
  const Box tight(1, 0.4 - 1e-9, 0.4 + 1e-9);
  const Objective flat = make_1d([](double x) { return -x * x; });
  const RunRecord pinned =
      simulate_pde_strategy(flat, tight, 0.05, 500, 0.05, RngStream(6, 0));
  CHECK(std::abs(pinned.final_point[0] - 0.4) < 0.01);
}

TEST_CASE("pde strategy and sign strategy agree on a shifted quadratic") {
  const Box box(1, -1.0, 1.0);
  const Objective obj = make_1d([](double x) {
    return -(x - 0.3) * (x - 0.3);
  });
  const BufferedBox dom(box, 0.05);
  const auto [glo, ghi] = default_grid_interval(dom, 0.05);
  const HjbGrid grid = hjb_solve_1d(extend_function(obj, dom), -1.0, 1.0,
                                    0.05, glo, ghi, 401);

  const int seeds = 20;
  const int n = 2000;
  std::vector<double> pde_err, smco_err;
  SmcoConfig cfg;
  cfg.max_iter = n;
  cfg.tolerance = 1e-300;
  for (int s = 0; s < seeds; ++s) {
    const RunRecord p = simulate_pde_strategy(obj, box, 0.05, n, 0.05,
                                              RngStream(700, s), &grid);
    pde_err.push_back(std::abs(p.final_point[0] - 0.3));
    const RunRecord q = smco_run(obj, box, Vec{0.0}, cfg, RngStream(700, s));
    smco_err.push_back(std::abs(q.final_point[0] - 0.3));
  }
  std::sort(pde_err.begin(), pde_err.end());
  std::sort(smco_err.begin(), smco_err.end());
  CHECK(pde_err[seeds / 2] < 0.15);
  CHECK(std::abs(pde_err[seeds / 2] - smco_err[seeds / 2]) < 0.1);
}

TEST_CASE("grid dump is columnar") {
  const HjbGrid grid = hjb_solve_1d([](double) { return 1.0; }, -1.0, 1.0,
                                    0.2, -1.0, 1.0, 5);
  std::ostringstream out;
  dump_grid(grid, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t x u");
  double t = 0.0, x = 0.0, u = 0.0;
  int rows = 0;
  while (in >> t >> x >> u) {
    ++rows;
    CHECK(u == doctest::Approx(1.0));
  }
  CHECK(rows == (grid.nt + 1) * grid.nx);
}
