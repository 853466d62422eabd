#include "smco/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace smco {

namespace {

constexpr int kMaxTimeSteps = 20'000'000;

int nearest_index(double value, double origin, double spacing, int count) {
  const int i = static_cast<int>(std::lround((value - origin) / spacing));
  return std::clamp(i, 0, count - 1);
}

}  // namespace

double HjbGrid::gradient(double t, double x) const {
  const int m = nearest_index(t, 0.0, dt, nt + 1);
  const int k = std::clamp(nearest_index(x, x_lo, dx, nx), 1, nx - 2);
  return (at(m, k + 1) - at(m, k - 1)) / (2.0 * dx);
}

Fn1d extend_function(const Objective& obj, const BufferedBox& domain) {
  detail::require(obj.dim == 1 && domain.dim() == 1,
                  "extend_function: one-dimensional problems only");
  detail::require(static_cast<bool>(obj.eval), "extend_function: missing eval");
  const double lo = domain.lower(0);
  const double hi = domain.upper(0);
  return [eval = obj.eval, lo, hi](double x) {
    return eval(Vec{std::clamp(x, lo, hi)});
  };
}

std::pair<double, double> default_grid_interval(const BufferedBox& domain,
                                                double epsilon) {
  const double lo = domain.lower(0);
  const double hi = domain.upper(0);
  const double width = hi - lo;
  // The simulation queries S_i/n, which lives between 0 and the buffered
  // bounds (plus a vanishing start-point contribution).
  const double pad = 0.05 * width + 2.0 * epsilon;
  return {std::min(0.0, lo) * (1.0 + epsilon) - pad,
          std::max(0.0, hi) * (1.0 + epsilon) + pad};
}

HjbGrid hjb_solve_1d(const Fn1d& fhat, double ctrl_lo, double ctrl_hi,
                     double epsilon, double grid_lo, double grid_hi,
                     int nodes) {
  detail::require(ctrl_lo < ctrl_hi, "hjb_solve_1d: empty control interval");
  detail::require(epsilon > 0.0, "hjb_solve_1d: epsilon must be > 0");
  detail::require(nodes >= 3, "hjb_solve_1d: need at least 3 nodes");
  detail::require(grid_lo < grid_hi, "hjb_solve_1d: empty grid interval");

  HjbGrid grid;
  grid.epsilon = epsilon;
  grid.nx = nodes;
  grid.x_lo = grid_lo;
  grid.dx = (grid_hi - grid_lo) / (nodes - 1);

  const double horizon = 1.0 + epsilon;
  const double drift = std::max(std::abs(ctrl_lo), std::abs(ctrl_hi));
  const double dt_stable =
      0.9 * grid.dx * grid.dx / (epsilon * epsilon + grid.dx * drift);
  const long long steps =
      static_cast<long long>(std::ceil(horizon / dt_stable));
  detail::require(steps <= kMaxTimeSteps,
                  "hjb_solve_1d: stability bound demands too many steps");
  grid.nt = static_cast<int>(steps);
  grid.dt = horizon / grid.nt;

  grid.values.resize(static_cast<std::size_t>(grid.nt + 1) * grid.nx);
  double* terminal = grid.values.data() +
                     static_cast<std::size_t>(grid.nt) * grid.nx;
  for (int k = 0; k < grid.nx; ++k) terminal[k] = fhat(grid.x(k));

  const double inv_dx = 1.0 / grid.dx;
  const double diffusion = 0.5 * epsilon * epsilon * inv_dx * inv_dx;
  for (int m = grid.nt - 1; m >= 0; --m) {
    const double* next =
        grid.values.data() + static_cast<std::size_t>(m + 1) * grid.nx;
    double* cur = grid.values.data() + static_cast<std::size_t>(m) * grid.nx;
    for (int k = 0; k < grid.nx; ++k) {
      // Ghost nodes continue the field constantly (Neumann boundary).
      const double left = k > 0 ? next[k - 1] : next[k];
      const double right = k + 1 < grid.nx ? next[k + 1] : next[k];
      const double fwd = (right - next[k]) * inv_dx;
      const double bwd = (next[k] - left) * inv_dx;
      // Upwinded candidates for the two extreme controls; the Hamiltonian is
      // linear in the gradient so the extremes attain the sup.
      const double cand_hi = ctrl_hi >= 0.0 ? ctrl_hi * fwd : ctrl_hi * bwd;
      const double cand_lo = ctrl_lo >= 0.0 ? ctrl_lo * fwd : ctrl_lo * bwd;
      const double hamiltonian = std::max(cand_hi, cand_lo);
      const double laplacian = diffusion * (right - 2.0 * next[k] + left);
      cur[k] = next[k] + grid.dt * (hamiltonian + laplacian);
    }
  }

  for (double v : grid.values)
    if (!std::isfinite(v))
      throw std::runtime_error("hjb_solve_1d: non-finite value field");
  return grid;
}

bool pde_strategy_sign(const HjbGrid& grid, double t, double x) {
  const double slack_t = 0.5 * grid.dt;
  const double slack_x = 0.5 * grid.dx;
  detail::require(t >= -slack_t && t <= grid.t_end() + slack_t,
                  "pde_strategy_sign: time outside grid");
  detail::require(x >= grid.x_lo - slack_x && x <= grid.x_hi() + slack_x,
                  "pde_strategy_sign: point outside grid");
  return grid.gradient(t, x) > 0.0;
}

RunRecord simulate_pde_strategy(const Objective& obj, const Box& box,
                                double epsilon, int n, double buffer_fraction,
                                RngStream rng, const HjbGrid* precomputed,
                                int nodes) {
  detail::require(obj.dim == 1 && box.dim() == 1,
                  "simulate_pde_strategy: one-dimensional problems only");
  detail::require(n >= 1, "simulate_pde_strategy: n must be >= 1");

  const BufferedBox domain(box, buffer_fraction);
  HjbGrid local;
  const HjbGrid* grid = precomputed;
  if (!grid) {
    const auto [glo, ghi] = default_grid_interval(domain, epsilon);
    local = hjb_solve_1d(extend_function(obj, domain), box.lower[0],
                         box.upper[0], epsilon, glo, ghi, nodes);
    grid = &local;
  }

  const double delta = domain.delta(0);
  const double lo = box.lower[0];
  const double hi = box.upper[0];

  double sum = rng.uniform(lo, hi);  // eta, uniform on the box
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) * inv_n;
    const double query =
        std::clamp(sum * inv_n, grid->x_lo, grid->x_hi());
    const bool high = pde_strategy_sign(*grid, t, query);
    const double center = high ? hi : lo;
    sum += center + rng.uniform(-delta, delta);
  }

  EvalTracker f(obj.direction == Direction::Maximize ? obj
                                                     : negate_objective(obj));
  RunRecord rec;
  rec.final_point = Vec{sum * inv_n};
  rec.final_value = f(rec.final_point);
  rec.best_point = f.best_point();
  rec.best_value = f.best_value();
  rec.iterations = n;
  rec.evaluations = f.evaluations();
  rec.converged = false;
  if (obj.direction == Direction::Minimize) {
    rec.final_value = -rec.final_value;
    rec.best_value = -rec.best_value;
  }
  return rec;
}

void dump_grid(const HjbGrid& grid, std::ostream& out) {
  out << "t x u\n";
  out.precision(12);
  for (int m = 0; m <= grid.nt; ++m)
    for (int k = 0; k < grid.nx; ++k)
      out << grid.time(m) << ' ' << grid.x(k) << ' ' << grid.at(m, k) << "\n";
}

}  // namespace smco
