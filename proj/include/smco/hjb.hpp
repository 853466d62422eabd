#ifndef SMCO_HJB_HPP
#define SMCO_HJB_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include "smco/core.hpp"

namespace smco {

using Fn1d = std::function<double(double)>;

// Value field of the 1-D control problem on a space-time grid. Row m holds
// u(t_m, .), t_m = m * dt, with the terminal payoff at m = nt.
struct HjbGrid {
  double x_lo = 0.0;
  double dx = 0.0;
  int nx = 0;
  double dt = 0.0;
  int nt = 0;
  double epsilon = 0.0;
  std::vector<double> values;  // (nt + 1) * nx, row-major in time

  double at(int m, int k) const {
    return values[static_cast<std::size_t>(m) * nx + k];
  }
  double x(int k) const { return x_lo + dx * k; }
  double time(int m) const { return dt * m; }
  double t_end() const { return dt * nt; }
  double x_hi() const { return x(nx - 1); }

  // Centered spatial difference at the nearest grid point.
  double gradient(double t, double x) const;
};

// Constant continuation of a 1-D objective outside its buffered box.
Fn1d extend_function(const Objective& obj, const BufferedBox& domain);

// Spatial interval that covers the buffered box and every point the strategy
// simulation can query.
std::pair<double, double> default_grid_interval(const BufferedBox& domain,
                                                double epsilon);

// Explicit monotone upwind scheme for
//   du/dt + sup_{p in [ctrl_lo, ctrl_hi]} p * du/dx + eps^2/2 * d2u/dx2 = 0
// backward from u(1 + eps, x) = fhat(x). The time step is chosen from the
// CFL bound dt <= dx^2 / (eps^2 + dx * max|ctrl|) with a 0.9 safety factor.
HjbGrid hjb_solve_1d(const Fn1d& fhat, double ctrl_lo, double ctrl_hi,
                     double epsilon, double grid_lo, double grid_hi,
                     int nodes);

// Arm choice of the PDE strategy: true iff the centered difference of u at
// the nearest node is strictly positive (ties pick the low arm).
bool pde_strategy_sign(const HjbGrid& grid, double t, double x);

// Two-armed simulation of the PDE strategy: n pulls, each consulting the
// value gradient at (i/n, S_{i-1}/n); returns the terminal mean S_n/n. Pass
// a precomputed grid to amortize the solve across seeds.
RunRecord simulate_pde_strategy(const Objective& obj, const Box& box,
                                double epsilon, int n, double buffer_fraction,
                                RngStream rng,
                                const HjbGrid* precomputed = nullptr,
                                int nodes = 401);

// Columnar dump (t, x, u), one node per line.
void dump_grid(const HjbGrid& grid, std::ostream& out);

}  // namespace smco

#endif  // SMCO_HJB_HPP
