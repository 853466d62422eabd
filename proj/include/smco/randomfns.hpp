#ifndef SMCO_RANDOMFNS_HPP
#define SMCO_RANDOMFNS_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smco/core.hpp"

namespace smco {

// Sample for the maximum-score criterion. Row i holds the scale covariate
// x1[i], the remaining d covariates x_rest[i], and the binary outcome
// y[i] = 1{x1 + x_rest' beta0 + eps >= 0}.
struct MsDataset {
  int dim = 0;  // length of beta
  std::vector<double> x1;
  std::vector<Vec> x_rest;
  std::vector<int> y;
  Vec true_beta;  // empty after import

  int size() const { return static_cast<int>(y.size()); }
};

// x1 and eps have variance d, the remaining covariates are standard normal,
// beta0 is standard normal per coordinate. eps_scale rescales the error
// standard deviation (0 gives the noiseless variant used in tests).
MsDataset gen_ms_data(int dim, int n, std::uint64_t seed,
                      double eps_scale = 1.0);

// (1/N) sum_i y_i 1{x1_i + x_rest_i' beta >= 0}: piecewise constant in beta.
double eval_ms(const MsDataset& data, const Vec& beta);
Objective make_ms_objective(const MsDataset& data);
Box ms_default_box(int dim);  // [-20, 20]^d

// Sample for the empirical-welfare criterion under a known constant
// propensity score. Covariates are d-1 dimensional; beta has an intercept.
//
// Synthetic stand-in for the job-training data the original study uses:
// x[0] standardizes a log-normal pre-program earnings draw, x[1] a normal
// years-of-education draw, x[2]/x[3] its standardized square and cube, and
// any further columns are standard normal. Treatment is Bernoulli(2/3) and
// outcomes follow y = 5 + x0 + 0.5*x1 + d*(1 + 2*x1 - x0) + noise, so the
// welfare-optimal linear rule is nontrivial.
struct EwDataset {
  int dim = 0;  // length of beta (intercept + d-1 covariates)
  double propensity = 2.0 / 3.0;
  std::vector<int> treated;
  std::vector<Vec> x;
  std::vector<double> y;

  int size() const { return static_cast<int>(y.size()); }
};

EwDataset gen_ew_data(int dim, int n, std::uint64_t seed);

// (1/N) sum_i (d_i/p - (1-d_i)/(1-p)) y_i 1{beta_1 + x_i' beta_{-1} >= 0}.
double eval_ew(const EwDataset& data, const Vec& beta);
Objective make_ew_objective(const EwDataset& data);
Box ew_default_box(int dim);  // [-20, 20]^d

// Columnar text round-trip: '#'-prefixed metadata, one header row, one
// observation per line.
void save_ms_dataset(const MsDataset& data, std::ostream& out);
MsDataset load_ms_dataset(std::istream& in);
void save_ew_dataset(const EwDataset& data, std::ostream& out);
EwDataset load_ew_dataset(std::istream& in);

// Constraint penalties subtracted from a maximization objective:
// F(x) = f(x) - l1 * sum g_i(x)^2 - l2 * sum max(0, h_j(x))^2.
struct PenaltySpec {
  std::vector<std::function<double(const Vec&)>> equalities;    // g_i(x) = 0
  std::vector<std::function<double(const Vec&)>> inequalities;  // h_j(x) <= 0
  double equality_weight = 1.0;
  double inequality_weight = 1.0;
};

Objective penalize(const Objective& obj, const PenaltySpec& spec);

}  // namespace smco

#endif  // SMCO_RANDOMFNS_HPP
