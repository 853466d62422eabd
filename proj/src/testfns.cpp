#include "smco/testfns.hpp"

#include <cmath>

namespace smco {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sin(pi * t) with exact integer zeros: splitting off the nearest integer
// keeps sin(k*pi) == 0 instead of sin(k*fl(pi)) ~ 1e-16, so the Michalewicz
// vertex maxima evaluate to exactly zero.
double sin_pi(double t) {
  if (!std::isfinite(t)) return std::numeric_limits<double>::quiet_NaN();
  const double k = std::nearbyint(t);
  const double s = std::sin(kPi * (t - k));
  const bool odd = std::fmod(std::fabs(k), 2.0) == 1.0;
  return odd ? -s : s;
}

double rastrigin(const Vec& x) {
  double sum = 10.0 * static_cast<double>(x.size());
  for (double xi : x) sum += xi * xi - 10.0 * std::cos(2.0 * kPi * xi);
  return sum;
}

double ackley(const Vec& x) {
  const double a = 20.0, b = 0.2, c = 2.0 * kPi;
  const double d = static_cast<double>(x.size());
  double sq = 0.0, co = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    co += std::cos(c * xi);
  }
  return -a * std::exp(-b * std::sqrt(sq / d)) - std::exp(co / d) + a +
         std::exp(1.0);
}

double griewank(const Vec& x) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

// Steepness m = 10.
double michalewicz(const Vec& x) {
  const int m = 10;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double t = xi / kPi;  // t*t == 1 exactly at the pi vertex
    const double s = sin_pi(static_cast<double>(i + 1) * (t * t));
    sum += std::sin(xi) * std::pow(s, 2 * m);
  }
  return -sum;
}

}  // namespace

const char* testfn_name(TestFn fn) {
  switch (fn) {
    case TestFn::Rastrigin: return "rastrigin";
    case TestFn::Ackley: return "ackley";
    case TestFn::Griewank: return "griewank";
    case TestFn::Michalewicz: return "michalewicz";
  }
  return "unknown";
}

std::optional<TestFn> testfn_from_name(const std::string& name) {
  for (TestFn fn : all_testfns())
    if (name == testfn_name(fn)) return fn;
  return std::nullopt;
}

std::vector<TestFn> all_testfns() {
  return {TestFn::Rastrigin, TestFn::Ackley, TestFn::Griewank,
          TestFn::Michalewicz};
}

double eval_testfn(TestFn fn, const Vec& x) {
  detail::require(!x.empty(), "eval_testfn: empty input");
  switch (fn) {
    case TestFn::Rastrigin: return rastrigin(x);
    case TestFn::Ackley: return ackley(x);
    case TestFn::Griewank: return griewank(x);
    case TestFn::Michalewicz: return michalewicz(x);
  }
  throw std::invalid_argument("eval_testfn: unknown function");
}

Box default_box(TestFn fn, int dim) {
  switch (fn) {
    case TestFn::Rastrigin: return Box(dim, -5.12, 5.12);
    case TestFn::Ackley: return Box(dim, -32.768, 32.768);
    case TestFn::Griewank: return Box(dim, -600.0, 600.0);
    case TestFn::Michalewicz: return Box(dim, 0.0, kPi);
  }
  throw std::invalid_argument("default_box: unknown function");
}

Objective make_testfn_objective(TestFn fn, int dim, Direction direction) {
  detail::require(dim >= 1, "make_testfn_objective: dim must be >= 1");
  Objective obj;
  obj.dim = dim;
  obj.direction = direction;
  obj.eval = [fn](const Vec& x) { return eval_testfn(fn, x); };
  return obj;
}

Vec SquareMatrix::apply(const Vec& x) const {
  Vec y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Vec SquareMatrix::apply_transpose(const Vec& x) const {
  Vec y(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += at(i, j) * x[i];
    y[j] = acc;
  }
  return y;
}

SquareMatrix random_rotation(int dim, RngStream& rng) {
  detail::require(dim >= 1, "random_rotation: dim must be >= 1");
  SquareMatrix q(dim);
  // Columns start as i.i.d. standard normals; modified Gram-Schmidt with one
  // re-orthogonalization pass gives the Haar factor with R_jj > 0.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) q.at(i, j) = rng.normal();

  for (int col = 0; col < dim; ++col) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += q.at(i, prev) * q.at(i, col);
        for (int i = 0; i < dim; ++i) q.at(i, col) -= dot * q.at(i, prev);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < dim; ++i) norm += q.at(i, col) * q.at(i, col);
    norm = std::sqrt(norm);
    detail::require(norm > 1e-12, "random_rotation: degenerate draw");
    for (int i = 0; i < dim; ++i) q.at(i, col) /= norm;
  }
  return q;
}

TransformedProblem transform_problem(TestFn fn, int dim, Direction direction,
                                     RngStream rng) {
  const Box base = default_box(fn, dim);

  Vec lo(dim), hi(dim), shift(dim);
  for (int j = 0; j < dim; ++j) {
    const double r = rng.bernoulli(0.5) ? 1.0 : 0.0;
    const double v = rng.normal();
    const double nu = rng.uniform01();
    const double w = base.width(j);
    lo[j] = base.lower[j] +
            (v + r * (0.2 + 0.1 * nu) - (1.0 - r) * (0.4 + 0.2 * nu)) * w;
    hi[j] = base.upper[j] +
            (v + r * (0.4 + 0.2 * nu) - (1.0 - r) * (0.2 + 0.1 * nu)) * w;
    shift[j] = v * w;
  }

  TransformedProblem out;
  out.transform.shift = shift;
  out.transform.rotation = random_rotation(dim, rng);
  out.transform.modified = Box(std::move(lo), std::move(hi));
  out.box = out.transform.modified;
  out.objective.dim = dim;
  out.objective.direction = direction;
  out.objective.eval = [fn, shift = out.transform.shift,
                        q = out.transform.rotation](const Vec& x) {
    Vec centered(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) centered[j] = x[j] - shift[j];
    return eval_testfn(fn, q.apply(centered));
  };
  return out;
}

}  // namespace smco
