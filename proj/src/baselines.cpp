#include "smco/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace smco {

namespace {

Objective as_maximization(const Objective& obj) {
  detail::require(static_cast<bool>(obj.eval), "Objective: missing eval");
  return obj.direction == Direction::Maximize ? obj : negate_objective(obj);
}

Vec fd_gradient(EvalTracker& f, const Vec& x, const BufferedBox& domain,
                double step_fraction) {
  Vec grad(x.size());
  Vec probe = x;
  for (int j = 0; j < domain.dim(); ++j) {
    const double h = step_fraction * domain.box.width(j);
    const double xj = x[j];
    probe[j] = std::clamp(xj + h, domain.lower(j), domain.upper(j));
    const double up = f(probe);
    probe[j] = std::clamp(xj - h, domain.lower(j), domain.upper(j));
    const double down = f(probe);
    probe[j] = xj;
    const double denom = 2.0 * h;
    const double g = (up - down) / denom;
    grad[j] = std::isfinite(g) ? g : 0.0;
  }
  return grad;
}

RunRecord finish(const Objective& original, const EvalTracker& f,
                 const Vec& final_point, double final_value,
                 long long iterations, bool converged) {
  RunRecord rec;
  rec.final_point = final_point;
  rec.final_value = final_value;
  rec.best_point = f.best_point();
  rec.best_value = f.best_value();
  rec.iterations = iterations;
  rec.evaluations = f.evaluations();
  rec.converged = converged;
  if (original.direction == Direction::Minimize) {
    rec.final_value = -rec.final_value;
    rec.best_value = -rec.best_value;
  }
  return rec;
}

Vec checked_start(const Vec& x0, const Box& box) {
  detail::require(static_cast<int>(x0.size()) == box.dim(),
                  "baseline: start point dimension mismatch");
  return clamp_to_box(x0, box);
}

}  // namespace

RunRecord gd_run(const Objective& obj, const Box& box, const Vec& x0,
                 const BaselineConfig& cfg, RngStream rng) {
  (void)rng;  // deterministic method; kept for a uniform call signature
  detail::require(obj.dim == box.dim(), "gd_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  EvalTracker f(maxobj);

  Vec x = checked_start(x0, box);
  Vec velocity(x.size(), 0.0);
  double value_prev = f(x);
  long long iterations = 0;
  bool converged = false;

  for (int n = 0; n < cfg.gd.max_iter; ++n) {
    const Vec grad = fd_gradient(f, x, domain, cfg.fd_step_fraction);
    for (std::size_t j = 0; j < x.size(); ++j) {
      velocity[j] = cfg.gd.momentum * velocity[j] + grad[j];
      x[j] = std::clamp(x[j] + cfg.gd.learning_rate * velocity[j],
                        domain.lower(static_cast<int>(j)),
                        domain.upper(static_cast<int>(j)));
    }
    const double value = f(x);
    iterations = n + 1;
    if (std::abs(value - value_prev) <= cfg.gd.tolerance) {
      converged = true;
      value_prev = value;
      break;
    }
    value_prev = value;
  }
  return finish(obj, f, x, value_prev, iterations, converged);
}

RunRecord signgd_run(const Objective& obj, const Box& box, const Vec& x0,
                     const BaselineConfig& cfg, RngStream rng) {
  (void)rng;
  detail::require(obj.dim == box.dim(), "signgd_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  EvalTracker f(maxobj);

  Vec x = checked_start(x0, box);
  double value_prev = f(x);
  double step = cfg.signgd.learning_rate;
  long long iterations = 0;
  bool converged = false;

  for (int n = 0; n < cfg.signgd.max_iter; ++n) {
    const Vec grad = fd_gradient(f, x, domain, cfg.fd_step_fraction);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double sign = grad[j] > 0.0 ? 1.0 : (grad[j] < 0.0 ? -1.0 : 0.0);
      x[j] = std::clamp(x[j] + step * sign,
                        domain.lower(static_cast<int>(j)),
                        domain.upper(static_cast<int>(j)));
    }
    step *= cfg.signgd.decay;
    const double value = f(x);
    iterations = n + 1;
    if (std::abs(value - value_prev) <= cfg.signgd.tolerance) {
      converged = true;
      value_prev = value;
      break;
    }
    value_prev = value;
  }
  return finish(obj, f, x, value_prev, iterations, converged);
}

RunRecord spsa_run(const Objective& obj, const Box& box, const Vec& x0,
                   const BaselineConfig& cfg, RngStream rng) {
  detail::require(obj.dim == box.dim(), "spsa_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  EvalTracker f(maxobj);

  Vec x = checked_start(x0, box);
  double value_prev = f(x);
  long long iterations = 0;
  bool converged = false;
  int quiet_steps = 0;  // a single small change is perturbation noise
  Vec delta(x.size());
  Vec probe(x.size());

  for (int k = 0; k < cfg.spsa.max_iter; ++k) {
    const double ak =
        cfg.spsa.gain / std::pow(k + 1 + cfg.spsa.stability, cfg.spsa.alpha);
    const double ck = cfg.spsa.perturbation / std::pow(k + 1, cfg.spsa.gamma);

    for (std::size_t j = 0; j < x.size(); ++j)
      delta[j] = rng.bernoulli(0.5) ? 1.0 : -1.0;

    for (std::size_t j = 0; j < x.size(); ++j)
      probe[j] = std::clamp(x[j] + ck * delta[j],
                            domain.lower(static_cast<int>(j)),
                            domain.upper(static_cast<int>(j)));
    const double up = f(probe);
    for (std::size_t j = 0; j < x.size(); ++j)
      probe[j] = std::clamp(x[j] - ck * delta[j],
                            domain.lower(static_cast<int>(j)),
                            domain.upper(static_cast<int>(j)));
    const double down = f(probe);

    const double scale = (up - down) / (2.0 * ck);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double g = std::isfinite(scale) ? scale * delta[j] : 0.0;
      x[j] = std::clamp(x[j] + ak * g, domain.lower(static_cast<int>(j)),
                        domain.upper(static_cast<int>(j)));
    }
    const double value = f(x);
    iterations = k + 1;
    quiet_steps =
        std::abs(value - value_prev) <= cfg.spsa.tolerance ? quiet_steps + 1
                                                           : 0;
    value_prev = value;
    if (quiet_steps >= 5) {
      converged = true;
      break;
    }
  }
  return finish(obj, f, x, value_prev, iterations, converged);
}

}  // namespace smco
