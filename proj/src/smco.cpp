#include "smco/smco.hpp"

#include <algorithm>
#include <cmath>

namespace smco {

namespace {

void validate(const SmcoConfig& cfg) {
  detail::require(cfg.tolerance > 0.0, "SmcoConfig: tolerance must be > 0");
  detail::require(cfg.max_iter >= 1, "SmcoConfig: max_iter must be >= 1");
  detail::require(cfg.buffer_fraction > 0.0 && cfg.buffer_fraction < 0.5,
                  "SmcoConfig: buffer fraction must lie in (0, 0.5)");
  detail::require(cfg.stage_split > 0.0 && cfg.stage_split <= 1.0,
                  "SmcoConfig: stage_split must lie in (0, 1]");
  detail::require(cfg.boost_n0 >= 0, "SmcoConfig: boost_n0 must be >= 0");
}

struct StageResult {
  Vec final_point;
  double final_value = 0.0;
  long long iterations = 0;
  bool converged = false;
};

struct FdScan {
  std::vector<bool> signs;
  double probe_min = 0.0;
  double probe_max = 0.0;
};

// fd_sign plus the extreme probe values, which feed the stopping rule.
FdScan fd_scan(const std::function<double(const Vec&)>& f, const Vec& x,
               long long counter, const BufferedBox& domain) {
  const double step_scale = 1.0 / static_cast<double>(counter + 1);
  FdScan scan;
  scan.signs.resize(x.size());
  scan.probe_min = std::numeric_limits<double>::infinity();
  scan.probe_max = -std::numeric_limits<double>::infinity();
  Vec probe = x;
  for (int j = 0; j < domain.dim(); ++j) {
    const double h = domain.box.width(j) * step_scale;
    const double xj = x[j];
    probe[j] = std::clamp(xj + h, domain.lower(j), domain.upper(j));
    const double up = f(probe);
    probe[j] = std::clamp(xj - h, domain.lower(j), domain.upper(j));
    const double down = f(probe);
    probe[j] = xj;
    scan.probe_min = std::min({scan.probe_min, up, down});
    scan.probe_max = std::max({scan.probe_max, up, down});
    const double diff = up - down;
    scan.signs[j] = diff >= 0.0;  // NaN compares false: low arm
  }
  return scan;
}

// One boosted run of the base algorithm. With starting counter n0 the
// initial sum is m0*x0 (m0 = max(n0, 1)) and the mean after n draws is
// S_n / (n + m0), so the first update lands at (m0*x0 + Z_1) / (m0 + 1) and
// every mean stays a convex combination of x0 and in-buffered-box draws.
StageResult run_stage(EvalTracker& f, const BufferedBox& domain,
                      const ArmPair& arms, Vec x0, long long boost_n0,
                      int max_iter, double tolerance, RngStream& rng,
                      RunTrace* trace) {
  const int d = domain.dim();
  const long long m0 = std::max<long long>(boost_n0, 1);

  RunTrace::Stage* stage = nullptr;
  if (trace) {
    trace->stages.emplace_back();
    stage = &trace->stages.back();
    stage->boost = boost_n0;
    stage->means.push_back(x0);
  }

  Vec sum(x0.size());
  for (int j = 0; j < d; ++j) sum[j] = static_cast<double>(m0) * x0[j];

  Vec mean = x0;
  double value_prev = f(mean);

  StageResult out;
  out.final_point = mean;
  out.final_value = value_prev;

  for (int n = 0; n < max_iter; ++n) {
    const FdScan scan = fd_scan([&f](const Vec& p) { return f(p); }, mean,
                                n + boost_n0, domain);
    const Vec reward = draw_reward(arms, scan.signs, rng);
    for (int j = 0; j < d; ++j) sum[j] += reward[j];
    const double divisor = static_cast<double>(n + 1 + m0);
    for (int j = 0; j < d; ++j) mean[j] = sum[j] / divisor;
    // Division can round an ulp past the buffered bounds; the exact mean is
    // inside, so clamp the representation back.
    mean = domain.clamp(std::move(mean));
    if (stage) stage->means.push_back(mean);

    const double value = f(mean);
    out.iterations = n + 1;
    out.final_point = mean;
    out.final_value = value;
    // Plateau criteria repeat values exactly, so a flat consecutive pair is
    // not convergence evidence on its own; the probe stencil must be flat at
    // the current step scale as well.
    if (std::abs(value - value_prev) <= tolerance &&
        scan.probe_max - scan.probe_min <= tolerance) {
      out.converged = true;
      break;
    }
    value_prev = value;
  }
  return out;
}

StageResult run_refined(EvalTracker& f, const BufferedBox& domain,
                        const ArmPair& arms, Vec x0, const SmcoConfig& cfg,
                        int max_iter, long long extra_boost, RngStream& rng,
                        RunTrace* trace) {
  const int stage1_iters = std::max(
      1, static_cast<int>(std::floor(cfg.stage_split * max_iter)));
  StageResult s1 = run_stage(f, domain, arms, std::move(x0), extra_boost,
                             stage1_iters, cfg.tolerance, rng, trace);

  const int stage2_iters = max_iter - static_cast<int>(s1.iterations);
  StageResult out = s1;
  if (stage2_iters > 0) {
    Vec x2 = clamp_to_box(s1.final_point, domain.box);
    StageResult s2 =
        run_stage(f, domain, arms, std::move(x2),
                  cfg.stage2_counter + extra_boost, stage2_iters,
                  cfg.tolerance, rng, trace);
    out = s2;
    out.iterations += s1.iterations;
  }
  return out;
}

Objective as_maximization(const Objective& obj) {
  detail::require(static_cast<bool>(obj.eval), "Objective: missing eval");
  return obj.direction == Direction::Maximize ? obj : negate_objective(obj);
}

RunRecord finish(const Objective& original, const EvalTracker& f,
                 const StageResult& final_stage, bool report_best) {
  RunRecord rec;
  rec.iterations = final_stage.iterations;
  rec.evaluations = f.evaluations();
  rec.converged = final_stage.converged;
  if (report_best) {
    rec.final_point = f.best_point();
    rec.final_value = f.best_value();
  } else {
    rec.final_point = final_stage.final_point;
    rec.final_value = final_stage.final_value;
  }
  rec.best_point = f.best_point();
  rec.best_value = f.best_value();
  if (original.direction == Direction::Minimize) {
    rec.final_value = -rec.final_value;
    rec.best_value = -rec.best_value;
  }
  return rec;
}

Vec checked_start(const Vec& x0, const Box& box) {
  detail::require(static_cast<int>(x0.size()) == box.dim(),
                  "smco: start point dimension mismatch");
  return clamp_to_box(x0, box);
}

}  // namespace

ArmPair make_arms(const BufferedBox& domain) {
  ArmPair arms;
  arms.high_mean = domain.box.upper;
  arms.low_mean = domain.box.lower;
  arms.noise_half_width.resize(domain.dim());
  for (int j = 0; j < domain.dim(); ++j)
    arms.noise_half_width[j] = domain.delta(j);
  return arms;
}

Vec draw_reward(const ArmPair& arms, const std::vector<bool>& signs,
                RngStream& rng) {
  detail::require(static_cast<int>(signs.size()) == arms.dim(),
                  "draw_reward: signs dimension mismatch");
  Vec z(signs.size());
  for (int j = 0; j < arms.dim(); ++j) {
    const double center = signs[j] ? arms.high_mean[j] : arms.low_mean[j];
    const double w = arms.noise_half_width[j];
    z[j] = center + rng.uniform(-w, w);
  }
  return z;
}

std::vector<bool> fd_sign(const std::function<double(const Vec&)>& f,
                          const Vec& x, long long counter,
                          const BufferedBox& domain) {
  detail::require(static_cast<int>(x.size()) == domain.dim(),
                  "fd_sign: dimension mismatch");
  const double step_scale = 1.0 / static_cast<double>(counter + 1);
  std::vector<bool> signs(x.size());
  Vec probe = x;
  for (int j = 0; j < domain.dim(); ++j) {
    const double h = domain.box.width(j) * step_scale;
    const double xj = x[j];
    probe[j] = std::clamp(xj + h, domain.lower(j), domain.upper(j));
    const double up = f(probe);
    probe[j] = std::clamp(xj - h, domain.lower(j), domain.upper(j));
    const double down = f(probe);
    probe[j] = xj;
    const double diff = up - down;
    signs[j] = diff >= 0.0;  // NaN compares false: low arm
  }
  return signs;
}

RunRecord smco_run(const Objective& obj, const Box& box, const Vec& x0,
                   const SmcoConfig& cfg, RngStream rng, RunTrace* trace) {
  validate(cfg);
  detail::require(obj.dim == box.dim(), "smco_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  const ArmPair arms = make_arms(domain);
  EvalTracker f(maxobj);
  StageResult res =
      run_stage(f, domain, arms, checked_start(x0, box), cfg.boost_n0,
                cfg.max_iter, cfg.tolerance, rng, trace);
  return finish(obj, f, res, /*report_best=*/false);
}

RunRecord smco_r_run(const Objective& obj, const Box& box, const Vec& x0,
                     const SmcoConfig& cfg, RngStream rng, RunTrace* trace) {
  validate(cfg);
  detail::require(obj.dim == box.dim(), "smco_r_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  const ArmPair arms = make_arms(domain);
  EvalTracker f(maxobj);
  StageResult res = run_refined(f, domain, arms, checked_start(x0, box), cfg,
                                cfg.max_iter, 0, rng, trace);
  return finish(obj, f, res, /*report_best=*/true);
}

RunRecord smco_br_run(const Objective& obj, const Box& box, const Vec& x0,
                      const SmcoConfig& cfg, RngStream rng, RunTrace* trace) {
  validate(cfg);
  detail::require(obj.dim == box.dim(), "smco_br_run: objective/box mismatch");
  const Objective maxobj = as_maximization(obj);
  const BufferedBox domain(box, cfg.buffer_fraction);
  const ArmPair arms = make_arms(domain);
  EvalTracker f(maxobj);

  const int half_budget = std::max(1, cfg.max_iter / 2);
  StageResult pass1 = run_refined(f, domain, arms, checked_start(x0, box),
                                  cfg, half_budget, 0, rng, trace);

  Vec x2 = clamp_to_box(f.best_point(), box);
  StageResult pass2 = run_refined(f, domain, arms, std::move(x2), cfg,
                                  half_budget, cfg.br_counter, rng, trace);
  pass2.iterations += pass1.iterations;
  return finish(obj, f, pass2, /*report_best=*/true);
}

}  // namespace smco
