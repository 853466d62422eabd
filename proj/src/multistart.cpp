#include "smco/multistart.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace smco {

std::vector<Vec> gen_starts(const StartPlan& plan, const Box& box) {
  detail::require(plan.count >= 1, "gen_starts: count must be >= 1");
  std::vector<Vec> starts;
  starts.reserve(plan.count);
  if (plan.mode == StartMode::Diagonal) {
    if (plan.count == 1) {
      starts.push_back(box.center());
      return starts;
    }
    for (int i = 0; i < plan.count; ++i) {
      const double t = static_cast<double>(i) / (plan.count - 1);
      Vec p(box.dim());
      for (int j = 0; j < box.dim(); ++j)
        p[j] = box.lower[j] + t * box.width(j);
      starts.push_back(std::move(p));
    }
    return starts;
  }
  RngStream rng = plan.rng;
  for (int i = 0; i < plan.count; ++i) {
    Vec p(box.dim());
    for (int j = 0; j < box.dim(); ++j)
      p[j] = rng.uniform(box.lower[j], box.upper[j]);
    starts.push_back(std::move(p));
  }
  return starts;
}

int default_start_count(int dim, Regime regime) {
  detail::require(dim >= 1, "default_start_count: dim must be >= 1");
  const double root = std::sqrt(static_cast<double>(dim));
  const double count = regime == Regime::LowDim ? 10.0 * root : root;
  return std::max(1, static_cast<int>(std::lround(count)));
}

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::Smco: return "smco";
    case Algo::SmcoR: return "smco-r";
    case Algo::SmcoBr: return "smco-br";
    case Algo::Gd: return "gd";
    case Algo::SignGd: return "signgd";
    case Algo::Spsa: return "spsa";
  }
  return "unknown";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  for (Algo a : {Algo::Smco, Algo::SmcoR, Algo::SmcoBr, Algo::Gd,
                 Algo::SignGd, Algo::Spsa}) {
    if (name == algo_name(a)) return a;
  }
  return std::nullopt;
}

RunRecord run_algorithm(Algo algo, const Objective& obj, const Box& box,
                        const Vec& x0, const AlgoConfig& cfg, RngStream rng) {
  switch (algo) {
    case Algo::Smco: return smco_run(obj, box, x0, cfg.smco, rng);
    case Algo::SmcoR: return smco_r_run(obj, box, x0, cfg.smco, rng);
    case Algo::SmcoBr: return smco_br_run(obj, box, x0, cfg.smco, rng);
    case Algo::Gd: return gd_run(obj, box, x0, cfg.baseline, rng);
    case Algo::SignGd: return signgd_run(obj, box, x0, cfg.baseline, rng);
    case Algo::Spsa: return spsa_run(obj, box, x0, cfg.baseline, rng);
  }
  throw std::invalid_argument("run_algorithm: unknown algorithm");
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

MultistartResult multistart_run_on(const Objective& obj, const Box& box,
                                   Algo algo, const std::vector<Vec>& starts,
                                   const AlgoConfig& cfg, RngStream rng,
                                   int workers) {
  detail::require(!starts.empty(), "multistart: needs at least one start");
  detail::require(workers >= 1, "multistart: workers must be >= 1");

  MultistartResult result;
  result.starts = starts;
  result.runs.resize(starts.size());
  result.failures.assign(starts.size(), std::string());

  const int n = static_cast<int>(starts.size());
  parallel_for(n, workers, [&](int i) {
    try {
      result.runs[i] = run_algorithm(algo, obj, box, starts[i], cfg,
                                     rng.substream(static_cast<std::uint64_t>(i)));
    } catch (const std::exception& e) {
      result.failures[i] = e.what();
    } catch (...) {
      result.failures[i] = "unknown error";
    }
  });

  for (int i = 0; i < n; ++i) {
    if (!result.failures[i].empty()) continue;
    if (result.best_index < 0 ||
        improves(result.runs[i].best_value, result.best.best_value,
                 obj.direction)) {
      result.best_index = i;
      result.best = result.runs[i];
    }
  }
  if (result.best_index < 0)
    throw std::runtime_error("multistart: every start failed: " +
                             result.failures.front());
  return result;
}

MultistartResult multistart_run(const Objective& obj, const Box& box,
                                Algo algo, const StartPlan& plan,
                                const AlgoConfig& cfg, RngStream rng,
                                int workers) {
  return multistart_run_on(obj, box, algo, gen_starts(plan, box), cfg, rng,
                           workers);
}

}  // namespace smco
