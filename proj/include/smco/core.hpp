#ifndef SMCO_CORE_HPP
#define SMCO_CORE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace smco {

using Vec = std::vector<double>;

enum class Direction { Maximize, Minimize };

// Rectangular search domain with per-coordinate bounds, lower[j] < upper[j].
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec hi);
  // Uniform bounds in every coordinate.
  Box(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lower.size()); }
  double width(int j) const { return upper[j] - lower[j]; }
  Vec center() const;
};

// Box extended by buffer_fraction * width on each side. The extension is the
// support of the arm noise and the confinement region of all iterates.
struct BufferedBox {
  Box box;
  double buffer_fraction = 0.05;

  BufferedBox() = default;
  BufferedBox(Box b, double fraction);

  int dim() const { return box.dim(); }
  double delta(int j) const { return buffer_fraction * box.width(j); }
  double lower(int j) const { return box.lower[j] - delta(j); }
  double upper(int j) const { return box.upper[j] + delta(j); }
  Vec clamp(Vec x) const;
};

// Black-box scalar objective. eval must be deterministic and well defined on
// the buffered box; any internal randomness is frozen at construction time.
struct Objective {
  int dim = 0;
  Direction direction = Direction::Maximize;
  std::function<double(const Vec&)> eval;
};

// Reproducible random stream. Identical (seed, stream) pairs produce bitwise
// identical draw sequences regardless of thread schedule, so parallel workers
// each own a substream derived from the master seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();                       // [0, 1)
  double uniform(double lo, double hi);     // [lo, hi)
  double normal();                          // standard normal, Box-Muller
  bool bernoulli(double p) { return uniform01() < p; }

  // Independent child stream; derivation depends only on (seed, stream, i).
  RngStream substream(std::uint64_t i) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Summary of one optimizer run. best_* track the running optimum over every
// point the run evaluated, including finite-difference probes.
struct RunRecord {
  Vec final_point;
  double final_value = 0.0;
  Vec best_point;
  double best_value = 0.0;
  long long iterations = 0;
  long long evaluations = 0;
  bool converged = false;
};

Vec clamp_to_box(Vec x, const Box& box);
Objective negate_objective(const Objective& obj);

// True when candidate improves on incumbent for the given direction.
bool improves(double candidate, double incumbent, Direction direction);

// Evaluation wrapper used by every optimizer: counts calls, maps non-finite
// values to -inf so they are never selected, and tracks the best point seen.
// Requires a maximizing objective (minimization is negated at the boundary).
class EvalTracker {
 public:
  explicit EvalTracker(const Objective& obj);

  double operator()(const Vec& x);

  long long evaluations() const { return evaluations_; }
  const Vec& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }

 private:
  const Objective* obj_;
  long long evaluations_ = 0;
  Vec best_point_;
  double best_value_ = -std::numeric_limits<double>::infinity();
};

namespace detail {
void require(bool condition, const std::string& message);
}

}  // namespace smco

#endif  // SMCO_CORE_HPP
