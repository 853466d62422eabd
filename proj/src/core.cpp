#include "smco/core.hpp"

#include <algorithm>
#include <cmath>

namespace smco {

namespace detail {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

// SplitMix64, used only to decorrelate (seed, stream) pairs.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

Box::Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  detail::require(!lower.empty(), "Box: dimension must be >= 1");
  detail::require(lower.size() == upper.size(), "Box: bound lengths differ");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    detail::require(std::isfinite(lower[j]) && std::isfinite(upper[j]),
                    "Box: bounds must be finite");
    detail::require(lower[j] < upper[j], "Box: lower must be < upper");
  }
}

Box::Box(int dim, double lo, double hi)
    : Box(Vec(static_cast<std::size_t>(dim), lo),
          Vec(static_cast<std::size_t>(dim), hi)) {
  detail::require(dim >= 1, "Box: dimension must be >= 1");
}

Vec Box::center() const {
  Vec c(lower.size());
  for (std::size_t j = 0; j < lower.size(); ++j)
    c[j] = 0.5 * (lower[j] + upper[j]);
  return c;
}

BufferedBox::BufferedBox(Box b, double fraction)
    : box(std::move(b)), buffer_fraction(fraction) {
  detail::require(fraction > 0.0 && fraction < 0.5,
                  "BufferedBox: buffer fraction must lie in (0, 0.5)");
}

Vec BufferedBox::clamp(Vec x) const {
  detail::require(static_cast<int>(x.size()) == dim(),
                  "BufferedBox: dimension mismatch");
  for (int j = 0; j < dim(); ++j)
    x[j] = std::clamp(x[j], lower(j), upper(j));
  return x;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(detail::mix64(detail::mix64(seed) ^
                            detail::mix64(stream * 2 + 1))) {}

double RngStream::uniform01() {
  // 53-bit mantissa mapping; bitwise reproducible, unlike
  // std::uniform_real_distribution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + uniform01() * (hi - lo);
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

RngStream RngStream::substream(std::uint64_t i) const {
  return RngStream(detail::mix64(seed_ ^ detail::mix64(stream_ + 0x51ed2701)),
                   i);
}

Vec clamp_to_box(Vec x, const Box& box) {
  detail::require(static_cast<int>(x.size()) == box.dim(),
                  "clamp_to_box: dimension mismatch");
  for (int j = 0; j < box.dim(); ++j)
    x[j] = std::clamp(x[j], box.lower[j], box.upper[j]);
  return x;
}

Objective negate_objective(const Objective& obj) {
  Objective out;
  out.dim = obj.dim;
  out.direction = obj.direction == Direction::Maximize ? Direction::Minimize
                                                       : Direction::Maximize;
  out.eval = [inner = obj.eval](const Vec& x) { return -inner(x); };
  return out;
}

bool improves(double candidate, double incumbent, Direction direction) {
  return direction == Direction::Maximize ? candidate > incumbent
                                          : candidate < incumbent;
}

EvalTracker::EvalTracker(const Objective& obj) : obj_(&obj) {
  detail::require(obj.direction == Direction::Maximize,
                  "EvalTracker: internal evaluation is maximize-only");
  detail::require(static_cast<bool>(obj.eval), "EvalTracker: missing eval");
}

double EvalTracker::operator()(const Vec& x) {
  ++evaluations_;
  double v = obj_->eval(x);
  if (!std::isfinite(v)) v = -std::numeric_limits<double>::infinity();
  if (v > best_value_) {
    best_value_ = v;
    best_point_ = x;
  }
  return v;
}

}  // namespace smco
