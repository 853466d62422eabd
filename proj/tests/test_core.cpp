#include "doctest.h"

#include <cmath>

#include "smco/core.hpp"

using namespace smco;

TEST_CASE("box invariants") {
  CHECK_THROWS(Box(Vec{1.0}, Vec{1.0}));              // strict ordering
  CHECK_THROWS(Box(Vec{0.0, 0.0}, Vec{1.0}));         // length mismatch
  CHECK_THROWS(Box(Vec{0.0}, Vec{1.0 / 0.0}));        // finite bounds
  const Box box(2, -5.12, 5.12);
  CHECK(box.dim() == 2);
  CHECK(box.width(0) == doctest::Approx(10.24));
  CHECK(box.center()[1] == doctest::Approx(0.0));
}

TEST_CASE("buffered box extends each side by fraction * width") {
  const Box box(Vec{-1.0, 0.0}, Vec{1.0, 10.0});
  const BufferedBox buffered(box, 0.05);
  for (int j = 0; j < 2; ++j) {
    CHECK(buffered.lower(j) < box.lower[j]);
    CHECK(buffered.upper(j) > box.upper[j]);
    const double extended = buffered.upper(j) - buffered.lower(j);
    CHECK(extended ==
          doctest::Approx(1.1 * box.width(j)).epsilon(1e-14));
  }
  CHECK_THROWS(BufferedBox(box, 0.0));
  CHECK_THROWS(BufferedBox(box, 0.5));
}

TEST_CASE("clamp_to_box") {
  const Box box(2, -5.12, 5.12);
  CHECK(clamp_to_box(Vec{7.0, -7.0}, box) == Vec{5.12, -5.12});
  CHECK(clamp_to_box(Vec{0.0, 0.0}, box) == Vec{0.0, 0.0});
  const Box line(1, -5.12, 5.12);
  CHECK(clamp_to_box(Vec{5.12}, line) == Vec{5.12});
  // idempotent
  const Vec once = clamp_to_box(Vec{9.0, 0.5}, box);
  CHECK(clamp_to_box(once, box) == once);
  CHECK_THROWS(clamp_to_box(Vec{1.0}, box));
}

TEST_CASE("negate_objective flips values and direction") {
  Objective square;
  square.dim = 1;
  square.direction = Direction::Minimize;
  square.eval = [](const Vec& x) { return x[0] * x[0]; };

  const Objective neg = negate_objective(square);
  CHECK(neg.direction == Direction::Maximize);
  CHECK(neg.eval(Vec{2.0}) == doctest::Approx(-4.0));

  const Objective twice = negate_objective(neg);
  CHECK(twice.direction == Direction::Minimize);
  CHECK(twice.eval(Vec{2.0}) == doctest::Approx(4.0));

  Objective zero;
  zero.dim = 1;
  zero.eval = [](const Vec&) { return 0.0; };
  CHECK(negate_objective(zero).eval(Vec{3.0}) == 0.0);
}

TEST_CASE("rng stream determinism over 10^4 draws") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 10000; ++i) {
    const double x = a.uniform01();
    const double y = b.uniform01();
    CHECK(x == y);  // bitwise
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  RngStream c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100 && !differs; ++i)
    differs = a.substream(0).uniform01() != c.substream(0).uniform01();
  CHECK(differs);
}

TEST_CASE("rng normal moments are sane") {
  RngStream rng(1, 0);
  double mean = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    mean += z;
    sq += z * z;
  }
  mean /= n;
  sq /= n;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(sq - 1.0) < 0.05);
}

TEST_CASE("eval tracker counts, sanitizes, and tracks the best") {
  Objective obj;
  obj.dim = 1;
  obj.direction = Direction::Maximize;
  obj.eval = [](const Vec& x) {
    if (x[0] > 10.0) return std::nan("");
    if (x[0] > 5.0) return 1.0 / 0.0;
    return -x[0] * x[0];
  };
  EvalTracker f(obj);
  CHECK(f(Vec{2.0}) == doctest::Approx(-4.0));
  CHECK(f(Vec{11.0}) == -std::numeric_limits<double>::infinity());
  CHECK(f(Vec{6.0}) == -std::numeric_limits<double>::infinity());
  CHECK(f(Vec{1.0}) == doctest::Approx(-1.0));
  CHECK(f.evaluations() == 4);
  CHECK(f.best_point() == Vec{1.0});  // non-finite never selected
  CHECK(f.best_value() == doctest::Approx(-1.0));
}
