#ifndef SMCO_TESTFNS_HPP
#define SMCO_TESTFNS_HPP

#include <optional>
#include <string>
#include <vector>

#include "smco/core.hpp"

namespace smco {

enum class TestFn { Rastrigin, Ackley, Griewank, Michalewicz };

const char* testfn_name(TestFn fn);
std::optional<TestFn> testfn_from_name(const std::string& name);
std::vector<TestFn> all_testfns();

double eval_testfn(TestFn fn, const Vec& x);
Box default_box(TestFn fn, int dim);
Objective make_testfn_objective(TestFn fn, int dim, Direction direction);

// Dense square matrix, row-major; just enough for rotations.
struct SquareMatrix {
  int n = 0;
  std::vector<double> a;

  explicit SquareMatrix(int size = 0)
      : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }
  Vec apply(const Vec& x) const;            // Q x
  Vec apply_transpose(const Vec& x) const;  // Q^T x
};

// Haar-distributed orthonormal matrix: Gram-Schmidt factor of a standard
// normal matrix (the positive-diagonal convention of the QR construction).
SquareMatrix random_rotation(int dim, RngStream& rng);

// Per-coordinate domain shift/asymmetrization plus a rotation applied inside
// the function argument; the search box itself is not rotated.
struct DomainTransform {
  Vec shift;              // v_j * width_j
  SquareMatrix rotation;  // Q
  Box modified;           // shifted and widened bounds
};

struct TransformedProblem {
  Objective objective;  // f_mod(x) = f(Q (x - shift))
  Box box;              // modified bounds
  DomainTransform transform;
};

TransformedProblem transform_problem(TestFn fn, int dim, Direction direction,
                                     RngStream rng);

}  // namespace smco

#endif  // SMCO_TESTFNS_HPP
