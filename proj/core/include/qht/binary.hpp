// Binary state discrimination on tensor powers: the Helstrom value with its
// optimal test, and the Neyman-Pearson minimum type-II error at a type-I
// budget, on a dense backend (any dimension, capped size) or the
// permutation-symmetric qubit backend.
#pragma once

#include <optional>

#include "qht/matrix.hpp"

namespace qht {

enum class Backend { dense, schur };

struct BinaryInstance {
  double p;
  DensityMatrix rho;
  DensityMatrix sigma;
  BinaryInstance(double p, DensityMatrix rho, DensityMatrix sigma);
  double q() const { return 1.0 - p; }
};

/// Binary test operator 0 ≤ Λ ≤ I, optionally randomized with weight x on a
/// pencil-kernel projector.
struct Test {
  Matrix lambda;
  std::optional<Matrix> kernel;
  double weight = 0.0;
  double threshold = 0.0;  // pencil threshold the test was formed at
  Matrix effective() const;
};
void validate_test(const Test& test, double tolerance = tol::povm);

struct HelstromResult {
  double error = 0.0;
  std::optional<Test> test;  // materialized for the dense backend
};
/// ½(1 − ‖p ρ^{⊗n} − q σ^{⊗n}‖₁); the dense test is the projector onto the
/// positive part of the weighted pencil.
HelstromResult helstrom_error(const BinaryInstance& inst, int n,
                              Backend backend = Backend::dense,
                              Eigen::Index dense_cap = kDefaultDenseCap);

struct BetaResult {
  double beta = 0.0;
  double type_one = 0.0;
  double threshold = 0.0;
  bool randomized = false;
  std::optional<Test> test;  // materialized for the dense backend
};
/// Minimum type-II error subject to type-I ≤ eps on n copies, by the pencil
/// sweep with boundary randomization. The certificate multiplier for the
/// Lagrangian check β + μ·typeI ≤ Tr[Λ'σ] + μ·Tr[(I−Λ')ρ] is μ = 1/threshold.
BetaResult beta(const DensityMatrix& rho, const DensityMatrix& sigma, double eps, int n,
                Backend backend = Backend::dense, Eigen::Index dense_cap = kDefaultDenseCap);

struct TestErrors {
  double type_one = 0.0;
  double type_two = 0.0;
  double bayes = 0.0;
};
TestErrors error_of_test(const BinaryInstance& inst, int n, const Test& test,
                         Eigen::Index dense_cap = kDefaultDenseCap);

}  // namespace qht
