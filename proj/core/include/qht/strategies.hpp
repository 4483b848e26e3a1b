// Product-measurement strategy built on the operator geometric mean: the
// single-copy measurement in the eigenbasis of ρ#σ^{-1}, the induced
// likelihood-ratio rule, and its exact n-copy error by type-class enumeration.
#pragma once

#include "qht/matrix.hpp"

namespace qht {

/// A#B = B^{1/2}(B^{-1/2} A B^{-1/2})^{1/2} B^{1/2} for PSD A, B; singular B
/// is handled by the ε-shifted limit with ε = 1e-10 · mean trace.
Matrix geometric_mean(const Matrix& a, const Matrix& b);

struct FuchsCavesMeasurement {
  Matrix basis;        // columns |y⟩: eigenvectors of ρ#σ^{-1}
  RealVector lambdas;  // eigenvalues λ_y = √(⟨y|ρ|y⟩/⟨y|σ|y⟩)
  RealVector p_dist;   // P(y) = ⟨y|ρ|y⟩
  RealVector q_dist;   // Q(y) = ⟨y|σ|y⟩
};
FuchsCavesMeasurement fuchs_caves(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Exact error of the product strategy on n copies for qubits: measure each
/// copy, decide rho when λ_{y^n}·√(p/q) ≥ 1 (ties decide rho), with the
/// outcome mass enumerated over counts in the log domain.
double fc_error(double p, const DensityMatrix& rho, const DensityMatrix& sigma, int n);

}  // namespace qht
