// Dense complex Hermitian linear algebra: validated state types,
// eigendecompositions, spectral functions, Schatten norms, projectors and
// seeded random-state generation.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

namespace qht {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Default numerical tolerances; these are the tested contract.
struct tol {
  static constexpr double hermiticity = 1e-12;
  static constexpr double psd = 1e-10;
  static constexpr double unit_trace = 1e-10;
  static constexpr double support = 1e-10;
  static constexpr double povm = 1e-9;
};

/// Default cap on dim^n for dense tensor-power computations; overridable per
/// call (the CLI honors the QHT_DENSE_CAP environment variable).
inline constexpr Eigen::Index kDefaultDenseCap = 4096;

double max_abs(const Matrix& a);
bool is_hermitian(const Matrix& a, double tolerance = tol::hermiticity);

/// Hermitian operator validated at construction (‖A − A†‖_max ≤ tolerance)
/// and stored exactly symmetrized.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m, double tolerance = tol::hermiticity);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Quantum state: Hermitian, positive semi-definite within tol::psd,
/// unit trace within tol::unit_trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);
  const Matrix& mat() const { return m_.mat(); }
  Eigen::Index dim() const { return m_.dim(); }

  /// Largest eigenvalue ≥ 1 − tolerance, i.e. the state is rank one.
  bool is_pure(double tolerance = 1e-9) const;

  static DensityMatrix pure(const Eigen::VectorXcd& psi);

 private:
  HermitianMatrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns
};

EigenDecomposition eigh(const HermitianMatrix& h);
/// Convenience overload; throws std::invalid_argument on non-Hermitian input.
EigenDecomposition eigh(const Matrix& h, double tolerance = tol::hermiticity);

/// Support cutoff used by spectral functions: |λ| ≤ rel_tol · max(1, λ_max)
/// is treated as kernel.
double support_cutoff(const RealVector& eigenvalues, double rel_tol = tol::support);

/// V f(Λ) V† with eigenvalues |λ| ≤ support_tol omitted (the support-restricted
/// limit: x^p → 0 for p > 0, kernel directions projected out for p ≤ 0 and ln).
/// Throws std::domain_error if f is non-finite on a retained eigenvalue.
Matrix matrix_function(const HermitianMatrix& h, const std::function<double(double)>& f,
                       double support_tol);

/// Support-restricted power A^p of a PSD operator. Negative eigenvalues within
/// tol::psd of zero are clamped into the kernel; support_tol < 0 selects the
/// relative cutoff of support_cutoff().
Matrix psd_power(const Matrix& a, double p, double support_tol = -1.0);
Matrix psd_sqrt(const Matrix& a);
Matrix psd_log(const Matrix& a, double support_tol = -1.0);
Matrix support_projector(const Matrix& a, double support_tol = -1.0);

/// Schatten p-norm (Σ s_i^p)^{1/p} over singular values; p = 1 is the trace
/// norm. Throws std::domain_error for p < 1.
double schatten_norm(const Matrix& a, double p);
double trace_norm(const Matrix& a);

struct PositivePart {
  Matrix plus;       // projector onto eigenvalues > zero_tol
  Matrix zero;       // projector onto |eigenvalue| ≤ zero_tol
  double trace_pos;  // Tr[H P₊]
};
PositivePart positive_part(const HermitianMatrix& h, double zero_tol);

/// Hilbert–Schmidt-induced random state: G G†/Tr[G G†] with G a dim×rank
/// matrix of seeded standard complex Gaussians. Deterministic in seed.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_power(const Matrix& a, int n);

/// dim^n with overflow guard; throws std::length_error when the result
/// exceeds cap (the dense backend size limit).
Eigen::Index checked_power_dim(Eigen::Index dim, int n, Eigen::Index cap);

}  // namespace qht
