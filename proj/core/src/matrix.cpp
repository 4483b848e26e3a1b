#include "qht/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qht {

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tolerance;
}

HermitianMatrix::HermitianMatrix(Matrix m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("HermitianMatrix: square non-empty matrix required");
  if (!is_hermitian(m, tolerance))
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian within tolerance");
  m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_.mat(), Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -tol::psd)
    throw std::invalid_argument("DensityMatrix: smallest eigenvalue " +
                                std::to_string(lambda_min) + " below -1e-10");
  const double tr = m_.mat().trace().real();
  if (std::abs(tr - 1.0) > tol::unit_trace)
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
}

bool DensityMatrix::is_pure(double tolerance) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() >= 1.0 - tolerance;
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm <= 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

EigenDecomposition eigh(const Matrix& h, double tolerance) {
  return eigh(HermitianMatrix(h, tolerance));
}

double support_cutoff(const RealVector& eigenvalues, double rel_tol) {
  const double lambda_max = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return rel_tol * std::max(1.0, lambda_max);
}

Matrix matrix_function(const HermitianMatrix& h, const std::function<double(double)>& f,
                       double support_tol) {
  const auto ed = eigh(h);
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lambda = ed.eigenvalues[i];
    if (std::abs(lambda) <= support_tol) continue;
    const double value = f(lambda);
    if (!std::isfinite(value))
      throw std::domain_error("matrix_function: f singular on retained eigenvalue " +
                              std::to_string(lambda));
    out.noalias() += value * (ed.eigenvectors.col(i) * ed.eigenvectors.col(i).adjoint());
  }
  return out;
}

namespace {

Matrix spectral_map(const Matrix& a, double support_tol,
                    const std::function<double(double)>& f) {
  const auto ed = eigh(a);
  const double cut = support_tol < 0 ? support_cutoff(ed.eigenvalues) : support_tol;
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lambda = ed.eigenvalues[i];
    if (lambda <= cut) continue;  // PSD input: kernel and clamped negatives
    out.noalias() += f(lambda) * (ed.eigenvectors.col(i) * ed.eigenvectors.col(i).adjoint());
  }
  return out;
}

}  // namespace

Matrix psd_power(const Matrix& a, double p, double support_tol) {
  return spectral_map(a, support_tol, [p](double x) { return std::pow(x, p); });
}

Matrix psd_sqrt(const Matrix& a) {
  return spectral_map(a, -1.0, [](double x) { return std::sqrt(x); });
}

Matrix psd_log(const Matrix& a, double support_tol) {
  return spectral_map(a, support_tol, [](double x) { return std::log(x); });
}

Matrix support_projector(const Matrix& a, double support_tol) {
  return spectral_map(a, support_tol, [](double) { return 1.0; });
}

double schatten_norm(const Matrix& a, double p) {
  if (p < 1.0) throw std::domain_error("schatten_norm: p must be >= 1");
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (p == 1.0) return s.sum();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s[i], p);
  return std::pow(acc, 1.0 / p);
}

double trace_norm(const Matrix& a) {
  if (is_hermitian(a, 1e-10)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  return schatten_norm(a, 1.0);
}

PositivePart positive_part(const HermitianMatrix& h, double zero_tol) {
  if (zero_tol < 0.0) throw std::invalid_argument("positive_part: zero_tol must be >= 0");
  const auto ed = eigh(h);
  const Eigen::Index d = h.dim();
  Matrix plus = Matrix::Zero(d, d);
  Matrix zero = Matrix::Zero(d, d);
  double trace_pos = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = ed.eigenvalues[i];
    const Matrix proj = ed.eigenvectors.col(i) * ed.eigenvectors.col(i).adjoint();
    if (lambda > zero_tol) {
      plus += proj;
      trace_pos += lambda;
    } else if (std::abs(lambda) <= zero_tol) {
      zero += proj;
    }
  }
  return {std::move(plus), std::move(zero), trace_pos};
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_density: dim must be >= 1");
  if (rank < 1 || rank > dim)
    throw std::invalid_argument("random_density: rank must satisfy 1 <= rank <= dim");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_power(const Matrix& a, int n) {
  if (n < 1) throw std::invalid_argument("kron_power: n must be >= 1");
  Matrix out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

Eigen::Index checked_power_dim(Eigen::Index dim, int n, Eigen::Index cap) {
  Eigen::Index out = 1;
  for (int k = 0; k < n; ++k) {
    if (out > cap / dim)
      throw std::length_error("dense backend size limit exceeded: dim^n > " +
                              std::to_string(cap));
    out *= dim;
  }
  if (out > cap)
    throw std::length_error("dense backend size limit exceeded: dim^n > " +
                            std::to_string(cap));
  return out;
}

}  // namespace qht
