#include "qht/strategies.hpp"

#include <cmath>

namespace qht {

namespace {

double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double binom_pmf(int n, int k, double prob) {
  if (prob <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (prob >= 1.0) return k == n ? 1.0 : 0.0;
  const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                         std::lgamma(n - k + 1.0) + k * std::log(prob) +
                         (n - k) * std::log1p(-prob);
  return std::exp(log_pmf);
}

}  // namespace

Matrix geometric_mean(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("geometric_mean: shape mismatch");
  Matrix bb = 0.5 * (b + b.adjoint());
  Matrix aa = 0.5 * (a + a.adjoint());
  const double cut = tol::support * std::max(1.0, max_abs(bb));
  if (min_eigenvalue(bb) <= cut) {
    const double shift = 1e-10 * std::max(1e-300, 0.5 * (aa.trace().real() + bb.trace().real()));
    aa += shift * Matrix::Identity(a.rows(), a.cols());
    bb += shift * Matrix::Identity(a.rows(), a.cols());
  }
  const Matrix b_half = psd_sqrt(bb);
  const Matrix b_inv_half = psd_power(bb, -0.5);
  const Matrix inner = psd_sqrt(Matrix(b_inv_half * aa * b_inv_half));
  Matrix out = b_half * inner * b_half;
  return 0.5 * (out + out.adjoint());
}

FuchsCavesMeasurement fuchs_caves(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("fuchs_caves: state dimensions differ");
  const Eigen::Index d = rho.dim();
  Matrix sig = sigma.mat();
  if (min_eigenvalue(sig) <= tol::support) {
    const double shift = 1e-10;  // states have unit trace
    sig += shift * Matrix::Identity(d, d);
    sig /= sig.trace().real();
  }
  const Matrix sig_inv = psd_power(sig, -1.0);
  const Matrix observable = geometric_mean(rho.mat(), sig_inv);
  const auto ed = eigh(observable, 1e-8);
  FuchsCavesMeasurement fc;
  fc.basis = ed.eigenvectors;
  fc.lambdas = ed.eigenvalues;
  fc.p_dist.resize(d);
  fc.q_dist.resize(d);
  for (Eigen::Index y = 0; y < d; ++y) {
    const auto v = fc.basis.col(y);
    fc.p_dist[y] = v.dot(rho.mat() * v).real();
    fc.q_dist[y] = v.dot(sigma.mat() * v).real();
  }
  return fc;
}

double fc_error(double p, const DensityMatrix& rho, const DensityMatrix& sigma, int n) {
  if (rho.dim() != 2 || sigma.dim() != 2)
    throw std::invalid_argument("fc_error: dim must be 2");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("fc_error: prior must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("fc_error: n must be >= 1");
  const auto fc = fuchs_caves(rho, sigma);
  const double q = 1.0 - p;
  const double log_lambda0 = std::log(fc.lambdas[0]);
  const double log_lambda1 = std::log(fc.lambdas[1]);
  const double offset = 0.5 * std::log(p / q);
  double error = 0.0;
  for (int k = 0; k <= n; ++k) {
    // k copies yield outcome 0, n−k copies outcome 1
    const double mass_p = binom_pmf(n, k, fc.p_dist[0]);
    const double mass_q = binom_pmf(n, k, fc.q_dist[0]);
    if (mass_p <= 0.0 && mass_q <= 0.0) continue;
    const double statistic = (k > 0 ? k * log_lambda0 : 0.0) +
                             (n - k > 0 ? (n - k) * log_lambda1 : 0.0) + offset;
    if (statistic >= 0.0)
      error += q * mass_q;  // decided rho while sigma was prepared
    else
      error += p * mass_p;
  }
  return error;
}

}  // namespace qht
