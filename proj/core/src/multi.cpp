#include "qht/multi.hpp"

#include <cmath>

#include "qht/divergences.hpp"

namespace qht {

Ensemble::Ensemble(std::vector<double> pr, std::vector<DensityMatrix> st)
    : priors(std::move(pr)), states(std::move(st)) {
  if (priors.empty() || priors.size() != states.size())
    throw std::invalid_argument("Ensemble: priors and states must be non-empty and match");
  double sum = 0.0;
  for (double p : priors) {
    if (p <= 0.0) throw std::invalid_argument("Ensemble: priors must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::unit_trace)
    throw std::invalid_argument("Ensemble: priors must sum to 1");
  for (const auto& s : states)
    if (s.dim() != states.front().dim())
      throw std::invalid_argument("Ensemble: state dimensions differ");
}

Ensemble Ensemble::from_data(const EnsembleData& data) {
  return Ensemble(data.priors, data.states);
}

void validate_povm(const Povm& povm, double tolerance) {
  if (povm.elements.empty()) throw std::invalid_argument("Povm: no elements");
  const Eigen::Index d = povm.elements.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : povm.elements) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("Povm: element shape mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tolerance)
      throw std::invalid_argument("Povm: element not positive semi-definite");
    sum += e;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > tolerance)
    throw std::invalid_argument("Povm: elements do not sum to the identity");
}

namespace {

std::vector<Matrix> weighted_powers(const Ensemble& ens, int n, Eigen::Index dense_cap) {
  checked_power_dim(ens.dim(), n, dense_cap);
  std::vector<Matrix> a;
  a.reserve(ens.size());
  for (int m = 0; m < ens.size(); ++m)
    a.push_back(ens.priors[m] * kron_power(ens.states[m].mat(), n));
  return a;
}

Povm pgm_from(const std::vector<Matrix>& a) {
  const Eigen::Index d = a.front().rows();
  Matrix s = Matrix::Zero(d, d);
  for (const auto& am : a) s += am;
  const Matrix s_inv_half = psd_power(s, -0.5);
  const Matrix deficit =
      Matrix::Identity(d, d) - support_projector(s);
  Povm povm;
  const double share = 1.0 / static_cast<double>(a.size());
  for (const auto& am : a) {
    Matrix e = s_inv_half * am * s_inv_half + share * deficit;
    povm.elements.push_back(0.5 * (e + e.adjoint()));
  }
  return povm;
}

}  // namespace

Povm pgm(const Ensemble& ens, int n, Eigen::Index dense_cap) {
  if (n < 1) throw std::invalid_argument("pgm: n must be >= 1");
  return pgm_from(weighted_powers(ens, n, dense_cap));
}

double error_of_povm(const Ensemble& ens, int n, const Povm& povm,
                     Eigen::Index dense_cap) {
  if (static_cast<int>(povm.elements.size()) != ens.size())
    throw std::invalid_argument("error_of_povm: element count mismatch");
  const auto a = weighted_powers(ens, n, dense_cap);
  if (povm.elements.front().rows() != a.front().rows())
    throw std::invalid_argument("error_of_povm: dimension mismatch");
  double success = 0.0;
  for (int m = 0; m < ens.size(); ++m)
    success += (povm.elements[m] * a[m]).trace().real();
  return 1.0 - success;
}

double pgm_error_bound(const Ensemble& ens, int n) {
  if (n < 1) throw std::invalid_argument("pgm_error_bound: n must be >= 1");
  double bound = 0.0;
  for (int m = 0; m < ens.size(); ++m)
    for (int mb = 0; mb < ens.size(); ++mb) {
      if (mb == m) continue;
      const double f = fidelity(ens.states[m], ens.states[mb]);
      bound += std::sqrt(ens.priors[m] * ens.priors[mb]) * std::pow(f, 0.5 * n);
    }
  return 0.5 * bound;
}

IterativeResult optimal_error_iterative(const Ensemble& ens, int n, double tolerance,
                                        int max_iters, Eigen::Index dense_cap) {
  const auto a = weighted_powers(ens, n, dense_cap);
  const Eigen::Index d = a.front().rows();
  const int m_count = ens.size();
  Povm povm = pgm_from(a);

  const auto residual_of = [&](const Povm& candidate) {
    Matrix y = Matrix::Zero(d, d);
    for (int m = 0; m < m_count; ++m) y += a[m] * candidate.elements[m];
    y = 0.5 * (y + y.adjoint());
    double residual = 0.0;
    for (int m = 0; m < m_count; ++m) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(y - a[m]), Eigen::EigenvaluesOnly);
      residual = std::max(residual, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    return residual;
  };

  double residual = residual_of(povm);
  int iter = 0;
  while (residual > tolerance && iter < max_iters) {
    Matrix t = Matrix::Zero(d, d);
    std::vector<Matrix> al(m_count);
    for (int m = 0; m < m_count; ++m) {
      al[m] = a[m] * povm.elements[m] * a[m];
      t += al[m];
    }
    t = 0.5 * (t + t.adjoint());
    const Matrix t_inv_half = psd_power(t, -0.5);
    const Matrix deficit = Matrix::Identity(d, d) - support_projector(t);
    const double share = 1.0 / static_cast<double>(m_count);
    for (int m = 0; m < m_count; ++m) {
      Matrix e = t_inv_half * al[m] * t_inv_half + share * deficit;
      povm.elements[m] = 0.5 * (e + e.adjoint());
    }
    residual = residual_of(povm);
    ++iter;
  }

  double success = 0.0;
  for (int m = 0; m < m_count; ++m) success += (povm.elements[m] * a[m]).trace().real();
  IterativeResult result;
  result.error = 1.0 - success;
  result.povm = std::move(povm);
  result.certificate_residual = residual;
  result.iterations = iter;
  result.converged = residual <= tolerance;
  return result;
}

}  // namespace qht
