#include "qht/binary.hpp"

#include <cmath>

#include "qht/detail/pencil.hpp"
#include "qht/schur.hpp"

namespace qht {

BinaryInstance::BinaryInstance(double prior, DensityMatrix r, DensityMatrix s)
    : p(prior), rho(std::move(r)), sigma(std::move(s)) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("BinaryInstance: prior must lie in (0,1)");
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("BinaryInstance: state dimensions differ");
}

Matrix Test::effective() const {
  if (kernel) return lambda + weight * (*kernel);
  return lambda;
}

void validate_test(const Test& test, double tolerance) {
  if (test.weight < 0.0 || test.weight > 1.0)
    throw std::invalid_argument("Test: randomization weight must lie in [0,1]");
  const Matrix eff = test.effective();
  if (!is_hermitian(eff, 1e-9)) throw std::invalid_argument("Test: operator not Hermitian");
  const auto ed = eigh(eff, 1e-9);
  if (ed.eigenvalues.minCoeff() < -tolerance || ed.eigenvalues.maxCoeff() > 1.0 + tolerance)
    throw std::invalid_argument("Test: operator violates 0 <= L <= I");
}

namespace {

Test materialize_test(const Matrix& rho_n, const Matrix& sigma_n, double threshold,
                      double weight) {
  if (std::isinf(threshold)) {
    // t → ∞ limit: keep the part of rho living inside ker(sigma)
    const Matrix k = Matrix::Identity(sigma_n.rows(), sigma_n.cols()) -
                     support_projector(sigma_n);
    Test test;
    test.lambda = support_projector(Matrix(k * rho_n * k));
    test.threshold = threshold;
    return test;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_n - threshold * sigma_n);
  const double ker_tol =
      detail::kKernelRelTol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const Eigen::Index d = rho_n.rows();
  Matrix plus = Matrix::Zero(d, d);
  Matrix ker = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Matrix proj = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    if (es.eigenvalues()[i] > ker_tol)
      plus += proj;
    else if (es.eigenvalues()[i] >= -ker_tol)
      ker += proj;
  }
  Test test;
  test.lambda = std::move(plus);
  test.kernel = std::move(ker);
  test.weight = weight;
  test.threshold = threshold;
  return test;
}

}  // namespace

HelstromResult helstrom_error(const BinaryInstance& inst, int n, Backend backend,
                              Eigen::Index dense_cap) {
  if (n < 1) throw std::invalid_argument("helstrom_error: n must be >= 1");
  if (backend == Backend::schur) {
    if (inst.rho.dim() != 2)
      throw std::invalid_argument("helstrom_error: schur backend requires dim 2");
    const auto a = schur::schur_blocks(inst.rho, n);
    const auto b = schur::schur_blocks(inst.sigma, n);
    return {schur::block_helstrom(inst.p, a, b), std::nullopt};
  }
  checked_power_dim(inst.rho.dim(), n, dense_cap);
  const Matrix rho_n = kron_power(inst.rho.mat(), n);
  const Matrix sigma_n = kron_power(inst.sigma.mat(), n);
  const Matrix delta = inst.p * rho_n - inst.q() * sigma_n;
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
  const double norm1 = es.eigenvalues().cwiseAbs().sum();
  const double error = 0.5 * (1.0 - norm1);

  const double ker_tol =
      detail::kKernelRelTol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Matrix plus = Matrix::Zero(delta.rows(), delta.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > ker_tol)
      plus += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  Test test;
  test.lambda = std::move(plus);
  return {error, std::move(test)};
}

BetaResult beta(const DensityMatrix& rho, const DensityMatrix& sigma, double eps, int n,
                Backend backend, Eigen::Index dense_cap) {
  if (n < 1) throw std::invalid_argument("beta: n must be >= 1");
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("beta: eps must lie in [0,1)");
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("beta: state dimensions differ");
  if (backend == Backend::schur) {
    if (rho.dim() != 2) throw std::invalid_argument("beta: schur backend requires dim 2");
    const auto a = schur::schur_blocks(rho, n);
    const auto b = schur::schur_blocks(sigma, n);
    const auto sol = schur::block_beta_solution(a, b, eps);
    return {sol.beta, sol.type_one, sol.threshold, sol.randomized, std::nullopt};
  }
  checked_power_dim(rho.dim(), n, dense_cap);
  const Matrix rho_n = kron_power(rho.mat(), n);
  const Matrix sigma_n = kron_power(sigma.mat(), n);
  detail::PencilFamily family;
  family.pairs.push_back({rho_n, sigma_n, 1.0});
  const auto sol = detail::np_sweep(family, eps);
  Test test = materialize_test(rho_n, sigma_n, sol.threshold, sol.weight);
  return {sol.beta, sol.type_one, sol.threshold, sol.randomized, std::move(test)};
}

TestErrors error_of_test(const BinaryInstance& inst, int n, const Test& test,
                         Eigen::Index dense_cap) {
  const Eigen::Index dim_n = checked_power_dim(inst.rho.dim(), n, dense_cap);
  if (test.lambda.rows() != dim_n)
    throw std::invalid_argument("error_of_test: test dimension does not match dim^n");
  const Matrix eff = test.effective();
  const Matrix rho_n = kron_power(inst.rho.mat(), n);
  const Matrix sigma_n = kron_power(inst.sigma.mat(), n);
  const double type_one = 1.0 - (eff * rho_n).trace().real();
  const double type_two = (eff * sigma_n).trace().real();
  return {type_one, type_two, inst.p * type_one + inst.q() * type_two};
}

}  // namespace qht
