#include "qht/divergences.hpp"

#include <cmath>
#include <limits>

namespace qht {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Mass outside a support below this level counts as nested supports.
constexpr double kSupportMassTol = 1e-11;
// Tr[rho sigma] at or below this level counts as orthogonal states.
constexpr double kOrthoTol = 1e-14;

void check_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("divergences: state dimensions differ");
}

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

bool DivergenceValue::infinite() const { return std::isinf(value); }

double sqrt_overlap_trace_norm(const Matrix& a, const Matrix& b) {
  // ‖√A√B‖₁ = Σ √eig(√B A √B)
  const Matrix rb = psd_sqrt(b);
  const auto ed = eigh(Matrix(rb * a * rb), 1e-9);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i)
    acc += std::sqrt(clamp0(ed.eigenvalues[i]));
  return acc;
}

double sqrt_overlap_trace(const Matrix& a, const Matrix& b) {
  return (psd_sqrt(a) * psd_sqrt(b)).trace().real();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const double f = sqrt_overlap_trace_norm(rho.mat(), sigma.mat());
  return std::min(1.0, f * f);
}

double holevo_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const double t = sqrt_overlap_trace(rho.mat(), sigma.mat());
  return std::min(1.0, t * t);
}

double z_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double z) {
  check_same_dim(rho, sigma);
  if (z < 0.5 || z > 1.0)
    throw std::invalid_argument("z_fidelity: z must lie in [1/2, 1]");
  // F_z = (Tr[(σ^{1/4z} ρ^{1/2z} σ^{1/4z})^z])²
  const Matrix sz = psd_power(sigma.mat(), 1.0 / (4.0 * z));
  const Matrix rz = psd_power(rho.mat(), 1.0 / (2.0 * z));
  const auto ed = eigh(Matrix(sz * rz * sz), 1e-9);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lambda = ed.eigenvalues[i];
    if (lambda > 0.0) acc += std::pow(lambda, z);
  }
  return std::min(1.0, acc * acc);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  return 0.5 * trace_norm(rho.mat() - sigma.mat());
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sqrt(clamp0(2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)))));
}

double hellinger_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sqrt(clamp0(2.0 * (1.0 - std::sqrt(holevo_fidelity(rho, sigma)))));
}

SpectralPair spectral_pair(const Matrix& a, const Matrix& b) {
  const auto ea = eigh(a, 1e-9);
  const auto eb = eigh(b, 1e-9);
  SpectralPair pair;
  pair.a_eig = ea.eigenvalues;
  pair.b_eig = eb.eigenvalues;
  pair.overlap = (ea.eigenvectors.adjoint() * eb.eigenvectors).cwiseAbs2();
  pair.a_cut = support_cutoff(pair.a_eig);
  pair.b_cut = support_cutoff(pair.b_eig);
  pair.a_outside_b = 0.0;
  pair.b_outside_a = 0.0;
  for (Eigen::Index i = 0; i < pair.a_eig.size(); ++i)
    for (Eigen::Index j = 0; j < pair.b_eig.size(); ++j) {
      const double w = pair.overlap(i, j);
      if (pair.a_eig[i] > pair.a_cut && pair.b_eig[j] <= pair.b_cut)
        pair.a_outside_b += pair.a_eig[i] * w;
      if (pair.b_eig[j] > pair.b_cut && pair.a_eig[i] <= pair.a_cut)
        pair.b_outside_a += pair.b_eig[j] * w;
    }
  return pair;
}

double q_s(const SpectralPair& pair, double s) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pair.a_eig.size(); ++i) {
    const double lam = pair.a_eig[i];
    if (lam <= pair.a_cut) continue;
    const double lam_s = s == 0.0 ? 1.0 : std::pow(lam, s);
    for (Eigen::Index j = 0; j < pair.b_eig.size(); ++j) {
      const double mu = pair.b_eig[j];
      if (mu <= pair.b_cut) continue;
      const double mu_s = s == 1.0 ? 1.0 : std::pow(mu, 1.0 - s);
      acc += lam_s * mu_s * pair.overlap(i, j);
    }
  }
  return acc;
}

double q_s(const Matrix& a, const Matrix& b, double s) {
  return q_s(spectral_pair(a, b), s);
}

QMinResult q_min(const SpectralPair& pair) {
  // ln Q_s is convex in s: coarse grid, then golden-section refinement.
  constexpr int kGrid = 64;
  double best_s = 0.0;
  double best_q = kInf;
  for (int k = 0; k <= kGrid; ++k) {
    const double s = static_cast<double>(k) / kGrid;
    const double q = q_s(pair, s);
    if (q < best_q) {
      best_q = q;
      best_s = s;
    }
  }
  double lo = std::max(0.0, best_s - 1.0 / kGrid);
  double hi = std::min(1.0, best_s + 1.0 / kGrid);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = q_s(pair, x1), f2 = q_s(pair, x2);
  while (hi - lo > 1e-8) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = q_s(pair, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = q_s(pair, x2);
    }
  }
  const double s_star = 0.5 * (lo + hi);
  const double q_star = q_s(pair, s_star);
  if (q_star < best_q) return {q_star, s_star};
  return {best_q, best_s};
}

QMinResult q_min(const Matrix& a, const Matrix& b) {
  return q_min(spectral_pair(a, b));
}

ChernoffResult chernoff(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const auto r = q_min(rho.mat(), sigma.mat());
  const double overlap = (rho.mat() * sigma.mat()).trace().real();
  if (overlap <= kOrthoTol || r.value <= 0.0) return {kInf, r.s_star};
  return {-std::log(r.value), r.s_star};
}

double petz_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  if (alpha <= 0.0 || alpha == 1.0)
    throw std::invalid_argument("petz_renyi: alpha must lie in (0,1) or (1,inf)");
  const auto pair = spectral_pair(rho.mat(), sigma.mat());
  if (alpha > 1.0 && pair.a_outside_b > kSupportMassTol) return kInf;
  const double q = q_s(pair, alpha);
  if (q <= 0.0) return kInf;
  return std::log(q) / (alpha - 1.0);
}

double sandwiched_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  if (alpha <= 0.0 || alpha == 1.0)
    throw std::invalid_argument("sandwiched_renyi: alpha must lie in (0,1) or (1,inf)");
  if (alpha > 1.0) {
    const auto pair = spectral_pair(rho.mat(), sigma.mat());
    if (pair.a_outside_b > kSupportMassTol) return kInf;
  }
  const Matrix g = psd_power(sigma.mat(), (1.0 - alpha) / alpha);
  const Matrix r = psd_sqrt(rho.mat());
  const auto ed = eigh(Matrix(r * g * r), 1e-9);
  double q = 0.0;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lambda = ed.eigenvalues[i];
    if (lambda > 0.0) q += std::pow(lambda, alpha);
  }
  if (q <= 0.0) return kInf;
  return std::log(q) / (alpha - 1.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const auto er = eigh(rho.mat(), 1e-9);
  const double cut = support_cutoff(er.eigenvalues);
  const Matrix pi_sigma = support_projector(sigma.mat());
  const double outside = ((Matrix::Identity(rho.dim(), rho.dim()) - pi_sigma) * rho.mat())
                             .trace()
                             .real();
  if (outside > kSupportMassTol) return kInf;
  double entropy_term = 0.0;
  for (Eigen::Index i = 0; i < er.eigenvalues.size(); ++i) {
    const double lambda = er.eigenvalues[i];
    if (lambda > cut) entropy_term += lambda * std::log(lambda);
  }
  const double cross_term = (rho.mat() * psd_log(sigma.mat())).trace().real();
  return entropy_term - cross_term;
}

DivergenceValue fidelity_family(FidelityKind kind, const DensityMatrix& rho,
                                const DensityMatrix& sigma, std::optional<double> z) {
  switch (kind) {
    case FidelityKind::uhlmann:
      if (z) throw std::invalid_argument("fidelity_family: z only valid for kind=z");
      return {fidelity(rho, sigma), "fidelity", std::nullopt};
    case FidelityKind::holevo:
      if (z) throw std::invalid_argument("fidelity_family: z only valid for kind=z");
      return {holevo_fidelity(rho, sigma), "holevo-fidelity", std::nullopt};
    case FidelityKind::z:
      if (!z) throw std::invalid_argument("fidelity_family: kind=z requires z");
      return {z_fidelity(rho, sigma, *z), "z-fidelity", z};
  }
  throw std::logic_error("fidelity_family: unreachable");
}

DivergenceValue distance(DistanceKind kind, const DensityMatrix& rho,
                         const DensityMatrix& sigma) {
  switch (kind) {
    case DistanceKind::trace:
      return {trace_distance(rho, sigma), "trace-distance", std::nullopt};
    case DistanceKind::bures:
      return {bures_distance(rho, sigma), "bures-distance", std::nullopt};
    case DistanceKind::hellinger:
      return {hellinger_distance(rho, sigma), "hellinger-distance", std::nullopt};
  }
  throw std::logic_error("distance: unreachable");
}

DivergenceValue renyi(RenyiKind kind, double alpha, const DensityMatrix& rho,
                      const DensityMatrix& sigma) {
  switch (kind) {
    case RenyiKind::petz:
      return {petz_renyi(alpha, rho, sigma), "petz-renyi", alpha};
    case RenyiKind::sandwiched:
      return {sandwiched_renyi(alpha, rho, sigma), "sandwiched-renyi", alpha};
  }
  throw std::logic_error("renyi: unreachable");
}

DivergenceValue relative_entropy_value(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return {relative_entropy(rho, sigma), "relative-entropy", std::nullopt};
}

}  // namespace qht
