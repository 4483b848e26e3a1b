// Shared Neyman-Pearson machinery over Hermitian pencils rho - t*sigma.
//
// A PencilFamily is a weighted list of matrix pairs; the dense backend uses a
// single pair of weight one, the permutation-symmetric backend one pair per
// spin block weighted by its multiplicity. Traces of both operators against
// the positive-part and kernel projectors of the pencil drive a monotone
// bisection in the threshold t, with randomization on the kernel when the
// type-I error jumps across the target at a pencil eigenvalue.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qht/matrix.hpp"

namespace qht::detail {

inline constexpr double kKernelRelTol = 1e-11;
inline constexpr double kThresholdMergeTol = 1e-10;

struct WeightedPencilPair {
  Matrix a;  // rho-side block
  Matrix b;  // sigma-side block
  double weight = 1.0;
};

struct PencilSplit {
  double rho_pos = 0.0;    // Tr[P+ rho]
  double rho_ker = 0.0;    // Tr[P0 rho]
  double sigma_pos = 0.0;  // Tr[P+ sigma]
  double sigma_ker = 0.0;  // Tr[P0 sigma]
};

struct PencilFamily {
  std::vector<WeightedPencilPair> pairs;

  /// Pooled generalized eigenvalues of the pairs (a_k, b_k) on supp(b_k),
  /// ascending, with coincident values merged at 1e-10 relative.
  std::vector<double> thresholds() const;

  /// Spectral split of all pencils a_k − t·b_k; the kernel classification
  /// uses a common scale across pairs so backends agree.
  PencilSplit split(double t) const;

  /// t → ∞ limit: the positive part converges into ker(b), where it carries
  /// rho-mass Σ_k w_k Tr[K a_k K] (K the kernel projector of b_k) and no
  /// sigma-mass.
  PencilSplit split_infinity() const;
};

struct NpSolution {
  double beta = 0.0;
  double type_one = 0.0;
  double threshold = 0.0;
  double weight = 0.0;  // randomization weight on the kernel projector
  bool randomized = false;
};

/// Minimum type-II error subject to type-I ≤ eps over tests
/// Λ = {rho − tσ > 0} + x·{rho − tσ = 0}.
NpSolution np_sweep(const PencilFamily& family, double eps);

// --- implementation ----------------------------------------------------------

inline std::vector<double> merge_sorted_thresholds(std::vector<double> v,
                                                   double rel_tol = kThresholdMergeTol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double t : v) {
    t = std::max(t, 0.0);
    if (!out.empty() && t - out.back() <= rel_tol * std::max(1.0, t)) continue;
    out.push_back(t);
  }
  return out;
}

inline std::vector<double> PencilFamily::thresholds() const {
  std::vector<double> all;
  for (const auto& pair : pairs) {
    const auto eb = eigh(pair.b, 1e-9);
    const double cut = support_cutoff(eb.eigenvalues);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < eb.eigenvalues.size(); ++i)
      if (eb.eigenvalues[i] > cut) kept.push_back(i);
    if (kept.empty()) continue;
    Matrix w(pair.b.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k)
      w.col(static_cast<Eigen::Index>(k)) =
          eb.eigenvectors.col(kept[k]) / std::sqrt(eb.eigenvalues[kept[k]]);
    const Matrix l = w.adjoint() * pair.a * w;
    const auto el = eigh(Matrix(0.5 * (l + l.adjoint())), 1e-8);
    for (Eigen::Index i = 0; i < el.eigenvalues.size(); ++i)
      all.push_back(el.eigenvalues[i]);
  }
  return merge_sorted_thresholds(std::move(all));
}

inline PencilSplit PencilFamily::split(double t) const {
  struct Local {
    RealVector eig;
    Matrix vec;
    const WeightedPencilPair* pair;
  };
  std::vector<Local> locals;
  locals.reserve(pairs.size());
  double scale = 1.0;
  for (const auto& pair : pairs) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(pair.a - t * pair.b);
    scale = std::max(scale, es.eigenvalues().cwiseAbs().maxCoeff());
    locals.push_back({es.eigenvalues(), es.eigenvectors(), &pair});
  }
  const double ker_tol = kKernelRelTol * scale;
  PencilSplit out;
  for (const auto& loc : locals) {
    const Matrix av = loc.pair->a * loc.vec;
    const Matrix bv = loc.pair->b * loc.vec;
    for (Eigen::Index i = 0; i < loc.eig.size(); ++i) {
      const double ra = loc.vec.col(i).dot(av.col(i)).real();
      const double rb = loc.vec.col(i).dot(bv.col(i)).real();
      if (loc.eig[i] > ker_tol) {
        out.rho_pos += loc.pair->weight * ra;
        out.sigma_pos += loc.pair->weight * rb;
      } else if (loc.eig[i] >= -ker_tol) {
        out.rho_ker += loc.pair->weight * ra;
        out.sigma_ker += loc.pair->weight * rb;
      }
    }
  }
  return out;
}

inline PencilSplit PencilFamily::split_infinity() const {
  PencilSplit out;
  for (const auto& pair : pairs) {
    const Matrix k =
        Matrix::Identity(pair.b.rows(), pair.b.cols()) - support_projector(pair.b);
    out.rho_pos += pair.weight * (pair.a * k).trace().real();
  }
  return out;
}

inline NpSolution randomized_solution(const PencilSplit& s, double t, double eps) {
  const double a_open = 1.0 - s.rho_pos;
  const double x =
      s.rho_ker > 0.0 ? std::clamp((a_open - eps) / s.rho_ker, 0.0, 1.0) : 0.0;
  return {s.sigma_pos + x * s.sigma_ker, a_open - x * s.rho_ker, t, x, true};
}

inline NpSolution np_sweep(const PencilFamily& family, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("np_sweep: eps must lie in [0,1)");
  const auto alpha_open = [](const PencilSplit& s) { return 1.0 - s.rho_pos; };
  const std::vector<double> ts = family.thresholds();

  // Saturation: when the t → ∞ test already meets the budget, the optimum
  // keeps only directions of rho inside ker(sigma) and costs zero type-II
  // error.
  {
    const PencilSplit s_inf = family.split_infinity();
    if (alpha_open(s_inf) <= eps)
      return {0.0, alpha_open(s_inf), std::numeric_limits<double>::infinity(), 0.0, false};
  }

  // Binary search over thresholds for the first with alpha_open > eps.
  std::vector<PencilSplit> cache(ts.size());
  std::vector<char> have(ts.size(), 0);
  const auto split_at = [&](int i) -> const PencilSplit& {
    if (!have[i]) {
      cache[i] = family.split(ts[i]);
      have[i] = 1;
    }
    return cache[i];
  };
  int below = -1;  // alpha ≤ eps (t = 0 gives alpha = 0)
  int above = static_cast<int>(ts.size());
  while (above - below > 1) {
    const int mid = (below + above) / 2;
    if (alpha_open(split_at(mid)) > eps)
      above = mid;
    else
      below = mid;
  }

  if (above < static_cast<int>(ts.size())) {
    const PencilSplit& s = split_at(above);
    if (alpha_open(s) - s.rho_ker <= eps)  // the jump brackets eps: randomize
      return randomized_solution(s, ts[above], eps);
  }

  // Smooth crossing: bisect on t directly. Past the last generalized
  // eigenvalue the type-I error still climbs toward its asymptote when
  // sigma is singular, so grow the upper end until it overshoots.
  double t_lo = below >= 0 ? ts[below] : 0.0;
  PencilSplit s_lo = below >= 0 ? split_at(below) : family.split(0.0);
  double t_hi;
  if (above < static_cast<int>(ts.size())) {
    t_hi = ts[above];
  } else {
    t_hi = std::max(1.0, ts.empty() ? 1.0 : 2.0 * ts.back() + 1.0);
    for (int grow = 0; grow < 200; ++grow) {
      const PencilSplit sh = family.split(t_hi);
      if (alpha_open(sh) > eps) break;
      t_lo = t_hi;
      s_lo = sh;
      t_hi *= 2.0;
    }
  }
  for (int it = 0; it < 200 && t_hi - t_lo > 1e-16 * std::max(1.0, t_hi); ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    const PencilSplit sm = family.split(mid);
    if (alpha_open(sm) > eps) {
      t_hi = mid;
    } else {
      t_lo = mid;
      s_lo = sm;
    }
  }
  // A jump hidden between mis-resolved thresholds shows up as a kernel at the
  // upper end of the collapsed bracket.
  const PencilSplit s_hi = family.split(t_hi);
  if (s_hi.rho_ker > 0.0 && alpha_open(s_hi) > eps &&
      alpha_open(s_hi) - s_hi.rho_ker <= eps)
    return randomized_solution(s_hi, t_hi, eps);
  return {s_lo.sigma_pos, alpha_open(s_lo), t_lo, 0.0, false};
}

}  // namespace qht::detail
