#include "qht/sample_complexity.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "qht/detail/optimize.hpp"
#include "qht/divergences.hpp"

namespace qht {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOrthoTraceTol = 1e-10;   // Tr[rho sigma] below this: orthogonal
constexpr double kIdenticalNormTol = 1e-10;  // ‖rho − sigma‖₁ below this: identical

std::optional<long long> ceil_bound(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x >= 9e18) return std::nullopt;
  const long long v = static_cast<long long>(std::ceil(x));
  return std::max<long long>(v, 1);
}

/// Smallest n in [1, n_max] with error(n) ≤ target, assuming error is
/// nonincreasing in n; doubling bracket then binary search.
std::optional<long long> monotone_first_below(
    const std::function<double(long long)>& error, double target, long long n_max,
    bool* capped) {
  *capped = false;
  long long hi = 1;
  double value = error(hi);
  if (value <= target) return 1;
  while (value > target) {
    if (hi >= n_max) {
      *capped = true;
      return std::nullopt;
    }
    hi = std::min(2 * hi, n_max);
    value = error(hi);
  }
  long long lo = hi / 2;  // error(lo) > target, error(hi) ≤ target
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (error(mid) <= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

long long dense_n_cap(Eigen::Index dim, Eigen::Index dense_cap) {
  long long n = 0;
  Eigen::Index size = 1;
  while (size <= dense_cap / dim) {
    size *= dim;
    ++n;
  }
  return std::max<long long>(n, 1);
}

void echo(SampleComplexityReport& report, const std::string& key, double value) {
  report.parameters[key] = value;
}

}  // namespace

std::string to_string(Setting s) {
  switch (s) {
    case Setting::symmetric: return "symmetric";
    case Setting::asymmetric: return "asymmetric";
    case Setting::mary: return "mary";
  }
  return "?";
}

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::one: return "one";
    case Triviality::infinite: return "infinite";
    case Triviality::nontrivial: return "nontrivial";
  }
  return "?";
}

nlohmann::json SampleComplexityReport::to_json() const {
  nlohmann::json j;
  j["setting"] = to_string(setting);
  j["triviality"] = to_string(triviality);
  j["lower_bounds"] = nlohmann::json::object();
  for (const auto& [name, value] : lower_bounds) {
    if (std::isinf(value))
      j["lower_bounds"][name] = "infinity";
    else
      j["lower_bounds"][name] = value;
  }
  j["upper_bounds"] = nlohmann::json::object();
  for (const auto& [name, value] : upper_bounds) j["upper_bounds"][name] = value;
  if (exact) j["exact"] = *exact;
  if (empirical_n_star) j["empirical_n_star"] = *empirical_n_star;
  if (empirical_n_star_certified)
    j["empirical_n_star_certified"] = *empirical_n_star_certified;
  j["search_capped"] = search_capped;
  j["parameters"] = parameters;
  j["notes"] = notes;
  return j;
}

Triviality classify_trivial(const BinaryInstance& inst, double eps) {
  const double overlap = (inst.rho.mat() * inst.sigma.mat()).trace().real();
  if (overlap <= kOrthoTraceTol) return Triviality::one;
  if (eps >= 0.5) return Triviality::one;
  // min_s p^s q^{1−s} is attained at an endpoint, so the existence condition
  // reduces to eps ≥ min(p, q).
  if (std::min(inst.p, inst.q()) <= eps) return Triviality::one;
  if (trace_norm(inst.rho.mat() - inst.sigma.mat()) <= kIdenticalNormTol)
    return Triviality::infinite;
  return Triviality::nontrivial;
}

SampleComplexityReport n_star_symmetric(const BinaryInstance& inst, double eps,
                                        Backend backend, const SearchLimits& limits) {
  SampleComplexityReport report;
  report.setting = Setting::symmetric;
  const double p = inst.p, q = inst.q();
  echo(report, "p", p);
  echo(report, "eps", eps);

  report.triviality = classify_trivial(inst, eps);
  if (report.triviality == Triviality::one) {
    report.empirical_n_star = 1;
    report.notes.push_back("trivial instance: one sample suffices");
    return report;
  }
  if (report.triviality == Triviality::infinite) {
    report.notes.push_back("trivial instance: states identical, target unreachable");
    return report;
  }

  const double f = fidelity(inst.rho, inst.sigma);
  const double fh = holevo_fidelity(inst.rho, inst.sigma);
  const double db2 = 2.0 * (1.0 - std::sqrt(f));
  const double pq = p * q;

  report.lower_bounds["fidelity"] = std::log(pq / eps) / (-std::log(f));
  report.lower_bounds["bures"] = (pq - eps * (1.0 - eps)) / (pq * db2);
  report.lower_bounds["holevo"] = std::log(pq / eps) / (-std::log(fh));

  const auto pair = spectral_pair(inst.rho.mat(), inst.sigma.mat());
  const auto objective = [&](double s) {
    const double den = -std::log(q_s(pair, s));
    if (!(den > 0.0)) return kInf;
    return std::log(std::pow(p, s) * std::pow(q, 1.0 - s) / eps) / den;
  };
  const auto opt = detail::minimize_scalar(objective, 0.0, 1.0);
  if (auto u = ceil_bound(opt.value)) {
    report.upper_bounds["chernoff_s_opt"] = *u;
    echo(report, "s_star", opt.x);
  }
  if (auto u = ceil_bound(std::log(std::sqrt(pq) / eps) / (-0.5 * std::log(fh))))
    report.upper_bounds["holevo_half"] = *u;
  if (auto u = ceil_bound(std::log(std::sqrt(pq) / eps) / (-0.5 * std::log(f))))
    report.upper_bounds["fidelity_half"] = *u;

  if (inst.rho.is_pure() && inst.sigma.is_pure())
    report.exact = ceil_bound(std::log(pq / (eps * (1.0 - eps))) / (-std::log(f)));

  const long long n_max = backend == Backend::schur
                              ? limits.n_max
                              : dense_n_cap(inst.rho.dim(), limits.dense_cap);
  bool capped = false;
  report.empirical_n_star = monotone_first_below(
      [&](long long n) {
        return helstrom_error(inst, static_cast<int>(n), backend, limits.dense_cap).error;
      },
      eps, n_max, &capped);
  report.search_capped = capped;
  if (capped) report.notes.push_back("empirical search hit n_max = " + std::to_string(n_max));
  return report;
}

SampleComplexityReport n_star_asymmetric(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double eps, double delta, double gamma,
                                         Backend backend, const SearchLimits& limits) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("n_star_asymmetric: eps and delta must lie in (0,1)");
  if (!(gamma > 1.0)) throw std::invalid_argument("n_star_asymmetric: gamma must exceed 1");
  SampleComplexityReport report;
  report.setting = Setting::asymmetric;
  echo(report, "eps", eps);
  echo(report, "delta", delta);
  echo(report, "gamma", gamma);

  const double overlap = (rho.mat() * sigma.mat()).trace().real();
  if (overlap <= kOrthoTraceTol) {
    report.triviality = Triviality::one;
    report.empirical_n_star = 1;
    report.notes.push_back("orthogonal states: one sample suffices");
    return report;
  }
  if (trace_norm(rho.mat() - sigma.mat()) <= kIdenticalNormTol) {
    // beta = 1 − eps for every n
    if (delta < 1.0 - eps) {
      report.triviality = Triviality::infinite;
      report.notes.push_back("identical states: beta stays at 1 - eps");
      return report;
    }
    report.triviality = Triviality::one;
    report.empirical_n_star = 1;
    return report;
  }

  // Lower bounds: sup over alpha in (1, gamma] of
  // ln((1−eps)^{α'}/delta)/D̃_α(rho‖sigma) and the mirrored orientation.
  const auto sandwich_lower = [&](const DensityMatrix& one, const DensityMatrix& two,
                                  double type_budget, double target,
                                  const std::string& name, const std::string& opt_key) {
    if (std::isinf(sandwiched_renyi(gamma, one, two))) {
      report.notes.push_back("lower bound '" + name + "' omitted: divergence at gamma infinite");
      return;
    }
    const auto objective = [&](double alpha) {
      const double a_prime = alpha / (alpha - 1.0);
      const double num = a_prime * std::log1p(-type_budget) + std::log(1.0 / target);
      const double den = sandwiched_renyi(alpha, one, two);
      if (!(den > 0.0) || std::isinf(den)) return -kInf;
      return num / den;
    };
    const auto opt = detail::maximize_scalar(objective, 1.0 + 1e-6, gamma);
    if (std::isfinite(opt.value)) {
      report.lower_bounds[name] = opt.value;
      echo(report, opt_key, opt.x);
    }
  };
  sandwich_lower(rho, sigma, eps, delta, "sandwiched_rho_sigma", "alpha_star_lower_rho_sigma");
  sandwich_lower(sigma, rho, delta, eps, "sandwiched_sigma_rho", "alpha_star_lower_sigma_rho");

  // Upper bounds: inf over alpha in (0,1) of ln(eps^{α'}/delta)/D_α(rho‖sigma)
  // and the mirrored orientation; alpha → 1 recovers the relative entropy.
  const auto petz_upper = [&](const DensityMatrix& one, const DensityMatrix& two,
                              double type_budget, double target, const std::string& name,
                              const std::string& opt_key) {
    const auto objective = [&](double alpha) {
      const double a_prime = alpha / (alpha - 1.0);
      const double num = a_prime * std::log(type_budget) + std::log(1.0 / target);
      const double den = petz_renyi(alpha, one, two);
      if (!(den > 0.0)) return kInf;
      return num / den;
    };
    const auto opt = detail::minimize_scalar(objective, 1e-6, 1.0 - 1e-6);
    if (auto u = ceil_bound(opt.value)) {
      report.upper_bounds[name] = *u;
      echo(report, opt_key, opt.x);
    }
  };
  petz_upper(rho, sigma, eps, delta, "petz_rho_sigma", "alpha_star_upper_rho_sigma");
  petz_upper(sigma, rho, delta, eps, "petz_sigma_rho", "alpha_star_upper_sigma_rho");

  echo(report, "relative_entropy", relative_entropy(rho, sigma));

  const long long n_max = backend == Backend::schur
                              ? limits.n_max
                              : dense_n_cap(rho.dim(), limits.dense_cap);
  bool capped = false;
  long long largest_searched = 0;
  double beta_at_largest = 1.0;
  report.empirical_n_star = monotone_first_below(
      [&](long long n) {
        const double b =
            beta(rho, sigma, eps, static_cast<int>(n), backend, limits.dense_cap).beta;
        if (n > largest_searched) {
          largest_searched = n;
          beta_at_largest = b;
        }
        return b;
      },
      delta, n_max, &capped);
  report.search_capped = capped;
  if (capped)
    report.notes.push_back("empirical search hit n_max = " + std::to_string(n_max));
  if (largest_searched > 0 && beta_at_largest > 0.0) {
    echo(report, "stein_ratio_n", static_cast<double>(largest_searched));
    echo(report, "stein_ratio",
         -std::log(beta_at_largest) / static_cast<double>(largest_searched));
  }
  return report;
}

SampleComplexityReport n_star_mary(const Ensemble& ens, double eps,
                                   const SearchLimits& limits) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("n_star_mary: eps must lie in (0,1)");
  SampleComplexityReport report;
  report.setting = Setting::mary;
  echo(report, "eps", eps);
  echo(report, "M", static_cast<double>(ens.size()));

  const int m_count = ens.size();
  double max_f = 0.0;
  double lower = -kInf;
  double upper_arg = -kInf;
  bool pairwise_condition_ok = true;
  for (int m = 0; m < m_count; ++m)
    for (int mb = m + 1; mb < m_count; ++mb) {
      const double f = fidelity(ens.states[m], ens.states[mb]);
      max_f = std::max(max_f, f);
      const double pm = ens.priors[m], pmb = ens.priors[mb];
      const double pair_mass = pm * pmb / (pm + pmb);
      if (pair_mass < eps) pairwise_condition_ok = false;
      if (f >= 1.0 - 1e-12) {
        if (pair_mass > eps) {
          report.triviality = Triviality::infinite;
          report.notes.push_back("a pair of states coincides: target unreachable");
          return report;
        }
        continue;
      }
      const double neg_log_f = -std::log(f);
      if (f > kOrthoTraceTol)
        lower = std::max(lower, std::log(pair_mass / eps) / neg_log_f);
      upper_arg = std::max(
          upper_arg,
          2.0 * std::log(m_count * (m_count - 1) * std::sqrt(pm * pmb) / (2.0 * eps)) /
              neg_log_f);
    }

  if (max_f <= kOrthoTraceTol) {
    report.triviality = Triviality::one;
    report.empirical_n_star = 1;
    report.notes.push_back("pairwise orthogonal ensemble: one sample suffices");
    return report;
  }
  if (!pairwise_condition_ok)
    report.notes.push_back("pairwise prior-mass condition violated for some pair");
  if (std::isfinite(lower)) report.lower_bounds["pairwise_fidelity"] = lower;
  if (auto u = ceil_bound(upper_arg)) report.upper_bounds["pgm_pairwise"] = *u;

  const long long n_cap = dense_n_cap(ens.dim(), limits.dense_cap);
  // PGM error need not be monotone in n; the definition asks for the first
  // hitting time, so scan linearly under the dense cap.
  bool pgm_found = false;
  for (long long n = 1; n <= n_cap; ++n) {
    const auto povm = pgm(ens, static_cast<int>(n), limits.dense_cap);
    if (error_of_povm(ens, static_cast<int>(n), povm, limits.dense_cap) <= eps) {
      report.empirical_n_star = n;
      pgm_found = true;
      break;
    }
  }
  if (!pgm_found) {
    report.search_capped = true;
    report.notes.push_back("PGM search hit the dense cap at n = " + std::to_string(n_cap));
  }
  bool certified_found = false;
  for (long long n = 1; n <= n_cap; ++n) {
    const auto result = optimal_error_iterative(ens, static_cast<int>(n), 1e-8, 20000,
                                                limits.dense_cap);
    if (result.error <= eps) {
      report.empirical_n_star_certified = n;
      certified_found = true;
      break;
    }
  }
  if (!certified_found)
    report.notes.push_back("certified-optimal search hit the dense cap at n = " +
                           std::to_string(n_cap));
  return report;
}

}  // namespace qht
