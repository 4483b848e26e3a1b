// Sample complexity of symmetric, asymmetric and M-ary testing: trivial-case
// classification, closed-form and optimized bounds, and empirical n* by
// search over the monotone error curves.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qht/binary.hpp"
#include "qht/multi.hpp"

namespace qht {

enum class Setting { symmetric, asymmetric, mary };
enum class Triviality { one, infinite, nontrivial };

std::string to_string(Setting s);
std::string to_string(Triviality t);

struct SearchLimits {
  long long n_max = 1000;                     // empirical search cap (schur backend)
  Eigen::Index dense_cap = kDefaultDenseCap;  // dim^n cap (dense backend)
};

struct SampleComplexityReport {
  Setting setting = Setting::symmetric;
  Triviality triviality = Triviality::nontrivial;
  std::map<std::string, double> lower_bounds;
  std::map<std::string, long long> upper_bounds;
  std::optional<long long> exact;            // pure-state closed form (symmetric)
  std::optional<long long> empirical_n_star;
  std::optional<long long> empirical_n_star_certified;  // M-ary optimal-solver search
  bool search_capped = false;
  std::map<std::string, double> parameters;  // inputs echoed plus optimizers found
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};

/// Remark-style classification: orthogonal states, eps ≥ 1/2 or
/// eps ≥ min(p,q) make a single sample enough; identical states with
/// min(p,q) > eps can never reach eps.
Triviality classify_trivial(const BinaryInstance& inst, double eps);

SampleComplexityReport n_star_symmetric(const BinaryInstance& inst, double eps,
                                        Backend backend = Backend::dense,
                                        const SearchLimits& limits = {});

/// gamma > 1 selects the sandwiched-divergence order range (1, gamma] for the
/// lower bounds; any finite choice is valid when supports nest.
SampleComplexityReport n_star_asymmetric(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double eps, double delta, double gamma = 2.0,
                                         Backend backend = Backend::dense,
                                         const SearchLimits& limits = {});

SampleComplexityReport n_star_mary(const Ensemble& ens, double eps,
                                   const SearchLimits& limits = {});

}  // namespace qht
