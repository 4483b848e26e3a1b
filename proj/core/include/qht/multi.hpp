// M-ary discrimination: pretty-good measurement, its fidelity-based error
// bound, and a fixed-point solver for the optimal POVM certified by the
// Yuen-Kennedy-Lax conditions.
#pragma once

#include <vector>

#include "qht/matrix.hpp"
#include "qht/state_io.hpp"

namespace qht {

struct Ensemble {
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
  Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states);
  int size() const { return static_cast<int>(priors.size()); }
  Eigen::Index dim() const { return states.front().dim(); }
  static Ensemble from_data(const EnsembleData& data);
};

struct Povm {
  std::vector<Matrix> elements;
};
/// Each element ≥ −tolerance, elements sum to I within tolerance.
void validate_povm(const Povm& povm, double tolerance = tol::povm);

/// Pretty-good measurement Λ_m = S^{-1/2} A_m S^{-1/2} with A_m = p_m ρ_m^{⊗n}
/// and S = Σ A_m (inverse on the support); the identity deficit on the
/// support complement is split equally across elements.
Povm pgm(const Ensemble& ens, int n, Eigen::Index dense_cap = kDefaultDenseCap);

/// Σ p_m Tr[(I − Λ_m) ρ_m^{⊗n}]
double error_of_povm(const Ensemble& ens, int n, const Povm& povm,
                     Eigen::Index dense_cap = kDefaultDenseCap);

/// ½ Σ_{m≠m̄} √(p_m p_m̄) F(ρ_m, ρ_m̄)^{n/2}, from single-copy fidelities;
/// upper-bounds the PGM error without materializing tensor powers.
double pgm_error_bound(const Ensemble& ens, int n);

struct IterativeResult {
  double error = 0.0;
  Povm povm;
  double certificate_residual = 0.0;  // max_m ‖(Y − A_m)₋‖_∞
  int iterations = 0;
  bool converged = false;
};
/// Fixed-point refinement Λ_m ← T^{-1/2} A_m Λ_m A_m T^{-1/2} with
/// T = Σ A_m Λ_m A_m, started from the PGM, until the certificate residual
/// drops below tolerance. The duality gap is at most residual · dim.
IterativeResult optimal_error_iterative(const Ensemble& ens, int n, double tolerance = 1e-7,
                                        int max_iters = 5000,
                                        Eigen::Index dense_cap = kDefaultDenseCap);

}  // namespace qht
