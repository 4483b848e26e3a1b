// Distinguishability measures: fidelities (Uhlmann, Holevo, z-family),
// trace/Bures/Hellinger distances, Petz and sandwiched Rényi divergences,
// relative entropy and the Chernoff divergence with its optimizer.
//
// All logarithms are natural; +∞ is represented as an IEEE infinity, never
// as a sentinel float.
#pragma once

#include <optional>
#include <string>

#include "qht/matrix.hpp"

namespace qht {

struct DivergenceValue {
  double value = 0.0;  // nats for divergences; may be +infinity
  std::string measure;
  std::optional<double> parameter;  // alpha, s or z where applicable
  bool infinite() const;
};

// --- state-level measures ---------------------------------------------------

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double holevo_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// z-fidelity ‖ρ^{1/4z} σ^{1/4z}‖_{2z}^{4z} for z ∈ [1/2, 1]; z = 1/2 is the
/// Uhlmann fidelity and z = 1 the Holevo fidelity.
double z_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double z);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double hellinger_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Petz divergence (α−1)^{-1} ln Tr[ρ^α σ^{1−α}] with support-restricted
/// powers; +∞ when α > 1 and supp(ρ) ⊄ supp(σ). α ∈ (0,1) ∪ (1,∞).
double petz_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma);
/// Sandwiched divergence (α−1)^{-1} ln Tr[(ρ^{1/2} σ^{(1−α)/α} ρ^{1/2})^α];
/// same support convention.
double sandwiched_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr[ρ (ln ρ − ln σ)] on supp(ρ) when supp(ρ) ⊆ supp(σ); +∞ otherwise.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

struct ChernoffResult {
  double value;   // C = −ln min_s Q_s; +∞ for orthogonal states
  double s_star;  // minimizing s (grid minimizer when orthogonal)
};
ChernoffResult chernoff(const DensityMatrix& rho, const DensityMatrix& sigma);

// --- operator-level quantities on PSD operators -----------------------------

/// ‖√A√B‖₁ for positive semi-definite A, B.
double sqrt_overlap_trace_norm(const Matrix& a, const Matrix& b);
/// Tr[√A√B] for positive semi-definite A, B.
double sqrt_overlap_trace(const Matrix& a, const Matrix& b);

/// Joint spectral data of a PSD pair, making Q_s = Tr[A^s B^{1−s}] cheap to
/// evaluate for many s.
struct SpectralPair {
  RealVector a_eig, b_eig;
  Eigen::MatrixXd overlap;  // |⟨u_i|v_j⟩|²
  double a_cut, b_cut;      // support cutoffs
  double a_outside_b;       // Tr[(I − Π_B) A]
  double b_outside_a;       // Tr[(I − Π_A) B]
};
SpectralPair spectral_pair(const Matrix& a, const Matrix& b);

/// Tr[A^s B^{1−s}] with support-restricted powers; the s ∈ {0,1} endpoints use
/// support projectors (Q_0 = Tr[Π_A B], Q_1 = Tr[A Π_B]).
double q_s(const SpectralPair& pair, double s);
double q_s(const Matrix& a, const Matrix& b, double s);

struct QMinResult {
  double value;
  double s_star;
};
/// min_{s∈[0,1]} Q_s(A‖B) by a 64-point grid refined with golden-section on
/// ln Q_s (log-convex in s) to |Δs| ≤ 1e-8.
QMinResult q_min(const Matrix& a, const Matrix& b);
QMinResult q_min(const SpectralPair& pair);

// --- tagged op-level dispatch (CLI surface) ----------------------------------

enum class FidelityKind { uhlmann, holevo, z };
enum class DistanceKind { trace, bures, hellinger };
enum class RenyiKind { petz, sandwiched };

DivergenceValue fidelity_family(FidelityKind kind, const DensityMatrix& rho,
                                const DensityMatrix& sigma,
                                std::optional<double> z = std::nullopt);
DivergenceValue distance(DistanceKind kind, const DensityMatrix& rho,
                         const DensityMatrix& sigma);
DivergenceValue renyi(RenyiKind kind, double alpha, const DensityMatrix& rho,
                      const DensityMatrix& sigma);
DivergenceValue relative_entropy_value(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qht
