// Permutation-symmetric backend for qubit tensor powers.
//
// rho^{⊗n} commutes with every permutation of the copies, so it acts as
// ⊕_j B_j ⊗ I_{mult_j} over spin-j sectors. Blocks are assembled by coupling
// one additional spin-1/2 per step with Clebsch-Gordan coefficients; block
// dimensions stay ≤ n+1 and the number of sectors is ~n/2, so trace norms and
// pencil sweeps run at n in the hundreds.
#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qht/detail/pencil.hpp"
#include "qht/matrix.hpp"

namespace qht::schur {

using BigInt = boost::multiprecision::cpp_int;

struct SchurBlock {
  double j;     // spin label; half-integer
  Matrix b;     // (2j+1)-dim reduced block, row r holds M = j − r
  BigInt mult;  // sector multiplicity (exact integer)
};

struct SchurBlocks {
  int n = 0;
  std::vector<SchurBlock> blocks;  // j descending
};

/// Block decomposition of rho^{⊗n} for a qubit state. Throws for dim ≠ 2.
SchurBlocks schur_blocks(const DensityMatrix& rho, int n);

/// ½(1 − Σ_j mult_j ‖p A_j − (1−p) B_j‖₁)
double block_helstrom(double p, const SchurBlocks& a, const SchurBlocks& b);

/// Blockwise Neyman-Pearson sweep with thresholds pooled across sectors.
detail::NpSolution block_beta_solution(const SchurBlocks& a, const SchurBlocks& b,
                                       double eps);
double block_beta(const SchurBlocks& a, const SchurBlocks& b, double eps);

/// ln ‖√(ρ^{⊗n}) √(σ^{⊗n})‖₁, accumulated across sectors in the log domain;
/// −(2/n)·result is the per-copy fidelity exponent at scale.
double log_sqrt_overlap(const SchurBlocks& a, const SchurBlocks& b);

double mult_to_double(const BigInt& m);
double mult_log(const BigInt& m);

/// Explicit coupled basis for small n: sector s occupies 2j_s+1 consecutive
/// columns; conjugating a tensor power into this basis reproduces the block
/// of its spin label in every sector.
struct SchurBasisSector {
  double j;
  Eigen::Index offset;
};
struct SchurBasis {
  int n = 0;
  Matrix unitary;  // 2^n × 2^n, columns are coupled basis vectors
  std::vector<SchurBasisSector> sectors;
};
SchurBasis schur_basis(int n);

}  // namespace qht::schur
