#include "qht/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qht::schur {

namespace {

// Blocks whose total mass is below this level are skipped in value
// computations; contributions are bounded by the number of sectors times the
// threshold, far below every tested tolerance.
constexpr double kBlockMassTol = 1e-16;

// Clebsch-Gordan coefficient ⟨j, M−s; 1/2, s | J, M⟩ for J = j ± 1/2, in
// doubled-spin integers (twos = ±1). Condon-Shortley phases.
double cg_coeff(int twoj, int twoM, int twos, bool up) {
  if (up) {
    const int num = twoj + twos * twoM + 1;
    if (num <= 0) return 0.0;
    return std::sqrt(static_cast<double>(num) / (2.0 * (twoj + 1)));
  }
  const int num = twoj - twos * twoM + 1;
  if (num <= 0) return 0.0;
  const double c = std::sqrt(static_cast<double>(num) / (2.0 * (twoj + 1)));
  return twos > 0 ? -c : c;
}

// Couple block B (spin twoj) with one extra copy of rho into spin twoJ,
// where twoJ = twoj ± 1.
Matrix couple(const Matrix& b, int twoj, const Matrix& rho, int twoJ) {
  const bool up = twoJ == twoj + 1;
  const int dim = twoJ + 1;
  Matrix out = Matrix::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int twoM = twoJ - 2 * r;
    for (int rp = 0; rp < dim; ++rp) {
      const int twoMp = twoJ - 2 * rp;
      Complex acc = 0.0;
      for (int s : {+1, -1}) {
        const int twom = twoM - s;
        if (std::abs(twom) > twoj) continue;
        const double c1 = cg_coeff(twoj, twoM, s, up);
        if (c1 == 0.0) continue;
        for (int sp : {+1, -1}) {
          const int twomp = twoMp - sp;
          if (std::abs(twomp) > twoj) continue;
          const double c2 = cg_coeff(twoj, twoMp, sp, up);
          if (c2 == 0.0) continue;
          acc += c1 * c2 * b((twoj - twom) / 2, (twoj - twomp) / 2) *
                 rho(s > 0 ? 0 : 1, sp > 0 ? 0 : 1);
        }
      }
      out(r, rp) = acc;
    }
  }
  return out;
}

struct RawBlock {
  int twoj;
  Matrix b;
  BigInt mult;
};

std::vector<RawBlock> next_level(const std::vector<RawBlock>& level, int k,
                                 const Matrix& rho) {
  // level-k blocks are ordered twoj descending: twoj = k, k−2, …, (k & 1)
  const auto find = [&](int twoj) -> const RawBlock* {
    if (twoj < (k & 1) || twoj > k || ((k - twoj) & 1)) return nullptr;
    return &level[(k - twoj) / 2];
  };
  std::vector<RawBlock> out;
  for (int twoJ = k + 1; twoJ >= ((k + 1) & 1); twoJ -= 2) {
    const RawBlock* lower = find(twoJ - 1);
    const RawBlock* upper = find(twoJ + 1);
    BigInt mult = 0;
    if (lower) mult += lower->mult;
    if (upper) mult += upper->mult;
    // For a tensor power both parents project to the same block; use
    // whichever exists.
    const RawBlock* src = lower ? lower : upper;
    out.push_back({twoJ, couple(src->b, src->twoj, rho, twoJ), mult});
  }
  return out;
}

double block_mass(const SchurBlock& blk) {
  return mult_to_double(blk.mult) * blk.b.trace().real();
}

void check_compatible(const SchurBlocks& a, const SchurBlocks& b) {
  if (a.n != b.n || a.blocks.size() != b.blocks.size())
    throw std::invalid_argument("schur: block shape mismatch");
}

}  // namespace

SchurBlocks schur_blocks(const DensityMatrix& rho, int n) {
  if (rho.dim() != 2) throw std::invalid_argument("schur_blocks: dim must be 2");
  if (n < 1) throw std::invalid_argument("schur_blocks: n must be >= 1");
  std::vector<RawBlock> level{{1, rho.mat(), BigInt(1)}};
  for (int k = 1; k < n; ++k) level = next_level(level, k, rho.mat());
  SchurBlocks out;
  out.n = n;
  out.blocks.reserve(level.size());
  for (auto& raw : level)
    out.blocks.push_back({raw.twoj / 2.0, std::move(raw.b), std::move(raw.mult)});
  return out;
}

double mult_to_double(const BigInt& m) { return m.convert_to<double>(); }

double mult_log(const BigInt& m) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  return log(Float(m)).convert_to<double>();
}

double block_helstrom(double p, const SchurBlocks& a, const SchurBlocks& b) {
  check_compatible(a, b);
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("block_helstrom: prior must lie in (0,1)");
  double norm1 = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const double w = mult_to_double(a.blocks[i].mult);
    if (w * std::max(a.blocks[i].b.trace().real(), b.blocks[i].b.trace().real()) <
        kBlockMassTol)
      continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Matrix(p * a.blocks[i].b - (1.0 - p) * b.blocks[i].b), Eigen::EigenvaluesOnly);
    norm1 += w * es.eigenvalues().cwiseAbs().sum();
  }
  return 0.5 * (1.0 - norm1);
}

detail::NpSolution block_beta_solution(const SchurBlocks& a, const SchurBlocks& b,
                                       double eps) {
  check_compatible(a, b);
  detail::PencilFamily family;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const double w = mult_to_double(a.blocks[i].mult);
    if (w * std::max(a.blocks[i].b.trace().real(), b.blocks[i].b.trace().real()) <
        kBlockMassTol)
      continue;
    family.pairs.push_back({a.blocks[i].b, b.blocks[i].b, w});
  }
  return detail::np_sweep(family, eps);
}

double block_beta(const SchurBlocks& a, const SchurBlocks& b, double eps) {
  return block_beta_solution(a, b, eps).beta;
}

double log_sqrt_overlap(const SchurBlocks& a, const SchurBlocks& b) {
  check_compatible(a, b);
  // log-sum-exp over sectors of ln(mult_j) + ln ‖√A_j √B_j‖₁
  std::vector<double> terms;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (block_mass(a.blocks[i]) < kBlockMassTol || block_mass(b.blocks[i]) < kBlockMassTol)
      continue;
    const Matrix rb = psd_sqrt(b.blocks[i].b);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(rb * a.blocks[i].b * rb),
                                             Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      if (es.eigenvalues()[k] > 0.0) s += std::sqrt(es.eigenvalues()[k]);
    if (s <= 0.0) continue;
    terms.push_back(mult_log(a.blocks[i].mult) + std::log(s));
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

SchurBasis schur_basis(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("schur_basis: n must lie in [1,16]");
  struct Sector {
    int twoj;
    Matrix cols;  // 2^k × (twoj+1)
  };
  std::vector<Sector> sectors{{1, Matrix::Identity(2, 2)}};
  for (int k = 1; k < n; ++k) {
    const Eigen::Index dim_next = Eigen::Index(1) << (k + 1);
    std::vector<Sector> next;
    for (const auto& sec : sectors) {
      const int twoj = sec.twoj;
      for (const int twoJ : {twoj + 1, twoj - 1}) {
        if (twoJ < 0) continue;
        const bool up = twoJ == twoj + 1;
        Matrix cols = Matrix::Zero(dim_next, twoJ + 1);
        for (int r = 0; r <= twoJ; ++r) {
          const int twoM = twoJ - 2 * r;
          for (int s : {+1, -1}) {
            const int twom = twoM - s;
            if (std::abs(twom) > twoj) continue;
            const double c = cg_coeff(twoj, twoM, s, up);
            if (c == 0.0) continue;
            const Eigen::Index sub = s > 0 ? 0 : 1;  // new qubit appended last
            const auto parent = sec.cols.col((twoj - twom) / 2);
            for (Eigen::Index idx = 0; idx < parent.size(); ++idx)
              cols(2 * idx + sub, r) += c * parent(idx);
          }
        }
        next.push_back({twoJ, std::move(cols)});
      }
    }
    sectors = std::move(next);
  }
  SchurBasis basis;
  basis.n = n;
  const Eigen::Index dim = Eigen::Index(1) << n;
  basis.unitary = Matrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const auto& sec : sectors) {
    basis.sectors.push_back({sec.twoj / 2.0, offset});
    basis.unitary.block(0, offset, dim, sec.twoj + 1) = sec.cols;
    offset += sec.twoj + 1;
  }
  return basis;
}

}  // namespace qht::schur
