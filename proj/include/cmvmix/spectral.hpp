#pragma once

#include <vector>

#include "cmvmix/banded.hpp"
#include "cmvmix/context.hpp"

namespace cmv {

// Shift matrix: block (k,k') of Upsilon_[r] is I_r iff e(k') = e(k)+1,
// so that Upsilon Z(z) = z Z(z). eta flips e(k') = -e(k) (Z(z) -> Z(1/z)),
// nu combines both: e(k') = -e(k)-1 (Z(z) -> z^{-1} Z(1/z)).
Banded upsilon(int r, int n);
Banded eta(int r, int n);
Banded nu(int r, int n);

struct UpsilonFactorReport {
  double nuEta;       // interior residual of Upsilon = nu * eta
  double etaNu;       // interior residual of Upsilon^T = eta * nu
  double orthogonal;  // interior residual of Upsilon^T Upsilon = I
};
UpsilonFactorReport factorCheckUpsilon(int r, int n);

struct RecurrencePack {
  Banded T;     // 2q super, 2p sub
  Banded Tscr;  // 2q super, 2p sub (the triangular sandwiches cap both)
  double crossResidual;  // L-route vs U-route agreement on the exact window
  double bandPurity;     // largest out-of-band magnitude
};
// Needs ctx.N >= n + 2(p+q).
RecurrencePack recurrenceT(const Context& ctx, int n);

struct SzegoPack {
  Banded R, S, Rscr, Sscr;  // q super, p sub each
  double crossResidual;
  double bandPurity;
};
// Needs ctx.N >= n + (p+q).
SzegoPack szegoMatrices(const Context& ctx, int n);

// q x q and p x p ladder blocks of the four triangular factors, plus the
// derived 2q x 2q and 2p x 2p blocks that tile R, S and their inverses.
struct BlockLadder {
  int q = 0, p = 0;
  int blocks = 0;
  std::vector<Eigen::MatrixXcd> Ldiag, lsub;      // from L
  std::vector<Eigen::MatrixXcd> Lbdiag, lbsub;    // from Lscbar
  std::vector<Eigen::MatrixXcd> Ubdiag, ubsup;    // from Ubar
  std::vector<Eigen::MatrixXcd> Usdiag, ussup;    // from Usc
  std::vector<Eigen::MatrixXcd> LL, LLinv, UU, UUinv;
  Eigen::MatrixXcd LLm1, UUm1;

  // max |LL[k] * LLinv[k] - I| over k (and the UU analogue).
  double inverseResidual() const;
};
BlockLadder blockLadder(const Context& ctx);

// Residual of the staircase tiling: diagonal blocks of R are LLm1, LL[1],
// LL[3], ... (and UUm1, UU[1], ... in the U tiling); S carries LLinv[0],
// LLinv[2], ... and UUinv[0], ...; entries outside the staircase vanish.
double stairsResidual(const SzegoPack& sz, const BlockLadder& lad);

// Scalar real case: alpha_k = l_k (k even), conj(l_k) (k odd); these drive
// the recursion Phi_{k+1} = z Phi_k + alpha_k Phi*_k.
std::vector<Complex> verblunsky(const Context& ctx, int count);

struct SzegoScalar {
  std::vector<Laurent> phi;      // monic, deg phi_n = n
  std::vector<Laurent> phiStar;  // reversed, phiStar_n(0) = 1
};
SzegoScalar szegoPhi(const Context& ctx, int count);

// Monic orthogonal polynomials on the circle straight from the moments
// (dense Toeplitz solves); independent of the CMV factorization path.
std::vector<Laurent> monicOpucOracle(const MatrixFunctional& mf, int count);

// max coefficient-wise residual of both recursion lines over k < count-1.
double szegoRecurrenceResidual(const SzegoScalar& s, const std::vector<Complex>& alpha);

struct SzegoBlocks {
  std::vector<LaurentMatrix> Q, P, Qscr, Pscr;              // even indices 2m
  std::vector<LaurentMatrix> Qstar, Pstar, QscrStar, PscrStar;  // odd 2m+1
};
SzegoBlocks szegoBlockPolynomials(const Context& ctx, int blockCount);

// Residual report for the q=1, p=2 real two-measure recurrences.
struct TwoMeasureReport {
  double blockDiagonal;   // S is block diagonal with 4x4 blocks
  double blockContents;   // those blocks tile as [[LLbar_{4n},0],[X_n,LLbar_{4n+2}]]
  double recurrences;     // the four Szego-type relations at the given points
  double uConsistency;    // two expressions for u_{2n} agree
  double worst() const;
};
TwoMeasureReport twoMeasureRecurrenceCheck(const Context& ctx, int pairs,
                                           const std::vector<Complex>& zs);

}  // namespace cmv
