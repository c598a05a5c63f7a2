#include "cmvmix/spectral.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

Context Context::build(const MatrixFunctional& mf, int N) {
  Context c;
  c.mf = mf;
  c.N = N;
  c.Mleft = buildMomentMatrix(mf, N, Side::Left);
  c.Mright = buildMomentMatrix(mf, N, Side::Right);
  c.left = gaussBorel(c.Mleft, Side::Left);
  c.right = gaussBorel(c.Mright, Side::Right);
  c.B = familyB(c.left, mf.q());
  c.A = familyA(c.left, mf.p());
  c.Ascr = familyAscr(c.right, mf.q());
  c.Bscr = familyBscr(c.right, mf.p());
  return c;
}

namespace {

enum class Shift { Up, Flip, FlipDown };  // e(k') = e(k)+1 | -e(k) | -e(k)-1

Banded shiftMatrix(int r, int n, Shift kind, int bandReach) {
  Banded X(n, bandReach, bandReach);
  for (int i = 0; i < n; ++i) {
    const int k = i / r, c = i % r;
    const int e = cmvExponent(k);
    const int target = (kind == Shift::Up) ? e + 1 : (kind == Shift::Flip ? -e : -e - 1);
    // invert the exponent map: e(0)=0, e(2j-1)=-j, e(2j)=j
    const int kp = (target == 0) ? 0 : (target > 0 ? 2 * target : -2 * target - 1);
    const int j = kp * r + c;
    if (j >= 0 && j < n) X.set(i, j, Complex(1.0, 0.0));
  }
  return X;
}

}  // namespace

Banded upsilon(int r, int n) { return shiftMatrix(r, n, Shift::Up, 2 * r); }
Banded eta(int r, int n) { return shiftMatrix(r, n, Shift::Flip, r); }
Banded nu(int r, int n) { return shiftMatrix(r, n, Shift::FlipDown, r); }

UpsilonFactorReport factorCheckUpsilon(int r, int n) {
  const Eigen::MatrixXcd U = upsilon(r, n).toDense();
  const Eigen::MatrixXcd E = eta(r, n).toDense();
  const Eigen::MatrixXcd V = nu(r, n).toDense();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  const int lo = 2 * r, hi = n - 2 * r;
  auto interiorMax = [&](const Eigen::MatrixXcd& M) {
    double worst = 0.0;
    for (int i = lo; i < hi; ++i)
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(M(i, j)));
    return worst;
  };
  UpsilonFactorReport rep;
  rep.nuEta = interiorMax(U - V * E);
  rep.etaNu = interiorMax(U.transpose() - E * V);
  rep.orthogonal = interiorMax(U.transpose() * U - I);
  return rep;
}

namespace {

// X * G^{-1} for unit-lower or general lower-triangular G, via a solve on
// the right (never forming G^{-1} densely).
Eigen::MatrixXcd solveLowerRight(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& G) {
  return G.transpose()
      .triangularView<Eigen::Upper>()
      .solve(X.transpose())
      .transpose();
}

Eigen::MatrixXcd solveUpperRight(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& G) {
  return G.transpose()
      .triangularView<Eigen::Lower>()
      .solve(X.transpose())
      .transpose();
}

double windowDiff(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, int rows,
                  int cols) {
  return (X.topLeftCorner(rows, cols) - Y.topLeftCorner(rows, cols))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

RecurrencePack recurrenceT(const Context& ctx, int n) {
  const int q = ctx.q(), p = ctx.p(), N = ctx.N;
  if (N < n + 2 * (p + q))
    fail(Err::MarginTooSmall, "recurrence matrix needs margin 2(p+q)");

  const Eigen::MatrixXcd Uq = upsilon(q, N).toDense();
  const Eigen::MatrixXcd Up = upsilon(p, N).toDense();
  const Eigen::MatrixXcd& L = ctx.left.unitLower;
  const Eigen::MatrixXcd& Ub = ctx.left.upper;
  const Eigen::MatrixXcd& Lsb = ctx.right.unitLower;
  const Eigen::MatrixXcd& Us = ctx.right.upper;

  // T = L Upsilon_q L^{-1}, rows < N-2q exact; cross route Ubar^{-1}
  // Upsilon_p Ubar has exact columns < N-2p.
  Eigen::MatrixXcd T1 = solveLowerRight(L * Uq, L);
  Eigen::MatrixXcd T2 = Ub.triangularView<Eigen::Upper>().solve(Up * Ub);
  Eigen::MatrixXcd Ts1 = solveLowerRight(Lsb * Uq.transpose(), Lsb);
  Eigen::MatrixXcd Ts2 = Us.triangularView<Eigen::Upper>().solve(Up.transpose() * Us);

  RecurrencePack pack;
  double cross = windowDiff(T1, T2, N - 2 * q, N - 2 * p);
  cross = std::max(cross, windowDiff(Ts1, Ts2, N - 2 * q, N - 2 * p));
  pack.crossResidual = cross;
  double purity1 = 0.0, purity2 = 0.0;
  pack.T = Banded::fromDense(T1.topLeftCorner(n, n), 2 * p, 2 * q, &purity1);
  // Tscr shares T's band: the lower-triangular sandwich caps the
  // superdiagonals at 2q and the upper one the subdiagonals at 2p.
  pack.Tscr = Banded::fromDense(Ts1.topLeftCorner(n, n), 2 * p, 2 * q, &purity2);
  pack.bandPurity = std::max(purity1, purity2);
  return pack;
}

SzegoPack szegoMatrices(const Context& ctx, int n) {
  const int q = ctx.q(), p = ctx.p(), N = ctx.N;
  if (N < n + p + q) fail(Err::MarginTooSmall, "Szego matrices need margin p+q");

  const Eigen::MatrixXcd Eq = eta(q, N).toDense();
  const Eigen::MatrixXcd Ep = eta(p, N).toDense();
  const Eigen::MatrixXcd Vq = nu(q, N).toDense();
  const Eigen::MatrixXcd Vp = nu(p, N).toDense();
  const Eigen::MatrixXcd& L = ctx.left.unitLower;
  const Eigen::MatrixXcd& Ub = ctx.left.upper;
  const Eigen::MatrixXcd& Lsb = ctx.right.unitLower;
  const Eigen::MatrixXcd& Us = ctx.right.upper;

  Eigen::MatrixXcd R1 = solveLowerRight(Lsb * Eq, L);
  Eigen::MatrixXcd R2 = Us.triangularView<Eigen::Upper>().solve(Ep * Ub);
  Eigen::MatrixXcd S1 = solveLowerRight(L * Vq, Lsb);
  Eigen::MatrixXcd S2 = Ub.triangularView<Eigen::Upper>().solve(Vp * Us);
  Eigen::MatrixXcd Rs1 = solveLowerRight(L * Eq, Lsb);
  Eigen::MatrixXcd Rs2 = Ub.triangularView<Eigen::Upper>().solve(Ep * Us);
  Eigen::MatrixXcd Ss1 = solveLowerRight(Lsb * Vq, L);
  Eigen::MatrixXcd Ss2 = Us.triangularView<Eigen::Upper>().solve(Vp * Ub);

  SzegoPack pack;
  const int rows = N - q, cols = N - p;
  double cross = windowDiff(R1, R2, rows, cols);
  cross = std::max(cross, windowDiff(S1, S2, rows, cols));
  cross = std::max(cross, windowDiff(Rs1, Rs2, rows, cols));
  cross = std::max(cross, windowDiff(Ss1, Ss2, rows, cols));
  pack.crossResidual = cross;

  double purity = 0.0, worst = 0.0;
  pack.R = Banded::fromDense(R1.topLeftCorner(n, n), p, q, &purity);
  worst = purity;
  pack.S = Banded::fromDense(S1.topLeftCorner(n, n), p, q, &purity);
  worst = std::max(worst, purity);
  pack.Rscr = Banded::fromDense(Rs1.topLeftCorner(n, n), p, q, &purity);
  worst = std::max(worst, purity);
  pack.Sscr = Banded::fromDense(Ss1.topLeftCorner(n, n), p, q, &purity);
  pack.bandPurity = std::max(worst, purity);
  return pack;
}

namespace {

struct TriLadder {
  std::vector<Eigen::MatrixXcd> diag;
  std::vector<Eigen::MatrixXcd> off;  // subdiagonal for lower, super for upper
};

TriLadder lowerLadder(const Eigen::MatrixXcd& L, int r) {
  const int blocks = static_cast<int>(L.rows()) / r;
  TriLadder lad;
  for (int k = 0; k < blocks; ++k) lad.diag.push_back(L.block(k * r, k * r, r, r));
  for (int k = 0; k + 1 < blocks; ++k) {
    Eigen::MatrixXcd sub = L.block((k + 1) * r, k * r, r, r);
    lad.off.push_back(lad.diag[k + 1].triangularView<Eigen::Lower>().solve(sub));
  }
  return lad;
}

TriLadder upperLadder(const Eigen::MatrixXcd& U, int r) {
  const int blocks = static_cast<int>(U.rows()) / r;
  TriLadder lad;
  for (int k = 0; k < blocks; ++k) lad.diag.push_back(U.block(k * r, k * r, r, r));
  for (int k = 0; k + 1 < blocks; ++k) {
    // block (k, k+1) = u_k * U_{k+1}
    Eigen::MatrixXcd sup = U.block(k * r, (k + 1) * r, r, r);
    lad.off.push_back(lad.diag[k + 1]
                          .transpose()
                          .triangularView<Eigen::Lower>()
                          .solve(sup.transpose())
                          .transpose());
  }
  return lad;
}

Eigen::MatrixXcd inv(const Eigen::MatrixXcd& M) {
  return M.partialPivLu().solve(Eigen::MatrixXcd::Identity(M.rows(), M.cols()));
}

}  // namespace

BlockLadder blockLadder(const Context& ctx) {
  BlockLadder lad;
  lad.q = ctx.q();
  lad.p = ctx.p();
  TriLadder l = lowerLadder(ctx.left.unitLower, lad.q);
  TriLadder lb = lowerLadder(ctx.right.unitLower, lad.q);
  TriLadder ub = upperLadder(ctx.left.upper, lad.p);
  TriLadder us = upperLadder(ctx.right.upper, lad.p);
  lad.Ldiag = l.diag;
  lad.lsub = l.off;
  lad.Lbdiag = lb.diag;
  lad.lbsub = lb.off;
  lad.Ubdiag = ub.diag;
  lad.ubsup = ub.off;
  lad.Usdiag = us.diag;
  lad.ussup = us.off;

  const int nl = static_cast<int>(l.off.size());
  const int nu = static_cast<int>(ub.off.size());
  lad.blocks = std::min(nl, nu) - 1;
  const int q = lad.q, p = lad.p;
  const Eigen::MatrixXcd Iq = Eigen::MatrixXcd::Identity(q, q);
  const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(p, p);

  for (int k = 0; k + 1 < nl; ++k) {
    const auto &Ln = l.diag[k], &Ln1 = l.diag[k + 1];
    const auto &Bn = lb.diag[k], &Bn1 = lb.diag[k + 1];
    const auto &ln = l.off[k], &bn = lb.off[k];
    Eigen::MatrixXcd LLk(2 * q, 2 * q), LLik(2 * q, 2 * q);
    LLk << -Bn * ln * inv(Ln), Bn * inv(Ln1),
        Bn1 * (Iq - bn * ln) * inv(Ln), Bn1 * bn * inv(Ln1);
    LLik << -Ln * bn * inv(Bn), Ln * inv(Bn1),
        Ln1 * (Iq - ln * bn) * inv(Bn), Ln1 * ln * inv(Bn1);
    lad.LL.push_back(LLk);
    lad.LLinv.push_back(LLik);
  }
  for (int k = 0; k + 1 < nu; ++k) {
    const auto &Un = ub.diag[k], &Un1 = ub.diag[k + 1];
    const auto &Sn = us.diag[k], &Sn1 = us.diag[k + 1];
    const auto &un = ub.off[k], &sn = us.off[k];
    Eigen::MatrixXcd UUk(2 * p, 2 * p), UUik(2 * p, 2 * p);
    UUk << -inv(Sn) * sn * Un, inv(Sn) * (Ip - sn * un) * Un1,
        inv(Sn1) * Un, inv(Sn1) * un * Un1;
    UUik << -inv(Un) * un * Sn, inv(Un) * (Ip - un * sn) * Sn1,
        inv(Un1) * Sn, inv(Un1) * sn * Sn1;
    lad.UU.push_back(UUk);
    lad.UUinv.push_back(UUik);
  }
  lad.LLm1 = lb.diag[0] * inv(l.diag[0]);
  lad.UUm1 = inv(us.diag[0]) * ub.diag[0];
  return lad;
}

double BlockLadder::inverseResidual() const {
  double worst = 0.0;
  const Eigen::MatrixXcd I2q = Eigen::MatrixXcd::Identity(2 * q, 2 * q);
  const Eigen::MatrixXcd I2p = Eigen::MatrixXcd::Identity(2 * p, 2 * p);
  for (size_t k = 0; k < LL.size(); ++k)
    worst = std::max(worst, (LL[k] * LLinv[k] - I2q).cwiseAbs().maxCoeff());
  for (size_t k = 0; k < UU.size(); ++k)
    worst = std::max(worst, (UU[k] * UUinv[k] - I2p).cwiseAbs().maxCoeff());
  return worst;
}

double stairsResidual(const SzegoPack& sz, const BlockLadder& lad) {
  const int q = lad.q, p = lad.p;
  const int n = sz.R.n();
  const Eigen::MatrixXcd R = sz.R.toDense();
  const Eigen::MatrixXcd S = sz.S.toDense();
  const Eigen::MatrixXcd Rs = sz.Rscr.toDense();
  const Eigen::MatrixXcd Ss = sz.Sscr.toDense();
  double worst = 0.0;
  auto cmp = [&](const Eigen::MatrixXcd& M, int row, const Eigen::MatrixXcd& blk) {
    const int s = static_cast<int>(blk.rows());
    if (row + s > n) return;
    worst = std::max(worst,
                     (M.block(row, row, s, s) - blk).cwiseAbs().maxCoeff());
  };
  // L-side tiling: R has LLm1 then LL[1], LL[3], ...; S has LLinv[0], LLinv[2], ...
  cmp(R, 0, lad.LLm1);
  cmp(Rs, 0, inv(lad.LLm1));
  for (int k = 0; q + 2 * q * k + 2 * q <= n; ++k) {
    const int idx = 2 * k + 1;
    if (idx >= static_cast<int>(lad.LL.size())) break;
    cmp(R, q + 2 * q * k, lad.LL[idx]);
    cmp(Rs, q + 2 * q * k, lad.LLinv[idx]);
  }
  for (int k = 0; 2 * q * k + 2 * q <= n; ++k) {
    const int idx = 2 * k;
    if (idx >= static_cast<int>(lad.LL.size())) break;
    cmp(S, 2 * q * k, lad.LLinv[idx]);
    cmp(Ss, 2 * q * k, lad.LL[idx]);
  }
  // U-side tiling: R has UUm1, UU[1], UU[3], ...; S has UUinv[0], UUinv[2], ...
  cmp(R, 0, lad.UUm1);
  cmp(Rs, 0, inv(lad.UUm1));
  for (int k = 0; p + 2 * p * k + 2 * p <= n; ++k) {
    const int idx = 2 * k + 1;
    if (idx >= static_cast<int>(lad.UU.size())) break;
    cmp(R, p + 2 * p * k, lad.UU[idx]);
    cmp(Rs, p + 2 * p * k, lad.UUinv[idx]);
  }
  for (int k = 0; 2 * p * k + 2 * p <= n; ++k) {
    const int idx = 2 * k;
    if (idx >= static_cast<int>(lad.UU.size())) break;
    cmp(S, 2 * p * k, lad.UUinv[idx]);
    cmp(Ss, 2 * p * k, lad.UU[idx]);
  }
  // Entries above the L-side staircase vanish (interior columns only).
  auto aboveStairs = [&](const Eigen::MatrixXcd& M, int firstBlock) {
    for (int i = 0; i < n; ++i) {
      // end of the diagonal block containing row i
      int top;
      if (i < firstBlock)
        top = firstBlock;
      else
        top = firstBlock + 2 * q * ((i - firstBlock) / (2 * q) + 1);
      for (int j = top; j < std::min(n, i + q + 1); ++j)
        worst = std::max(worst, std::abs(M(i, j)));
    }
  };
  aboveStairs(R, q);
  aboveStairs(Rs, q);
  aboveStairs(S, 2 * q);
  aboveStairs(Ss, 2 * q);
  return worst;
}

std::vector<Complex> verblunsky(const Context& ctx, int count) {
  if (ctx.q() != 1 || ctx.p() != 1)
    fail(Err::NotScalar, "Verblunsky coefficients need q = p = 1");
  if (ctx.mf.realDefect(2 * count + 2) > 1e-12)
    fail(Err::NotReal, "Verblunsky extraction needs a real measure");
  if (ctx.N < count + 2) fail(Err::MarginTooSmall, "factorization too small");
  // alpha_k = Phi_{k+1}(0): even steps pick up the conjugate of the
  // subdiagonal entry, odd steps the entry itself (cross-checked against
  // the monic orthogonal-polynomial oracle).
  std::vector<Complex> alpha(count);
  const Eigen::MatrixXcd& L = ctx.left.unitLower;
  for (int k = 0; k < count; ++k) {
    const Complex lk = L(k + 1, k);
    alpha[k] = (k % 2 == 0) ? std::conj(lk) : lk;
  }
  return alpha;
}

SzegoScalar szegoPhi(const Context& ctx, int count) {
  if (ctx.q() != 1 || ctx.p() != 1)
    fail(Err::NotScalar, "Szego polynomials need q = p = 1");
  if (ctx.B.count < count + 1) fail(Err::MarginTooSmall, "family too short");
  SzegoScalar s;
  s.phi.resize(count + 1);
  s.phiStar.resize(count + 1);
  for (int n = 0; n <= count; ++n) {
    const Laurent& Bn = ctx.B.at(n, 0);
    const int half = n / 2;
    if (n % 2 == 0) {
      s.phi[n] = Bn.shifted(half);
      s.phiStar[n] = Bn.conjReflect().shifted(half);
    } else {
      s.phi[n] = Bn.conjReflect().shifted(half);
      s.phiStar[n] = Bn.shifted(half + 1);
    }
  }
  return s;
}

std::vector<Laurent> monicOpucOracle(const MatrixFunctional& mf, int count) {
  if (mf.q() != 1 || mf.p() != 1) fail(Err::NotScalar, "oracle needs a scalar measure");
  std::vector<Laurent> phi(count + 1);
  phi[0] = Laurent::one();
  // <z^k, z^j> = c_{k-j}; monic Phi_n solves <Phi_n, z^j> = 0, j < n.
  for (int n = 1; n <= count; ++n) {
    Eigen::MatrixXcd G(n, n);
    Eigen::VectorXcd rhs(n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) G(j, k) = mf.at(0, 0).moment(k - j);
      rhs(j) = -mf.at(0, 0).moment(n - j);
    }
    Eigen::VectorXcd x = G.partialPivLu().solve(rhs);
    Laurent p = Laurent::monomial(n, {1.0, 0.0});
    for (int k = 0; k < n; ++k) p.addToCoeff(k, x(k));
    p.prune();
    phi[n] = p;
  }
  return phi;
}

double szegoRecurrenceResidual(const SzegoScalar& s, const std::vector<Complex>& alpha) {
  double worst = 0.0;
  const Laurent z = Laurent::monomial(1, {1.0, 0.0});
  const int steps = std::min(static_cast<int>(alpha.size()),
                             static_cast<int>(s.phi.size()) - 1);
  for (int k = 0; k < steps; ++k) {
    Laurent r1 = s.phi[k + 1] - z * s.phi[k] - alpha[k] * s.phiStar[k];
    Laurent r2 = s.phiStar[k + 1] - std::conj(alpha[k]) * (z * s.phi[k]) - s.phiStar[k];
    worst = std::max({worst, r1.maxAbsCoeff(), r2.maxAbsCoeff()});
  }
  return worst;
}

namespace {

// q x q block of Laurent entries from a column family at block index m.
LaurentMatrix columnBlock(const Family& F, int r, int m) {
  LaurentMatrix M(r, r);
  for (int i = 0; i < r; ++i)
    for (int b = 0; b < r; ++b) M.at(i, b) = F.at(m * r + i, b);
  return M;
}

// p x p block of a row family: entry (a, j) = F_{mp+j}^{(a)}.
LaurentMatrix rowBlock(const Family& F, int r, int m) {
  LaurentMatrix M(r, r);
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < r; ++j) M.at(a, j) = F.at(m * r + j, a);
  return M;
}

LaurentMatrix leftMul(const Eigen::MatrixXcd& C, const LaurentMatrix& M) {
  LaurentMatrix R(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j)
      for (int k = 0; k < M.rows; ++k)
        R.at(i, j) = R.at(i, j) + M.at(k, j) * C(i, k);
  return R;
}

LaurentMatrix rightMul(const LaurentMatrix& M, const Eigen::MatrixXcd& C) {
  LaurentMatrix R(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j)
      for (int k = 0; k < M.cols; ++k)
        R.at(i, j) = R.at(i, j) + M.at(i, k) * C(k, j);
  return R;
}

LaurentMatrix shiftAll(const LaurentMatrix& M, int s) {
  LaurentMatrix R(M.rows, M.cols);
  for (int i = 0; i < M.rows * M.cols; ++i) R.entries[i] = M.entries[i].shifted(s);
  return R;
}

}  // namespace

SzegoBlocks szegoBlockPolynomials(const Context& ctx, int blockCount) {
  const int q = ctx.q(), p = ctx.p();
  BlockLadder lad = blockLadder(ctx);
  if (2 * blockCount + 2 > static_cast<int>(lad.Ldiag.size()) ||
      2 * blockCount + 2 > static_cast<int>(lad.Ubdiag.size()))
    fail(Err::MarginTooSmall, "factorization too small for requested blocks");
  SzegoBlocks out;
  // The dual families enter with conjugated coefficients (Abar and Ascrbar):
  // that pairs each block with the matching triangular normalizer, which is
  // what makes the leading (or constant) coefficient the identity.
  Family Abar = ctx.A.conjCoeffs();
  Family AscrBar = ctx.Ascr.conjCoeffs();
  for (int m = 0; m < blockCount; ++m) {
    out.Q.push_back(shiftAll(leftMul(inv(lad.Ldiag[2 * m]), columnBlock(ctx.B, q, 2 * m)), m));
    out.Qstar.push_back(shiftAll(
        leftMul(inv(lad.Lbdiag[2 * m + 1]), columnBlock(AscrBar, q, 2 * m + 1)), m + 1));
    out.P.push_back(shiftAll(rightMul(rowBlock(Abar, p, 2 * m), inv(lad.Ubdiag[2 * m])), m));
    out.Pstar.push_back(shiftAll(
        rightMul(rowBlock(ctx.Bscr, p, 2 * m + 1), inv(lad.Usdiag[2 * m + 1])), m + 1));
    out.Qscr.push_back(
        shiftAll(rightMul(rowBlock(ctx.Bscr, p, 2 * m), inv(lad.Usdiag[2 * m])), m));
    out.QscrStar.push_back(shiftAll(
        rightMul(rowBlock(Abar, p, 2 * m + 1), inv(lad.Ubdiag[2 * m + 1])), m + 1));
    out.Pscr.push_back(shiftAll(
        leftMul(inv(lad.Lbdiag[2 * m]), columnBlock(AscrBar, q, 2 * m)), m));
    out.PscrStar.push_back(
        shiftAll(leftMul(inv(lad.Ldiag[2 * m + 1]), columnBlock(ctx.B, q, 2 * m + 1)),
                 m + 1));
  }
  return out;
}

double TwoMeasureReport::worst() const {
  return std::max({blockDiagonal, blockContents, recurrences, uConsistency});
}

TwoMeasureReport twoMeasureRecurrenceCheck(const Context& ctx, int pairs,
                                           const std::vector<Complex>& zs) {
  if (ctx.q() != 1 || ctx.p() != 2)
    fail(Err::ShapeMismatch, "two-measure recurrences need q = 1, p = 2");
  if (ctx.mf.realDefect(2 * ctx.N / 3) > 1e-12)
    fail(Err::NotReal, "two-measure recurrences need real measures");

  const int n = 4 * pairs + 8;
  SzegoPack sz = szegoMatrices(ctx, n);
  BlockLadder lad = blockLadder(ctx);
  const Eigen::MatrixXcd S = sz.S.toDense();

  TwoMeasureReport rep{0.0, 0.0, 0.0, 0.0};

  // S is block diagonal with 4x4 blocks tiling [4k, 4k+4).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i / 4 != j / 4) rep.blockDiagonal = std::max(rep.blockDiagonal, std::abs(S(i, j)));

  // Block contents: [[LLinv[4k], 0], [X_k, LLinv[4k+2]]] with
  // X_k = Ubar_{2k+1}^{-1} Usc_{2k}, i.e. the whole block is UUinv[2k].
  for (int k = 0; k < pairs; ++k) {
    if (4 * k + 4 > n || 2 * k >= static_cast<int>(lad.UUinv.size())) break;
    rep.blockContents = std::max(
        rep.blockContents,
        (S.block(4 * k, 4 * k, 4, 4) - lad.UUinv[2 * k]).cwiseAbs().maxCoeff());
    rep.blockContents =
        std::max(rep.blockContents,
                 (S.block(4 * k, 4 * k, 2, 2) - lad.LLinv[4 * k]).cwiseAbs().maxCoeff());
    rep.blockContents = std::max(
        rep.blockContents,
        (S.block(4 * k + 2, 4 * k + 2, 2, 2) - lad.LLinv[4 * k + 2]).cwiseAbs().maxCoeff());
  }

  // Real case: conj(B) plays the role of the right family.
  Family Bb = ctx.B.conjCoeffs();
  Family Ab = ctx.A.conjCoeffs();
  for (Complex z : zs) {
    const Complex zi = Complex(1.0, 0.0) / z;
    for (int k = 0; k < pairs; ++k) {
      Eigen::Vector2cd Bz, Bz2, Bbzi, Bbzi2;
      Bz << ctx.B.eval(4 * k, 0, z), ctx.B.eval(4 * k + 1, 0, z);
      Bz2 << ctx.B.eval(4 * k + 2, 0, z), ctx.B.eval(4 * k + 3, 0, z);
      Bbzi << Bb.eval(4 * k, 0, zi), Bb.eval(4 * k + 1, 0, zi);
      Bbzi2 << Bb.eval(4 * k + 2, 0, zi), Bb.eval(4 * k + 3, 0, zi);
      const Eigen::MatrixXcd X =
          lad.Ubdiag[2 * k + 1].triangularView<Eigen::Upper>().solve(lad.Usdiag[2 * k]);
      Eigen::Vector2cd r1 = lad.LLinv[4 * k] * Bbzi - z * Bz;
      Eigen::Vector2cd r2 = X * Bbzi + lad.LLinv[4 * k + 2] * Bbzi2 - z * Bz2;
      rep.recurrences = std::max({rep.recurrences, r1.cwiseAbs().maxCoeff(),
                                  r2.cwiseAbs().maxCoeff()});

      Eigen::Matrix2cd Az, Az2, Abzi, Abzi2;
      for (int a = 0; a < 2; ++a) {
        Az(a, 0) = ctx.A.eval(4 * k, a, z);
        Az(a, 1) = ctx.A.eval(4 * k + 1, a, z);
        Az2(a, 0) = ctx.A.eval(4 * k + 2, a, z);
        Az2(a, 1) = ctx.A.eval(4 * k + 3, a, z);
        Abzi(a, 0) = Ab.eval(4 * k, a, zi);
        Abzi(a, 1) = Ab.eval(4 * k + 1, a, zi);
        Abzi2(a, 0) = Ab.eval(4 * k + 2, a, zi);
        Abzi2(a, 1) = Ab.eval(4 * k + 3, a, zi);
      }
      Eigen::Matrix2cd r3 = Abzi * lad.LLinv[4 * k] + Abzi2 * X - z * Az;
      Eigen::Matrix2cd r4 = Abzi2 * lad.LLinv[4 * k + 2] - z * Az2;
      rep.recurrences = std::max({rep.recurrences, r3.cwiseAbs().maxCoeff(),
                                  r4.cwiseAbs().maxCoeff()});
    }
  }

  // Superdiagonal ladder blocks of the two upper factors, read off the
  // staircase: ubar_{2k} = -Ubar_{2k} LLinv[4k] Usc_{2k}^{-1} and
  // usc_{2k} = Ubar_{2k+1} LLinv[4k+2] Usc_{2k+1}^{-1}; for real measures
  // these are two routes to the same block of U.
  for (int k = 0; k < pairs; ++k) {
    if (4 * k + 2 >= static_cast<int>(lad.LLinv.size()) ||
        2 * k >= static_cast<int>(lad.ubsup.size()) ||
        2 * k >= static_cast<int>(lad.ussup.size()))
      break;
    const Eigen::MatrixXcd e1 =
        -lad.Ubdiag[2 * k] * lad.LLinv[4 * k] * inv(lad.Usdiag[2 * k]);
    const Eigen::MatrixXcd e2 =
        lad.Ubdiag[2 * k + 1] * lad.LLinv[4 * k + 2] * inv(lad.Usdiag[2 * k + 1]);
    rep.uConsistency =
        std::max({rep.uConsistency, (e1 - lad.ubsup[2 * k]).cwiseAbs().maxCoeff(),
                  (e2 - lad.ussup[2 * k]).cwiseAbs().maxCoeff(),
                  (e1.conjugate() - lad.ussup[2 * k]).cwiseAbs().maxCoeff()});
  }
  return rep;
}

}  // namespace cmv
