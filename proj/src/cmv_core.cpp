#include "cmvmix/cmv_core.hpp"

#include <cmath>
#include <map>

#include "cmvmix/errors.hpp"

namespace cmv {

Eigen::MatrixXcd buildMomentMatrix(const MatrixFunctional& m, int n, Side side) {
  if (n < 1) fail(Err::ShapeMismatch, "truncation size must be >= 1");
  const int q = m.q(), p = m.p();
  // Exponent differences are bounded by the largest block indices involved.
  const int kmax = (n - 1) / q + 1, lmax = (n - 1) / p + 1;
  const int bound = (kmax + 1) / 2 + (lmax + 1) / 2 + 2;
  std::map<int, Eigen::MatrixXcd> mom;
  for (int d = -bound; d <= bound; ++d) mom[d] = m.moment(d);

  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i) {
    const int k = i / q, b = i % q;
    for (int j = 0; j < n; ++j) {
      const int l = j / p, a = j % p;
      const int d = cmvExponent(k) - cmvExponent(l);
      M(i, j) = (side == Side::Left) ? mom[d](b, a) : mom[-d](b, a);
    }
  }
  return M;
}

GaussFactors gaussBorel(const Eigen::MatrixXcd& M, Side side) {
  const int n = static_cast<int>(M.rows());
  Eigen::MatrixXcd A = M;

  // Row scales from the original matrix, for the pivot test.
  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i)
    scale(i) = std::max(M.row(i).cwiseAbs().maxCoeff(), 1e-300);

  // M = Lambda D Upsilon with Lambda unit lower, Upsilon unit upper.
  Eigen::MatrixXcd Lambda = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd Ups = Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd D(n);
  for (int k = 0; k < n; ++k) {
    const Complex piv = A(k, k);
    if (std::abs(piv) < 1e-13 * scale(k))
      fail(Err::SingularMinor, "zero pivot during Gauss-Borel elimination", k);
    D(k) = piv;
    for (int j = k + 1; j < n; ++j) Ups(k, j) = A(k, j) / piv;
    for (int i = k + 1; i < n; ++i) {
      const Complex mult = A(i, k) / piv;
      Lambda(i, k) = mult;
      A.row(i).tail(n - k - 1) -= mult * A.row(k).tail(n - k - 1);
      A(i, k) = Complex(0.0, 0.0);
    }
  }

  GaussFactors f;
  f.side = side;
  // unitLower = Lambda^{-1}, upper = (D Ups)^{-1}, by triangular solves.
  f.unitLower = Lambda.triangularView<Eigen::UnitLower>().solve(
      Eigen::MatrixXcd::Identity(n, n));
  Eigen::MatrixXcd DU = D.asDiagonal() * Ups;
  f.upper = DU.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(n, n));
  return f;
}

double GaussFactors::residual(const Eigen::MatrixXcd& M) const {
  const int n = size();
  Eigen::MatrixXcd R = unitLower * M * upper - Eigen::MatrixXcd::Identity(n, n);
  return R.cwiseAbs().maxCoeff();
}

namespace {

// Column family: entry n, component b gets coefficient coeffs(n, j) on
// z^{e(j/r)} for every j <= n with j = r*k + b.
Family columnFamily(const Eigen::MatrixXcd& lowerCoeffs, int r, FamilyKind kind) {
  const int n = static_cast<int>(lowerCoeffs.rows());
  Family fam;
  fam.kind = kind;
  fam.components = r;
  fam.count = n;
  fam.polys.assign(static_cast<size_t>(n) * r, Laurent());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex c = lowerCoeffs(i, j);
      if (std::abs(c) == 0.0) continue;
      fam.at(i, j % r).addToCoeff(cmvExponent(j / r), c);
    }
  for (Laurent& p : fam.polys) p.prune();
  return fam;
}

// Row family: entry n, component a gets coefficient coeffs(j, n) on
// z^{e(j/r)} for j <= n with j = r*k + a.
Family rowFamily(const Eigen::MatrixXcd& upperCoeffs, int r, FamilyKind kind) {
  const int n = static_cast<int>(upperCoeffs.rows());
  Family fam;
  fam.kind = kind;
  fam.components = r;
  fam.count = n;
  fam.polys.assign(static_cast<size_t>(n) * r, Laurent());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const Complex c = upperCoeffs(i, j);
      if (std::abs(c) == 0.0) continue;
      fam.at(j, i % r).addToCoeff(cmvExponent(i / r), c);
    }
  for (Laurent& p : fam.polys) p.prune();
  return fam;
}

}  // namespace

Family familyB(const GaussFactors& left, int q) {
  return columnFamily(left.unitLower, q, FamilyKind::B);
}

Family familyA(const GaussFactors& left, int p) {
  return rowFamily(left.upper.conjugate(), p, FamilyKind::A);
}

Family familyAscr(const GaussFactors& right, int q) {
  return columnFamily(right.unitLower.conjugate(), q, FamilyKind::Ascr);
}

Family familyBscr(const GaussFactors& right, int p) {
  return rowFamily(right.upper, p, FamilyKind::Bscr);
}

Family Family::conjCoeffs() const {
  Family f = *this;
  for (Laurent& p : f.polys) p = p.conjCoeffs();
  return f;
}

namespace {
// ceil(a / b) for b > 0 and any integer a
int ceilDiv(int a, int b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); }
}  // namespace

std::pair<int, int> degreeBounds(int n, int b, int r) {
  return {ceilDiv(n + 2 - b, 2 * r) - 1, ceilDiv(n + 2 - b - r, 2 * r)};
}

bool attainsDegPlus(int n, int b, int r) { return (n - (b - 1)) % (2 * r) == 0; }

bool attainsDegMinus(int n, int b, int r) { return (n - (r + b - 1)) % (2 * r) == 0; }

Complex biorthPairing(const MatrixFunctional& m, const Laurent& f, const Laurent& g) {
  return m.at(0, 0).apply(f * g.conjReflect());
}

double biorthogonalityResidual(const Family& B, const Family& A,
                               const MatrixFunctional& m, int count) {
  if (B.count < count || A.count < count)
    fail(Err::ShapeMismatch, "families shorter than requested count");
  const int q = m.q(), p = m.p();
  if (B.components != q || A.components != p)
    fail(Err::ShapeMismatch, "family components do not match measure shape");
  double worst = 0.0;
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      Complex s(0.0, 0.0);
      for (int b = 0; b < q; ++b)
        for (int a = 0; a < p; ++a)
          s += m.at(b, a).apply(B.at(i, b) * A.at(j, a).conjReflect());
      if (i == j) s -= Complex(1.0, 0.0);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

}  // namespace cmv
