#include "cmvmix/transforms.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"
#include "cmvmix/secondkind.hpp"

namespace cmv {

namespace {
constexpr double kCircleGap = 1e-6;
constexpr double kRootMatch = 1e-12;
}  // namespace

BalancedLaurent makeBalanced(Complex leading, std::vector<Complex> roots) {
  if (roots.empty() || roots.size() % 2 != 0)
    fail(Err::ShapeMismatch, "balanced Laurent polynomial needs 2d roots");
  if (std::abs(leading) == 0.0) fail(Err::ZeroArgument, "zero leading coefficient");
  for (size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(roots[i]) == 0.0) fail(Err::ZeroArgument, "root at the origin");
    if (std::abs(std::abs(roots[i]) - 1.0) < kCircleGap)
      fail(Err::OnCircleRoot, "perturbation root on the unit circle");
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < kRootMatch)
        fail(Err::ShapeMismatch, "repeated perturbation root");
  }
  BalancedLaurent w;
  w.leading = leading;
  w.roots = std::move(roots);
  w.d = static_cast<int>(w.roots.size()) / 2;
  w.expanded = fromRoots(leading, w.roots, -w.d);
  return w;
}

Perturbation makePerturbation(std::vector<BalancedLaurent> entries) {
  if (entries.empty()) fail(Err::ShapeMismatch, "empty perturbation");
  Perturbation W;
  W.d = entries[0].d;
  for (const auto& e : entries)
    if (e.d != W.d) fail(Err::ShapeMismatch, "perturbation degrees differ across rows");
  for (size_t b = 0; b < entries.size(); ++b)
    for (size_t b2 = b + 1; b2 < entries.size(); ++b2)
      for (Complex r1 : entries[b].roots)
        for (Complex r2 : entries[b2].roots)
          if (std::abs(r1 - r2) < kRootMatch)
            fail(Err::ShapeMismatch, "perturbation roots repeat across rows");
  W.entries = std::move(entries);
  return W;
}

std::vector<Laurent> Perturbation::diag() const {
  std::vector<Laurent> d;
  for (const auto& e : entries) d.push_back(e.expanded);
  return d;
}

Complex Perturbation::rootResidueFactor(int b, int j) const {
  const BalancedLaurent& w = entries[b];
  Complex v = w.leading * std::pow(w.roots[j], -w.d);
  for (int s = 0; s < 2 * w.d; ++s)
    if (s != j) v *= (w.roots[j] - w.roots[s]);
  return v;
}

Complex quasiDeterminant(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                         const Eigen::RowVectorXcd& c, Complex d, double* conditionOut) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  if (!lu.isInvertible()) fail(Err::SingularBlock, "singular block in quasi-determinant");
  Eigen::VectorXcd x = lu.solve(b);
  if (conditionOut) {
    const double na = A.cwiseAbs().maxCoeff();
    const double ni = lu.inverse().cwiseAbs().maxCoeff();
    *conditionOut = na * ni * A.rows();
  }
  return d - (c * x)(0, 0);
}

// ---- Christoffel ---------------------------------------------------------

Eigen::MatrixXcd evalMatrixB(const Family& B, const Perturbation& W, int n) {
  const int q = W.q(), twoD = 2 * W.d;
  const int m = W.bandWidth();
  if (B.components != q) fail(Err::ShapeMismatch, "family does not match perturbation");
  if (B.count < n + m) fail(Err::MarginTooSmall, "family shorter than n + 2dq");
  Eigen::MatrixXcd E(m, m);
  for (int r = 0; r < m; ++r)
    for (int b = 0; b < q; ++b)
      for (int j = 0; j < twoD; ++j)
        E(r, b * twoD + j) = B.eval(n + r, b, W.root(b, j));
  return E;
}

Connector christoffelConnector(const Family& B, const Perturbation& W, int rows) {
  const int m = W.bandWidth();
  const int q = W.q(), twoD = 2 * W.d;
  if (B.count < rows + m) fail(Err::MarginTooSmall, "family shorter than rows + 2dq");
  Connector con;
  con.N = Eigen::MatrixXcd::Zero(rows, rows + m);
  con.conditions.resize(rows);
  for (int i = 0; i < rows; ++i) {
    Eigen::MatrixXcd E = evalMatrixB(B, W, i);
    Eigen::RowVectorXcd rhs(m);
    for (int b = 0; b < q; ++b)
      for (int j = 0; j < twoD; ++j)
        rhs(b * twoD + j) = -B.eval(i + m, b, W.root(b, j));
    // row * E = rhs  =>  E^T row^T = rhs^T
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(E.transpose());
    if (!lu.isInvertible())
      fail(Err::SingularEvaluationMatrix, "inadmissible root configuration", i);
    Eigen::RowVectorXcd row = lu.solve(rhs.transpose()).transpose();
    con.conditions[i] =
        E.cwiseAbs().maxCoeff() * lu.inverse().cwiseAbs().maxCoeff() * m;
    for (int j = 0; j < m; ++j) con.N(i, i + j) = row(j);
    con.N(i, i + m) = Complex(1.0, 0.0);  // Ntilde normalization
  }
  return con;
}

Eigen::MatrixXcd christoffelConnectorDirect(const GaussFactors& hatLeft,
                                            const GaussFactors& left) {
  // N_C = Uhat^{-1} U with U = conj(Ubar); both routes are upper triangular,
  // so the truncated product is exact.
  const Eigen::MatrixXcd Uhat = hatLeft.upper.conjugate();
  const Eigen::MatrixXcd U = left.upper.conjugate();
  return Uhat.triangularView<Eigen::Upper>().solve(U);
}

namespace {

// Wop = sum_b W_b(Upsilon^{(b)}): dense realization of the diagonal
// multiplier on the CMV module, exact on columns j with j + 2dq < N.
Eigen::MatrixXcd wOperator(const Perturbation& W, int q, int N) {
  Eigen::MatrixXcd Wop = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    const int b = j % q, l = j / q;
    const int e = cmvExponent(l);
    for (const auto& [k, c] : W.W(b).coeffs()) {
      const int et = e + k;
      const int lt = (et == 0) ? 0 : (et > 0 ? 2 * et : -2 * et - 1);
      const int i = lt * q + b;
      if (i >= 0 && i < N) Wop(i, j) += c;
    }
  }
  return Wop;
}

}  // namespace

double christoffelConnectorCross(const Eigen::MatrixXcd& Nc, const GaussFactors& hatLeft,
                                 const GaussFactors& left, const Perturbation& W) {
  const int N = left.size();
  const int q = W.q();
  const int m = W.bandWidth();
  Eigen::MatrixXcd Wop = wOperator(W, q, N);
  Eigen::MatrixXcd X = hatLeft.unitLower * Wop;
  Eigen::MatrixXcd N2 = left.unitLower.transpose()
                            .triangularView<Eigen::Upper>()
                            .solve(X.transpose())
                            .transpose();
  const int w = N - m;
  return (Nc.topLeftCorner(w, w) - N2.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

Complex christoffelBHat(const Family& B, const Perturbation& W, int n, int b, Complex z) {
  const Complex wz = W.W(b).evaluate(z);
  if (std::abs(wz) < 1e-12) fail(Err::RootOfW, "evaluation point is a root of W_b");
  const int m = W.bandWidth();
  Eigen::MatrixXcd E = evalMatrixB(B, W, n);
  Eigen::VectorXcd col(m);
  for (int r = 0; r < m; ++r) col(r) = B.eval(n + r, b, z);
  Eigen::RowVectorXcd row(m);
  const int q = W.q(), twoD = 2 * W.d;
  for (int bb = 0; bb < q; ++bb)
    for (int j = 0; j < twoD; ++j)
      row(bb * twoD + j) = B.eval(n + m, bb, W.root(bb, j));
  Complex theta;
  try {
    theta = quasiDeterminant(E, col, row, B.eval(n + m, b, z));
  } catch (const Error& e) {
    if (e.code() == Err::SingularBlock)
      fail(Err::SingularEvaluationMatrix, "inadmissible root configuration", n);
    throw;
  }
  return theta / wz;
}

Complex christoffelAHat(const KernelEngine& base, const Family& B, const Perturbation& W,
                        int n, int a, Complex x) {
  const int m = W.bandWidth();
  const int q = W.q(), twoD = 2 * W.d;
  Eigen::RowVectorXcd kappa(m);
  for (int b = 0; b < q; ++b)
    for (int j = 0; j < twoD; ++j)
      kappa(b * twoD + j) = base.plain(n, x, W.root(b, j))(a, b);
  Eigen::MatrixXcd E = evalMatrixB(B, W, n);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(E.transpose());
  if (!lu.isInvertible())
    fail(Err::SingularEvaluationMatrix, "inadmissible root configuration", n);
  Eigen::RowVectorXcd v = lu.solve(kappa.transpose()).transpose();
  return -v(m - 1);
}

double christoffelKernelConnection(const KernelEngine& base, const KernelEngine& hat,
                                   const Eigen::MatrixXcd& Nc, const Context& baseCtx,
                                   const Context& hatCtx, const Perturbation& W, int n,
                                   const std::vector<std::pair<Complex, Complex>>& xy) {
  const int m = W.bandWidth();
  const int p = baseCtx.p(), q = baseCtx.q();
  if (n + m > static_cast<int>(Nc.rows()))
    fail(Err::MarginTooSmall, "connector shorter than n + 2dq");
  double worst = 0.0;
  for (const auto& [x, y] : xy) {
    const Complex xi = Complex(1.0, 0.0) / x;
    Eigen::MatrixXcd K = base.plain(n, x, y);
    Eigen::MatrixXcd Khat = hat.plain(n, x, y);
    // corner term: Ahat rows [n-2dq, n), B columns [n, n+2dq)
    Eigen::MatrixXcd corner = Eigen::MatrixXcd::Zero(p, q);
    for (int r = std::max(0, n - m); r < n; ++r)
      for (int c = n; c <= std::min(r + m, n + m - 1); ++c) {
        const Complex nc = Nc(r, c);
        if (std::abs(nc) == 0.0) continue;
        for (int a = 0; a < p; ++a)
          for (int b = 0; b < q; ++b)
            corner(a, b) += hatCtx.A.eval(r, a, xi) * nc * baseCtx.B.eval(c, b, y);
      }
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < q; ++b) {
        const Complex lhs = W.W(b).evaluate(y) * Khat(a, b);
        const Complex rhs = K(a, b) + corner(a, b);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  }
  return worst;
}

double christoffelTruncatedA(const Eigen::MatrixXcd& Nc, const Context& baseCtx,
                             const Context& hatCtx, int n,
                             const std::vector<Complex>& ws) {
  const int p = baseCtx.p();
  double worst = 0.0;
  for (Complex w : ws)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < p; ++a) {
        Complex s(0.0, 0.0);
        for (int r = 0; r <= j; ++r) {
          const Complex nc = Nc(r, j);
          if (std::abs(nc) != 0.0) s += hatCtx.A.eval(r, a, w) * nc;
        }
        worst = std::max(worst, std::abs(s - baseCtx.A.eval(j, a, w)));
      }
  return worst;
}

// ---- Geronimus -----------------------------------------------------------

GeronimusData geronimusSetup(const MatrixFunctional& baseCheck, const Perturbation& W) {
  if (baseCheck.q() != W.q()) fail(Err::ShapeMismatch, "perturbation rows != measure rows");
  const int twoD = 2 * W.d;
  GeronimusData g;
  g.W = W;
  g.baseCheck = baseCheck;
  g.masses = Eigen::MatrixXcd::Zero(W.q() * twoD, baseCheck.p());
  for (int b = 0; b < baseCheck.q(); ++b)
    for (int a = 0; a < baseCheck.p(); ++a)
      for (const Atom& atom : baseCheck.at(b, a).atoms) {
        int match = -1;
        for (int j = 0; j < twoD; ++j)
          if (std::abs(atom.location - W.root(b, j)) < kRootMatch) match = j;
        if (match < 0)
          fail(Err::AtomNotAtRoot, "atom of the base measure away from the W-roots", b);
        g.masses(b * twoD + match, a) += atom.mass;
      }
  g.induced = baseCheck.scaleRows(W.diag());
  return g;
}

Eigen::MatrixXcd geronimusConnectorDirect(const GaussFactors& left,
                                          const GaussFactors& checkLeft) {
  const Eigen::MatrixXcd U = left.upper.conjugate();
  const Eigen::MatrixXcd Ucheck = checkLeft.upper.conjugate();
  return U.triangularView<Eigen::Upper>().solve(Ucheck);
}

double geronimusConnectorCross(const Eigen::MatrixXcd& Ng, const GaussFactors& left,
                               const GaussFactors& checkLeft, const Perturbation& W) {
  const int N = left.size();
  Eigen::MatrixXcd Wop = wOperator(W, W.q(), N);
  Eigen::MatrixXcd X = left.unitLower * Wop;
  Eigen::MatrixXcd N2 = checkLeft.unitLower.transpose()
                            .triangularView<Eigen::Upper>()
                            .solve(X.transpose())
                            .transpose();
  const int w = N - W.bandWidth();
  return (Ng.topLeftCorner(w, w) - N2.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd fValues(const GeronimusData& g, const Context& baseCtx, int rowCount) {
  const int q = baseCtx.q(), p = baseCtx.p(), twoD = 2 * g.W.d;
  if (baseCtx.A.count < rowCount) fail(Err::MarginTooSmall, "family shorter than F rows");
  Eigen::MatrixXcd F(rowCount, q * twoD);
  for (int b = 0; b < q; ++b)
    for (int j = 0; j < twoD; ++j) {
      const Complex zr = g.W.root(b, j);
      const Complex gamma = g.W.rootResidueFactor(b, j);
      // C-column of the unperturbed measure at this root
      Eigen::MatrixXcd C = cauchyC(baseCtx.mf, baseCtx.A, rowCount, zr);
      const Complex zri = Complex(1.0, 0.0) / zr;
      for (int n = 0; n < rowCount; ++n) {
        Complex v = C(b, n);
        for (int a = 0; a < p; ++a)
          v -= gamma * g.masses(b * twoD + j, a) * baseCtx.A.eval(n, a, zri);
        F(n, b * twoD + j) = v;
      }
    }
  return F;
}

double fVanishingResidual(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Ng,
                          int c0, int c1) {
  const int m = static_cast<int>(F.cols());
  double worst = 0.0;
  for (int c = c0; c < c1; ++c) {
    if (c - m < 0 || c >= static_cast<int>(Ng.cols()) ||
        c >= static_cast<int>(F.rows()))
      fail(Err::ShapeMismatch, "column window outside computed data");
    for (int col = 0; col < m; ++col) {
      Complex s(0.0, 0.0);
      for (int r = c - m; r <= c; ++r) s += F(r, col) * Ng(r, c);
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

Connector geronimusConnectorFromF(const Eigen::MatrixXcd& F, const Perturbation& W,
                                  int c0, int c1) {
  const int m = W.bandWidth();
  Connector con;
  con.N = Eigen::MatrixXcd::Zero(c1, c1);
  con.conditions.assign(c1, 0.0);
  for (int c = c0; c < c1; ++c) {
    if (c - m < 0 || c + 1 > static_cast<int>(F.rows()))
      fail(Err::ShapeMismatch, "column window outside computed F table");
    // rows c-m+1..c unknown, top entry (row c-m) normalized to 1:
    // sum_r F(r,.) N(r,c) = 0.
    Eigen::MatrixXcd A = F.middleRows(c - m + 1, m).transpose();
    Eigen::VectorXcd rhs = -F.row(c - m).transpose();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
    if (!lu.isInvertible()) fail(Err::SingularFWindow, "singular F window", c);
    Eigen::VectorXcd x = lu.solve(rhs);
    con.N(c - m, c) = Complex(1.0, 0.0);
    for (int r = 0; r < m; ++r) con.N(c - m + 1 + r, c) = x(r);
    con.conditions[c] = A.cwiseAbs().maxCoeff() * lu.inverse().cwiseAbs().maxCoeff() * m;
  }
  return con;
}

Complex geronimusAFormula(const Eigen::MatrixXcd& F, const Family& A, int ell, int a,
                          Complex w) {
  const int m = static_cast<int>(F.cols());
  if (ell + m >= static_cast<int>(F.rows()) || ell + m >= A.count)
    fail(Err::MarginTooSmall, "window beyond computed data");
  Eigen::MatrixXcd Fw = F.middleRows(ell, m);
  Eigen::VectorXcd acol(m);
  for (int r = 0; r < m; ++r) acol(r) = A.eval(ell + r, a, w);
  Eigen::RowVectorXcd frow = F.row(ell + m);
  try {
    return quasiDeterminant(Fw, acol, frow, A.eval(ell + m, a, w));
  } catch (const Error& e) {
    if (e.code() == Err::SingularBlock)
      fail(Err::SingularFWindow, "singular F window", ell);
    throw;
  }
}

Eigen::RowVectorXcd geronimusBFormula(const GeronimusData& g, const Context& baseCtx,
                                      const KernelEngine& base,
                                      const Eigen::MatrixXcd& F, int ell, Complex y) {
  const int q = baseCtx.q(), p = baseCtx.p(), twoD = 2 * g.W.d;
  const int m = g.W.bandWidth();
  const int nTrunc = ell + m;
  if (nTrunc > static_cast<int>(F.rows()) || nTrunc > base.nmax())
    fail(Err::MarginTooSmall, "window beyond computed data");

  // Kscript rows (b,j): (K_C W(y))_{b,b'} - sum_a gamma m (K W(y))_{a,b'}
  //                     + deltaW_b(z_{b,j}, y) delta_{b,b'}
  Eigen::MatrixXcd Ks(m, q);
  for (int b = 0; b < q; ++b)
    for (int j = 0; j < twoD; ++j) {
      const Complex zr = g.W.root(b, j);
      const Complex gamma = g.W.rootResidueFactor(b, j);
      Eigen::MatrixXcd KC = kernelCauchyC(baseCtx.mf, baseCtx.A, baseCtx.B, nTrunc, zr, y);
      Eigen::MatrixXcd K = base.plain(nTrunc, zr, y);
      for (int bp = 0; bp < q; ++bp) {
        Complex v = KC(b, bp) * g.W.W(bp).evaluate(y);
        for (int a = 0; a < p; ++a)
          v -= gamma * g.masses(b * twoD + j, a) * K(a, bp) * g.W.W(bp).evaluate(y);
        if (bp == b) v += dividedDifference(g.W.W(b), zr).evaluate(y);
        Ks(b * twoD + j, bp) = v;
      }
    }

  Eigen::MatrixXcd Fw = F.middleRows(ell, m);  // rows n' = ell..ell+2dq-1
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(Fw.transpose());
  if (!lu.isInvertible()) fail(Err::SingularFWindow, "singular F window", ell);
  Eigen::MatrixXcd X = lu.solve(Ks);
  return X.row(0);
}

double GeronimusConnectionReport::worst() const {
  return std::max({relatB, relatA, skfD, skfC, connCCauchy, connDCauchy, connKernel});
}

GeronimusConnectionReport geronimusConnectionResiduals(
    const GeronimusData& g, const Context& baseCtx, const Context& checkCtx,
    const Eigen::MatrixXcd& Ng, int n, const std::vector<Complex>& zs,
    const std::vector<std::pair<Complex, Complex>>& xy) {
  GeronimusConnectionReport rep{0, 0, 0, 0, 0, 0, 0};
  const int q = baseCtx.q(), p = baseCtx.p(), m = g.W.bandWidth();
  if (n + m > baseCtx.N) fail(Err::MarginTooSmall, "need n + 2dq within factorization");

  // N_G Bcheck(z) = B(z) W(z), rows < n; A(z^{-1}) N_G = Acheck(z^{-1}).
  for (Complex z : zs) {
    const Complex zi = Complex(1.0, 0.0) / z;
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < q; ++b) {
        Complex s(0.0, 0.0);
        for (int j = i; j <= i + m && j < baseCtx.N; ++j)
          s += Ng(i, j) * checkCtx.B.eval(j, b, z);
        const Complex rhs = baseCtx.B.eval(i, b, z) * g.W.W(b).evaluate(z);
        rep.relatB = std::max(rep.relatB, std::abs(s - rhs));
      }
    for (int l = 0; l < n; ++l)
      for (int a = 0; a < p; ++a) {
        Complex s(0.0, 0.0);
        for (int r = std::max(0, l - m); r <= l; ++r)
          s += baseCtx.A.eval(r, a, zi) * Ng(r, l);
        rep.relatA = std::max(rep.relatA, std::abs(s - checkCtx.A.eval(l, a, zi)));
      }
  }

  // Cauchy-transform identities at off-circle points.
  for (const auto& [zraw, y] : xy) {
    const Complex z = zraw;
    Eigen::MatrixXcd D = cauchyD(baseCtx.mf, baseCtx.B, n, z);
    Eigen::MatrixXcd Dr = cauchyD(checkCtx.mf, checkCtx.B, n + m, z);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < p; ++a) {
        Complex s(0.0, 0.0);
        for (int j = i; j <= i + m; ++j) s += Ng(i, j) * Dr(j, a);
        rep.skfD = std::max(rep.skfD, std::abs(s - D(i, a)));
      }

    Eigen::MatrixXcd C = cauchyC(baseCtx.mf, baseCtx.A, n + m, z);
    Eigen::MatrixXcd Cr = cauchyC(checkCtx.mf, checkCtx.A, n, z);
    for (int l = 0; l < n; ++l)
      for (int b = 0; b < q; ++b) {
        Complex lhs = g.W.W(b).evaluate(z) * Cr(b, l);
        for (int r = std::max(0, l - m); r <= l; ++r) lhs -= C(b, r) * Ng(r, l);
        Complex rhs(0.0, 0.0);
        const Laurent dw = dividedDifference(g.W.W(b), z);
        for (int a = 0; a < p; ++a)
          rhs += checkCtx.mf.at(b, a).apply(dw * checkCtx.A.at(l, a).reflect());
        rep.skfC = std::max(rep.skfC, std::abs(lhs - rhs));
      }

    Eigen::MatrixXcd KC = kernelCauchyC(baseCtx.mf, baseCtx.A, baseCtx.B, n, z, y);
    Eigen::MatrixXcd KCr = kernelCauchyC(checkCtx.mf, checkCtx.A, checkCtx.B, n, z, y);
    Eigen::MatrixXcd Cn = cauchyC(baseCtx.mf, baseCtx.A, n, z);
    // corner contraction C^{[n]} Ngcorner Bcheckcorner
    Eigen::MatrixXcd cornerCB = Eigen::MatrixXcd::Zero(q, q);
    Eigen::MatrixXcd cornerAD = Eigen::MatrixXcd::Zero(p, p);
    Eigen::MatrixXcd cornerAB = Eigen::MatrixXcd::Zero(p, q);
    const Complex xi = Complex(1.0, 0.0) / z;  // reuse z as the x argument
    for (int r = std::max(0, n - m); r < n; ++r)
      for (int c = n; c <= std::min(r + m, n + m - 1); ++c) {
        const Complex ng = Ng(r, c);
        if (std::abs(ng) == 0.0) continue;
        for (int b = 0; b < q; ++b) {
          for (int bp = 0; bp < q; ++bp)
            cornerCB(b, bp) += Cn(b, r) * ng * checkCtx.B.eval(c, bp, y);
        }
        for (int a = 0; a < p; ++a) {
          for (int ap = 0; ap < p; ++ap)
            cornerAD(a, ap) += baseCtx.A.eval(r, a, xi) * ng * Dr(c, ap);
          for (int bp = 0; bp < q; ++bp)
            cornerAB(a, bp) += baseCtx.A.eval(r, a, xi) * ng * checkCtx.B.eval(c, bp, y);
        }
      }

    for (int b = 0; b < q; ++b)
      for (int bp = 0; bp < q; ++bp) {
        Complex lhs = g.W.W(b).evaluate(z) * KCr(b, bp);
        Complex rhs = KC(b, bp) * g.W.W(bp).evaluate(y) - cornerCB(b, bp);
        if (b == bp) rhs += dividedDifference(g.W.W(b), z).evaluate(y);
        rep.connCCauchy = std::max(rep.connCCauchy, std::abs(lhs - rhs));
      }

    // plain kernel connection at (x, y) — reuse z as x (off-circle is fine)
    for (int a = 0; a < p; ++a)
      for (int bp = 0; bp < q; ++bp) {
        Complex Kc(0.0, 0.0), Kp(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
          Kc += checkCtx.A.eval(k, a, xi) * checkCtx.B.eval(k, bp, y);
          Kp += baseCtx.A.eval(k, a, xi) * baseCtx.B.eval(k, bp, y);
        }
        const Complex lhs = Kc - Kp * g.W.W(bp).evaluate(y);
        rep.connKernel = std::max(rep.connKernel, std::abs(lhs + cornerAB(a, bp)));
      }
  }

  // K_D connection needs two off-circle points; use the xy pairs with both
  // coordinates as (x, cauchy z).
  for (const auto& [x, z] : xy) {
    if (std::abs(std::abs(z) - 1.0) < 1e-6 || std::abs(std::abs(x) - 1.0) < 1e-6) continue;
    Eigen::MatrixXcd KD = kernelCauchyD(baseCtx.mf, baseCtx.A, baseCtx.B, n, x, z);
    Eigen::MatrixXcd KDr = kernelCauchyD(checkCtx.mf, checkCtx.A, checkCtx.B, n, x, z);
    Eigen::MatrixXcd Drm = cauchyD(checkCtx.mf, checkCtx.B, n + m, z);
    const Complex xi = Complex(1.0, 0.0) / x;
    Eigen::MatrixXcd corner = Eigen::MatrixXcd::Zero(p, p);
    for (int r = std::max(0, n - m); r < n; ++r)
      for (int c = n; c <= std::min(r + m, n + m - 1); ++c) {
        const Complex ng = Ng(r, c);
        if (std::abs(ng) == 0.0) continue;
        for (int a = 0; a < p; ++a)
          for (int ap = 0; ap < p; ++ap)
            corner(a, ap) += baseCtx.A.eval(r, a, xi) * ng * Drm(c, ap);
      }
    for (int a = 0; a < p; ++a)
      for (int ap = 0; ap < p; ++ap)
        rep.connDCauchy = std::max(
            rep.connDCauchy, std::abs(KDr(a, ap) - KD(a, ap) + corner(a, ap)));
  }
  return rep;
}

}  // namespace cmv
