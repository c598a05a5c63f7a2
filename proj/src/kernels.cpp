#include "cmvmix/kernels.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

namespace {

Eigen::MatrixXcd solveLowerRight(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& G) {
  return G.transpose().triangularView<Eigen::Upper>().solve(X.transpose()).transpose();
}

void requireNonzero(Complex z, const char* what) {
  if (std::abs(z) == 0.0) fail(Err::ZeroArgument, what);
}

}  // namespace

KernelEngine::KernelEngine(const Context& ctx, int nmax)
    : ctx_(ctx), p_(ctx.p()), q_(ctx.q()), nmax_(nmax) {
  if (ctx.N < nmax + 2 * (p_ + q_))
    fail(Err::MarginTooSmall, "kernel engine needs margin 2(p+q)");
  Abar_ = ctx.A.conjCoeffs();
  const Eigen::MatrixXcd Uq = upsilon(q_, ctx.N).toDense();
  Tfull_ = solveLowerRight(ctx.left.unitLower * Uq, ctx.left.unitLower);

  // Gram(i,j) = sum_{b,a} <mu_{b,a}, B_i^{(b)} * Abar_j^{(a)}(.^{-1})>,
  // assembled as small dense contractions over the finite exponent grid.
  gram_ = Eigen::MatrixXcd::Zero(nmax, nmax);
  int emin = 0, emax = 0;
  auto widen = [&](const Laurent& l) {
    if (l.isZero()) return;
    emin = std::min(emin, l.degMinus());
    emax = std::max(emax, l.degPlus());
  };
  for (int k = 0; k < nmax; ++k) {
    for (int b = 0; b < q_; ++b) widen(ctx.B.at(k, b));
    for (int a = 0; a < p_; ++a) widen(Abar_.at(k, a).reflect());
  }
  const int width = emax - emin + 1;
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) {
      const ScalarFunctional& mu = ctx.mf.at(b, a);
      Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(nmax, width);
      Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(nmax, width);
      for (int k = 0; k < nmax; ++k) {
        for (const auto& [e, c] : ctx.B.at(k, b).coeffs()) P(k, e - emin) = c;
        const Laurent ar = Abar_.at(k, a).reflect();
        for (const auto& [e, c] : ar.coeffs()) Q(k, e - emin) = c;
      }
      Eigen::MatrixXcd W(width, width);
      for (int s = 0; s < width; ++s)
        for (int t = 0; t < width; ++t)
          W(s, t) = mu.ac.coeff(-(s + emin) - (t + emin));
      gram_ += P * W * Q.transpose();
      for (const Atom& atom : mu.atoms) {
        Eigen::VectorXcd u(nmax), v(nmax);
        for (int k = 0; k < nmax; ++k) {
          u(k) = ctx.B.eval(k, b, atom.location);
          v(k) = Abar_.at(k, a).reflect().evaluate(atom.location);
        }
        gram_ += atom.mass * u * v.transpose();
      }
    }
}

Eigen::MatrixXcd KernelEngine::direct(int n, Complex x, Complex y) const {
  requireNonzero(x, "kernel at x = 0");
  requireNonzero(y, "kernel at y = 0");
  const Complex xi = Complex(1.0, 0.0) / x;
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(p_, q_);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < p_; ++a) {
      const Complex av = Abar_.eval(k, a, xi);
      if (av == Complex(0.0, 0.0)) continue;
      for (int b = 0; b < q_; ++b) K(a, b) += av * ctx_.B.eval(k, b, y);
    }
  return K;
}

Eigen::MatrixXcd KernelEngine::plain(int n, Complex x, Complex y) const {
  requireNonzero(x, "kernel at x = 0");
  requireNonzero(y, "kernel at y = 0");
  const Complex xi = Complex(1.0, 0.0) / x;
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(p_, q_);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < p_; ++a) {
      const Complex av = ctx_.A.eval(k, a, xi);
      if (av == Complex(0.0, 0.0)) continue;
      for (int b = 0; b < q_; ++b) K(a, b) += av * ctx_.B.eval(k, b, y);
    }
  return K;
}

Eigen::MatrixXcd KernelEngine::cdFormula(int n, Complex x, Complex y) const {
  requireNonzero(x, "kernel at x = 0");
  requireNonzero(y, "kernel at y = 0");
  if (n > nmax_) fail(Err::MarginTooSmall, "truncation beyond engine size");
  if (std::abs(x - y) < 1e-12)
    fail(Err::PoleAtDiagonal, "CD formula pole at x = y; use the direct sum");
  const Complex xi = Complex(1.0, 0.0) / x;

  Eigen::MatrixXcd term1 = Eigen::MatrixXcd::Zero(p_, q_);
  for (int i = n; i < n + 2 * p_; ++i)
    for (int j = std::max(0, n - 2 * p_); j < n; ++j) {
      const Complex t = Tfull_(i, j);
      if (std::abs(t) == 0.0) continue;
      for (int a = 0; a < p_; ++a)
        for (int b = 0; b < q_; ++b)
          term1(a, b) += Abar_.eval(i, a, xi) * t * ctx_.B.eval(j, b, y);
    }
  Eigen::MatrixXcd term2 = Eigen::MatrixXcd::Zero(p_, q_);
  for (int i = std::max(0, n - 2 * q_); i < n; ++i)
    for (int j = n; j < n + 2 * q_; ++j) {
      const Complex t = Tfull_(i, j);
      if (std::abs(t) == 0.0) continue;
      for (int a = 0; a < p_; ++a)
        for (int b = 0; b < q_; ++b)
          term2(a, b) += Abar_.eval(i, a, xi) * t * ctx_.B.eval(j, b, y);
    }
  return (term1 - term2) / (x - y);
}

Eigen::MatrixXcd KernelEngine::abc(int n, Complex x, Complex y) const {
  requireNonzero(x, "kernel at x = 0");
  requireNonzero(y, "kernel at y = 0");
  if (n > ctx_.N) fail(Err::MarginTooSmall, "truncation beyond factorization");
  const Complex xi = Complex(1.0, 0.0) / x;
  // (M^{[n]})^{-1} = Ubar^{[n]} L^{[n]}: truncate the factors, then multiply.
  Eigen::MatrixXcd Minv =
      ctx_.left.upper.topLeftCorner(n, n) * ctx_.left.unitLower.topLeftCorner(n, n);
  // Z_p(x^{-1}) columns per component a; Z_q(y) columns per component b.
  Eigen::MatrixXcd Zx = Eigen::MatrixXcd::Zero(n, p_);
  for (int j = 0; j < n; ++j)
    Zx(j, j % p_) = std::pow(xi, cmvExponent(j / p_));
  Eigen::MatrixXcd Zy = Eigen::MatrixXcd::Zero(n, q_);
  for (int j = 0; j < n; ++j)
    Zy(j, j % q_) = std::pow(y, cmvExponent(j / q_));
  return Zx.transpose() * Minv * Zy;
}

double KernelEngine::reproducingResidual(
    int n, const std::vector<std::pair<Complex, Complex>>& xz) const {
  if (n > nmax_) fail(Err::MarginTooSmall, "truncation beyond engine size");
  double worst = 0.0;
  for (const auto& [x, z] : xz) {
    const Complex xi = Complex(1.0, 0.0) / x;
    Eigen::MatrixXcd Ax(p_, n), Bz(n, q_);
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < p_; ++a) Ax(a, k) = Abar_.eval(k, a, xi);
      for (int b = 0; b < q_; ++b) Bz(k, b) = ctx_.B.eval(k, b, z);
    }
    // oint K(x,y) dmu(y) K(y,z) = Ax * Gram * Bz, computed exactly.
    Eigen::MatrixXcd lhs = Ax * gram_.topLeftCorner(n, n) * Bz;
    Eigen::MatrixXcd rhs = Ax * Bz;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cmv
