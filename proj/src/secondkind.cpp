#include "cmvmix/secondkind.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

namespace {

constexpr double kCircleGap = 1e-6;

void checkPoint(const ScalarFunctional& mu, Complex z) {
  if (std::abs(std::abs(z) - 1.0) < kCircleGap)
    fail(Err::OnCircle, "Cauchy transform needs |z| away from the unit circle");
  for (const Atom& a : mu.atoms)
    if (std::abs(z - a.location) < kCircleGap)
      fail(Err::AtAtom, "Cauchy transform at an atom location");
}

// oint x^k w(x)/(z-x) dx/(2 pi i x), summed over the coefficients of h = g*w:
//   |z| > 1:  sum_{k<=0} h_k z^{k-1}
//   |z| < 1: -sum_{k>=1} h_k z^{k-1}
Complex cauchyAc(const Laurent& h, Complex z) {
  Complex v(0.0, 0.0);
  if (std::abs(z) > 1.0) {
    for (const auto& [k, c] : h.coeffs())
      if (k <= 0) v += c * std::pow(z, k - 1);
  } else {
    for (const auto& [k, c] : h.coeffs())
      if (k >= 1) v -= c * std::pow(z, k - 1);
  }
  return v;
}

}  // namespace

Complex cauchyApply(const ScalarFunctional& mu, const Laurent& h, Complex z) {
  checkPoint(mu, z);
  Complex v = cauchyAc(mu.ac * h, z);
  for (const Atom& a : mu.atoms) v += a.mass * h.evaluate(a.location) / (z - a.location);
  return v;
}

Complex cauchyApplyByMoments(const ScalarFunctional& mu, const Laurent& h, Complex z) {
  checkPoint(mu, z);
  Complex v(0.0, 0.0);
  const bool outside = std::abs(z) > 1.0;
  for (const auto& [k, c] : h.coeffs()) {
    // a.c. part: finite tail of sum_m c^{ac}_{k+-(m)} z^{...}
    if (outside) {
      // sum_{m>=0} c^{ac}_{k+m} z^{-m-1}; nonzero only while k+m <= deg+ of w reflected
      for (int m = 0; k + m <= -mu.ac.degMinus(); ++m)
        v += c * mu.ac.coeff(-(k + m)) * std::pow(z, -m - 1);
    } else {
      for (int m = 0; -(k - 1 - m) <= mu.ac.degPlus(); ++m)
        v -= c * mu.ac.coeff(-(k - 1 - m)) * std::pow(z, m);
    }
    // atoms: geometric tails close to x^k/(z - x) evaluated at the location
    for (const Atom& a : mu.atoms) v += c * a.mass * std::pow(a.location, k) / (z - a.location);
  }
  return v;
}

Eigen::MatrixXcd cauchyC(const MatrixFunctional& m, const Family& A, int n, Complex z) {
  if (A.count < n) fail(Err::MarginTooSmall, "family shorter than truncation");
  Eigen::MatrixXcd C(m.q(), n);
  for (int b = 0; b < m.q(); ++b)
    for (int k = 0; k < n; ++k) {
      Complex s(0.0, 0.0);
      for (int a = 0; a < m.p(); ++a)
        s += cauchyApply(m.at(b, a), A.at(k, a).reflect(), z);
      C(b, k) = s;
    }
  return C;
}

Eigen::MatrixXcd cauchyD(const MatrixFunctional& m, const Family& B, int n, Complex z) {
  if (B.count < n) fail(Err::MarginTooSmall, "family shorter than truncation");
  Eigen::MatrixXcd D(n, m.p());
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < m.p(); ++a) {
      Complex s(0.0, 0.0);
      for (int b = 0; b < m.q(); ++b) s += cauchyApply(m.at(b, a), B.at(k, b), z);
      D(k, a) = s;
    }
  return D;
}

Eigen::MatrixXcd kernelCauchyC(const MatrixFunctional& m, const Family& A,
                               const Family& B, int n, Complex z, Complex y) {
  Eigen::MatrixXcd C = cauchyC(m, A, n, z);
  Eigen::MatrixXcd By(n, m.q());
  for (int k = 0; k < n; ++k)
    for (int b = 0; b < m.q(); ++b) By(k, b) = B.eval(k, b, y);
  return C * By;
}

Eigen::MatrixXcd kernelCauchyD(const MatrixFunctional& m, const Family& A,
                               const Family& B, int n, Complex x, Complex z) {
  Eigen::MatrixXcd D = cauchyD(m, B, n, z);
  const Complex xi = Complex(1.0, 0.0) / x;
  Eigen::MatrixXcd Ax(m.p(), n);
  for (int a = 0; a < m.p(); ++a)
    for (int k = 0; k < n; ++k) Ax(a, k) = A.eval(k, a, xi);
  return Ax * D;
}

}  // namespace cmv
