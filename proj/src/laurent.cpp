#include "cmvmix/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

Laurent::Laurent(Complex constant) {
  if (std::abs(constant) != 0.0) coeffs_[0] = constant;
}

Laurent Laurent::monomial(int k, Complex c) {
  Laurent p;
  if (std::abs(c) != 0.0) p.coeffs_[k] = c;
  return p;
}

Complex Laurent::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

void Laurent::setCoeff(int k, Complex c) {
  if (std::abs(c) == 0.0)
    coeffs_.erase(k);
  else
    coeffs_[k] = c;
}

void Laurent::addToCoeff(int k, Complex c) {
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    if (std::abs(c) != 0.0) coeffs_[k] = c;
    return;
  }
  it->second += c;
  if (std::abs(it->second) == 0.0) coeffs_.erase(it);
}

double Laurent::maxAbsCoeff() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void Laurent::prune() {
  const double cut = kRelTol * maxAbsCoeff();
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= cut)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [k, c] : o.coeffs_) r.addToCoeff(k, c);
  r.prune();
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [k, c] : o.coeffs_) r.addToCoeff(k, -c);
  r.prune();
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& [k1, c1] : coeffs_)
    for (const auto& [k2, c2] : o.coeffs_) r.addToCoeff(k1 + k2, c1 * c2);
  r.prune();
  return r;
}

Laurent Laurent::operator*(Complex s) const {
  Laurent r;
  if (std::abs(s) == 0.0) return r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[k] = c * s;
  return r;
}

Laurent Laurent::operator-() const { return *this * Complex(-1.0, 0.0); }

Laurent Laurent::shifted(int s) const {
  Laurent r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[k + s] = c;
  return r;
}

Laurent Laurent::conjReflect() const {
  Laurent r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[-k] = std::conj(c);
  return r;
}

Laurent Laurent::reflect() const {
  Laurent r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[-k] = c;
  return r;
}

Laurent Laurent::conjCoeffs() const {
  Laurent r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[k] = std::conj(c);
  return r;
}

Complex Laurent::evaluate(Complex z) const {
  if (coeffs_.empty()) return {0.0, 0.0};
  if (std::abs(z) == 0.0 && degMinus() < 0)
    fail(Err::ZeroArgument, "evaluation at z = 0 with negative exponents");

  // Nonnegative part by ascending-exponent Horner, negative part by
  // descending-exponent Horner in 1/z.
  Complex pos(0.0, 0.0);
  int prevK = -1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend() && it->first >= 0; ++it) {
    if (prevK < 0) {
      pos = it->second;
      prevK = it->first;
      continue;
    }
    for (int s = 0; s < prevK - it->first; ++s) pos *= z;
    pos += it->second;
    prevK = it->first;
  }
  if (prevK > 0)
    for (int s = 0; s < prevK; ++s) pos *= z;
  if (prevK < 0) pos = Complex(0.0, 0.0);

  Complex neg(0.0, 0.0);
  const Complex w = (degMinus() < 0) ? Complex(1.0, 0.0) / z : Complex(0.0, 0.0);
  int prevM = 0;
  for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first < 0; ++it) {
    // walk ascending exponents, i.e. descending powers of w
    if (prevM == 0) {
      neg = it->second;
      prevM = -it->first;
      continue;
    }
    for (int s = 0; s < prevM + it->first; ++s) neg *= w;
    neg += it->second;
    prevM = -it->first;
  }
  if (prevM > 0)
    for (int s = 0; s < prevM; ++s) neg *= w;

  return pos + neg;
}

bool Laurent::approxEqual(const Laurent& o, double tol) const {
  Laurent d = *this - o;
  return d.maxAbsCoeff() <= tol;
}

Laurent dividedDifference(const Laurent& p, Complex z0) {
  // (z0^k - x^k)/(z0 - x), summed over monomials of p:
  //   k > 0:  sum_{m=0}^{k-1} z0^{k-1-m} x^m
  //   k < 0: -sum_{j=k}^{-1}  z0^{k-1-j} x^j
  Laurent q;
  for (const auto& [k, c] : p.coeffs()) {
    if (k > 0) {
      Complex zp(1.0, 0.0);  // z0^{k-1-m}, starting at m = k-1
      for (int m = k - 1; m >= 0; --m) {
        q.addToCoeff(m, c * zp);
        zp *= z0;
      }
    } else if (k < 0) {
      if (std::abs(z0) == 0.0)
        fail(Err::ZeroArgument, "divided difference at z0 = 0 with negative exponents");
      Complex zp = std::pow(z0, k);  // z0^{k-1-j}, starting at j = -1
      for (int j = -1; j >= k; --j) {
        q.addToCoeff(j, -c * zp);
        zp *= z0;
      }
    }
  }
  q.prune();
  return q;
}

Laurent fromRoots(Complex c, const std::vector<Complex>& roots, int shift) {
  Laurent p(c);
  for (Complex r : roots) {
    Laurent lin = Laurent::monomial(1, {1.0, 0.0});
    lin.addToCoeff(0, -r);
    p = p * lin;
  }
  return p.shifted(shift);
}

}  // namespace cmv
