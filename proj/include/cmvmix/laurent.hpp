#pragma once

#include <complex>
#include <map>
#include <vector>

namespace cmv {

using Complex = std::complex<double>;

// Laurent polynomial sum_k c_k z^k with finitely many nonzero complex
// coefficients, stored sparsely by exponent. Immutable in spirit: all
// arithmetic returns new values, so instances can be shared freely.
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(Complex constant);
  // Single monomial c z^k.
  static Laurent monomial(int k, Complex c);
  static Laurent one() { return Laurent(Complex(1.0, 0.0)); }

  bool isZero() const { return coeffs_.empty(); }
  int degPlus() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  int degMinus() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }

  Complex coeff(int k) const;
  void setCoeff(int k, Complex c);
  void addToCoeff(int k, Complex c);
  const std::map<int, Complex>& coeffs() const { return coeffs_; }

  // Drops coefficients below kRelTol times the largest magnitude so that
  // degree metadata stays meaningful under floating-point noise.
  void prune();

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator*(Complex s) const;
  Laurent operator-() const;

  // z^s * p(z)
  Laurent shifted(int s) const;
  // p(z) -> pbar(z^{-1}): coefficient at k moves, conjugated, to -k.
  Laurent conjReflect() const;
  // p(z) -> p(z^{-1}) without conjugation.
  Laurent reflect() const;
  Laurent conjCoeffs() const;

  // Horner evaluation split over nonnegative and negative exponents.
  // Throws ZeroArgument for z = 0 when negative exponents are present.
  Complex evaluate(Complex z) const;

  double maxAbsCoeff() const;

  bool approxEqual(const Laurent& o, double tol) const;

  static constexpr double kRelTol = 1e-14;

 private:
  std::map<int, Complex> coeffs_;
};

inline Laurent operator*(Complex s, const Laurent& p) { return p * s; }

// q(x) with p(z0) - p(x) = (z0 - x) q(x), exact in coefficients.
// For balanced degrees (d, -d) the result has degrees (d-1, -d).
Laurent dividedDifference(const Laurent& p, Complex z0);

// c * prod_i (z - roots[i]) * z^{shift}
Laurent fromRoots(Complex c, const std::vector<Complex>& roots, int shift);

// Dense grid of Laurent polynomials, row-major.
struct LaurentMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Laurent> entries;

  LaurentMatrix() = default;
  LaurentMatrix(int r, int c) : rows(r), cols(c), entries(r * c) {}
  Laurent& at(int r, int c) { return entries[r * cols + c]; }
  const Laurent& at(int r, int c) const { return entries[r * cols + c]; }
};

}  // namespace cmv
