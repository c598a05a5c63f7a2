#pragma once

#include "cmvmix/banded.hpp"
#include "cmvmix/context.hpp"
#include "cmvmix/spectral.hpp"

namespace cmv {

// Christoffel-Darboux kernel machinery. The kernel pairs B with the
// conjugated dual family: K^{[n]}(x,y) = sum_{k<n} Abar_k(x^{-1}) B_k(y),
// a p x q matrix; this is the pairing reproduced by the measure and by the
// inverse truncated moment matrix.
class KernelEngine {
 public:
  // Needs ctx.N >= nmax + 2(p+q) for the banded route.
  KernelEngine(const Context& ctx, int nmax);

  int p() const { return p_; }
  int q() const { return q_; }
  int nmax() const { return nmax_; }

  // Direct sum of the first n dyads.
  Eigen::MatrixXcd direct(int n, Complex x, Complex y) const;

  // Banded route through the recurrence matrix: the two boundary windows
  //   term1: i in [n, n+2p), j in [n-2p, n)
  //   term2: i in [n-2q, n), j in [n, n+2q)
  // give (x - y) K^{[n]}(x,y) = term1 - term2. Throws PoleAtDiagonal when
  // |x - y| < 1e-12; use direct() there.
  Eigen::MatrixXcd cdFormula(int n, Complex x, Complex y) const;

  // Inverse-moment-matrix route: Z_p^T(x^{-1}) (M^{[n]})^{-1} Z_q(y) with
  // (M^{[n]})^{-1} = Ubar^{[n]} L^{[n]}.
  Eigen::MatrixXcd abc(int n, Complex x, Complex y) const;

  // Plain-family kernel sum_k A_k(x^{-1}) B_k(y); the object entering the
  // Christoffel/Geronimus connection formulas.
  Eigen::MatrixXcd plain(int n, Complex x, Complex y) const;

  // max entry of |oint K(x,y) dmu(y) K(y,z) - K(x,z)| over the given pairs.
  double reproducingResidual(int n, const std::vector<std::pair<Complex, Complex>>& xz) const;

 private:
  const Context& ctx_;
  int p_, q_, nmax_;
  Family Abar_;
  Eigen::MatrixXcd Tfull_;   // dense recurrence matrix at ctx.N
  Eigen::MatrixXcd gram_;    // biorthogonality pairings, for reproducing checks
};

}  // namespace cmv
