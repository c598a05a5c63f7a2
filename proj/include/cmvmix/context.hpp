#pragma once

#include "cmvmix/cmv_core.hpp"

namespace cmv {

// Bundles the moment matrices, both Gauss-Borel factorizations and the four
// polynomial families of one measure at one working size N. Everything
// downstream (recurrences, kernels, transforms) truncates from here; N must
// carry enough margin for the truncation-exact windows of each operation.
struct Context {
  MatrixFunctional mf;
  int N = 0;
  Eigen::MatrixXcd Mleft;
  Eigen::MatrixXcd Mright;
  GaussFactors left;
  GaussFactors right;
  Family B;     // q components, coefficients from L
  Family A;     // p components, coefficients from U = conj(Ubar)
  Family Ascr;  // q components, coefficients from Lsc = conj(Lscbar)
  Family Bscr;  // p components, coefficients from Usc

  int q() const { return mf.q(); }
  int p() const { return mf.p(); }

  static Context build(const MatrixFunctional& mf, int N);
};

}  // namespace cmv
