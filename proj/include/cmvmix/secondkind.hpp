#pragma once

#include "cmvmix/context.hpp"

namespace cmv {

// Exact Cauchy transform of a Laurent-polynomial-plus-atoms functional:
// <mu, h(x)/(z-x)> for |z| != 1 (geometric expansion in the convergent
// direction; finitely many terms survive, so the value is exact).
Complex cauchyApply(const ScalarFunctional& mu, const Laurent& h, Complex z);

// Partial-fraction route for the same value: per monomial x^k the a.c. part
// contributes a finite moment sum and each atom a closed geometric tail.
// Kept as an independent cross-check of cauchyApply.
Complex cauchyApplyByMoments(const ScalarFunctional& mu, const Laurent& h, Complex z);

// C(z): q x n with entries C_k^{(b)}(z) = sum_a <mu_{b,a}(x), A_k^{(a)}(x^{-1})/(z-x)>.
Eigen::MatrixXcd cauchyC(const MatrixFunctional& m, const Family& A, int n, Complex z);

// D(z): n x p with entries D_k^{(a)}(z) = sum_b <mu_{b,a}(x), B_k^{(b)}(x)/(z-x)>.
Eigen::MatrixXcd cauchyD(const MatrixFunctional& m, const Family& B, int n, Complex z);

// K_C^{[n]}(z,y) = C^{[n]}(z) B^{[n]}(y)  (q x q)
Eigen::MatrixXcd kernelCauchyC(const MatrixFunctional& m, const Family& A,
                               const Family& B, int n, Complex z, Complex y);

// K_D^{[n]}(x,z) = A^{[n]}(x^{-1}) D^{[n]}(z)  (p x p)
Eigen::MatrixXcd kernelCauchyD(const MatrixFunctional& m, const Family& A,
                               const Family& B, int n, Complex x, Complex z);

}  // namespace cmv
