#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cmvmix/laurent.hpp"
#include "cmvmix/measures.hpp"

namespace cmv {

// CMV exponent sequence 0, -1, 1, -2, 2, ...
inline int cmvExponent(int k) { return (k == 0) ? 0 : ((k % 2) ? -(k + 1) / 2 : k / 2); }

enum class Side { Left, Right };

// n x n truncation of the CMV moment matrix.
//   left : entry(i,j) = c_{b,a, e(k)-e(l)}
//   right: entry(i,j) = c_{b,a,-e(k)+e(l)}
// with i = q*k + (b-1), j = p*l + (a-1).
Eigen::MatrixXcd buildMomentMatrix(const MatrixFunctional& m, int n, Side side);

// Triangular factors with unitLower * M * upper = I and diag(unitLower) = 1.
// For the left matrix the slots hold (L, Ubar); for the right one (Lscbar, Usc).
struct GaussFactors {
  Side side = Side::Left;
  Eigen::MatrixXcd unitLower;
  Eigen::MatrixXcd upper;

  int size() const { return static_cast<int>(unitLower.rows()); }
  double residual(const Eigen::MatrixXcd& M) const;
};

// Right-looking elimination without pivoting; the factorization's existence
// is a property of the measure, so a small pivot is reported as a singular
// leading minor (index = size of the largest nonsingular leading block),
// never permuted away.
GaussFactors gaussBorel(const Eigen::MatrixXcd& M, Side side);

enum class FamilyKind { B, A, Ascr, Bscr };

// One of the four biorthogonal families, truncated to `count` entries.
// B and Ascr have q components (column families), A and Bscr have p (row
// families). Entries with no admissible monomial yet are zero polynomials.
struct Family {
  FamilyKind kind = FamilyKind::B;
  int components = 1;
  int count = 0;
  std::vector<Laurent> polys;  // count x components, row-major

  const Laurent& at(int n, int comp) const { return polys[n * components + comp]; }
  Laurent& at(int n, int comp) { return polys[n * components + comp]; }
  Complex eval(int n, int comp, Complex z) const { return at(n, comp).evaluate(z); }

  // Same entries with conjugated coefficients (Bbar, Abar, ...).
  Family conjCoeffs() const;
};

// B_n^{(b)} from the left unit-lower factor, A_n^{(a)} from U = conj(Ubar),
// and the script families from the right factors.
Family familyB(const GaussFactors& left, int q);
Family familyA(const GaussFactors& left, int p);
Family familyAscr(const GaussFactors& right, int q);
Family familyBscr(const GaussFactors& right, int p);

// Degree ceilings for the n-th entry of a column family with r components:
//   deg+ <= ceil((n+2-b)/(2r)) - 1,  deg- <= ceil((n+2-b-r)/(2r)).
// (Row families use the same formulas with r = p.) b is 1-based.
std::pair<int, int> degreeBounds(int n, int b, int r);
// The ceilings are attained exactly at n = 2Nr+b-1 (deg+) and
// n = (2N+1)r+b-1 (deg-), where the top coefficient is the unit diagonal.
bool attainsDegPlus(int n, int b, int r);
bool attainsDegMinus(int n, int b, int r);

// <mu_{b,a}, f * conjReflect(g)> summed over the grid; the biorthogonality
// pairing of entry f of a B-type family against entry g of an A-type one.
Complex biorthPairing(const MatrixFunctional& m, const Laurent& f, const Laurent& g);

// max_{i,j<count} |sum_{b,a} <B_i^{(b)} dmu_{b,a} conj(A_j^{(a)})> - delta_ij|
double biorthogonalityResidual(const Family& B, const Family& A,
                               const MatrixFunctional& m, int count);

}  // namespace cmv
