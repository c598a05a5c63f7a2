#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmvmix/cmv_core.hpp"
#include "cmvmix/errors.hpp"
#include "cmvmix/rng.hpp"

using namespace cmv;

namespace {
MatrixFunctional lebesgue() {
  MatrixFunctional m(1, 1);
  m.at(0, 0).ac = Laurent::one();
  return m;
}

MatrixFunctional cosineMeasure() {
  MatrixFunctional m(1, 1);
  Laurent w = Laurent::one();
  w.addToCoeff(1, {0.5, 0.0});
  w.addToCoeff(-1, {0.5, 0.0});
  m.at(0, 0).ac = w;
  return m;
}
}  // namespace

TEST_CASE("CMV exponent sequence") {
  CHECK(cmvExponent(0) == 0);
  CHECK(cmvExponent(1) == -1);
  CHECK(cmvExponent(2) == 1);
  CHECK(cmvExponent(3) == -2);
  CHECK(cmvExponent(4) == 2);
  CHECK(cmvExponent(5) == -3);
}

TEST_CASE("moment matrix layouts") {
  // Lebesgue: identity
  Eigen::MatrixXcd M = buildMomentMatrix(lebesgue(), 4, Side::Left);
  CHECK((M - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // cosine weight, scalar, n=3
  Eigen::MatrixXcd Mc = buildMomentMatrix(cosineMeasure(), 3, Side::Left);
  Eigen::MatrixXcd expect(3, 3);
  expect << 1.0, 0.5, 0.5, 0.5, 1.0, 0.0, 0.5, 0.0, 1.0;
  CHECK((Mc - expect).cwiseAbs().maxCoeff() < 1e-15);

  // left matrix of mu vs right matrix of conj(mu): complex conjugates
  MatrixFunctional m = randomMeasure(2, 3, 31, {.maxExp = 2, .eps = 0.5});
  Eigen::MatrixXcd L = buildMomentMatrix(m, 12, Side::Left);
  Eigen::MatrixXcd R = buildMomentMatrix(m.conjugate(), 12, Side::Right);
  CHECK((L.conjugate() - R).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Gauss-Borel on the 2x2 hand case") {
  Eigen::MatrixXcd M(2, 2);
  M << 1.0, 0.5, 0.5, 1.0;
  GaussFactors f = gaussBorel(M, Side::Left);
  CHECK(std::abs(f.unitLower(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(f.unitLower(1, 0) - Complex(-0.5, 0)) < 1e-15);
  CHECK(std::abs(f.upper(0, 1) - Complex(-0.5 / 0.75, 0)) < 1e-14);
  CHECK(std::abs(f.upper(1, 1) - Complex(1.0 / 0.75, 0)) < 1e-14);
  CHECK(f.residual(M) < 1e-15);

  GaussFactors id = gaussBorel(Eigen::MatrixXcd::Identity(3, 3), Side::Left);
  CHECK((id.unitLower - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((id.upper - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Gauss-Borel on random diagonally dominant Hermitian matrices") {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const int n = 20;
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.inSquare();
    Eigen::MatrixXcd H = A + A.adjoint() + 2.0 * n * Eigen::MatrixXcd::Identity(n, n);
    GaussFactors f = gaussBorel(H, Side::Left);
    CHECK(f.residual(H) < 1e-12);
  }
}

TEST_CASE("singular leading minor is reported at the right index") {
  // all-ones moment matrix (single unit atom at z = 1): the 2x2 leading
  // minor vanishes, so elimination dies at pivot index 1
  MatrixFunctional atom(1, 1);
  atom.at(0, 0).atoms.push_back({{1.0, 0.0}, {1.0, 0.0}});
  Eigen::MatrixXcd M = buildMomentMatrix(atom, 5, Side::Left);
  try {
    gaussBorel(M, Side::Left);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::SingularMinor);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("families from the factors") {
  // Lebesgue: B_n are the CMV monomials
  Eigen::MatrixXcd M = buildMomentMatrix(lebesgue(), 6, Side::Left);
  GaussFactors f = gaussBorel(M, Side::Left);
  Family B = familyB(f, 1);
  CHECK(B.at(0, 0).approxEqual(Laurent::one(), 0.0));
  CHECK(B.at(1, 0).approxEqual(Laurent::monomial(-1, {1, 0}), 0.0));
  CHECK(B.at(2, 0).approxEqual(Laurent::monomial(1, {1, 0}), 0.0));
  CHECK(B.at(3, 0).approxEqual(Laurent::monomial(-2, {1, 0}), 0.0));

  // cosine weight: B_1(z) = 1/z - 1/2
  Eigen::MatrixXcd Mc = buildMomentMatrix(cosineMeasure(), 6, Side::Left);
  GaussFactors fc = gaussBorel(Mc, Side::Left);
  Family Bc = familyB(fc, 1);
  Laurent expect = Laurent::monomial(-1, {1.0, 0.0});
  expect.addToCoeff(0, {-0.5, 0.0});
  CHECK(Bc.at(1, 0).approxEqual(expect, 1e-14));

  // q = 2 diagonal Lebesgue grid: entries stay in their own column pattern
  MatrixFunctional diag(2, 2);
  diag.at(0, 0).ac = Laurent::one();
  diag.at(1, 1).ac = Laurent::one();
  Eigen::MatrixXcd Md = buildMomentMatrix(diag, 8, Side::Left);
  GaussFactors fd = gaussBorel(Md, Side::Left);
  Family Bd = familyB(fd, 2);
  for (int n = 0; n < 8; ++n)
    for (int b = 0; b < 2; ++b)
      if (b != n % 2) CHECK(Bd.at(n, b).isZero());
}

TEST_CASE("degree bounds formulas") {
  CHECK(degreeBounds(2, 1, 1) == std::pair<int, int>{1, 1});
  CHECK(degreeBounds(0, 1, 1) == std::pair<int, int>{0, 0});
  CHECK(degreeBounds(3, 1, 2) == std::pair<int, int>{0, 1});
}

TEST_CASE("generated families satisfy the degree ceilings") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    MatrixFunctional m = factorableRandomMeasure(2, 3, seed, 30);
    Eigen::MatrixXcd M = buildMomentMatrix(m, 30, Side::Left);
    GaussFactors f = gaussBorel(M, Side::Left);
    Family B = familyB(f, 2);
    Family A = familyA(f, 3);
    int attained = 0, attSlots = 0;
    for (int n = 0; n < 30; ++n) {
      for (int b = 0; b < 2; ++b) {
        if (B.at(n, b).isZero()) continue;
        auto [dp, dm] = degreeBounds(n, b + 1, 2);
        CHECK(B.at(n, b).degPlus() <= dp);
        CHECK(-B.at(n, b).degMinus() <= dm);
        if (attainsDegPlus(n, b + 1, 2)) {
          ++attSlots;
          if (B.at(n, b).degPlus() == dp) ++attained;
        }
        if (attainsDegMinus(n, b + 1, 2)) {
          ++attSlots;
          if (-B.at(n, b).degMinus() == dm) ++attained;
        }
      }
      for (int a = 0; a < 3; ++a) {
        if (A.at(n, a).isZero()) continue;
        auto [dp, dm] = degreeBounds(n, a + 1, 3);
        CHECK(A.at(n, a).degPlus() <= dp);
        CHECK(-A.at(n, a).degMinus() <= dm);
      }
    }
    CHECK(attained == attSlots);  // the top coefficient is the unit diagonal
  }
}

TEST_CASE("biorthogonality") {
  // Lebesgue, n = 6: exact
  Eigen::MatrixXcd M = buildMomentMatrix(lebesgue(), 8, Side::Left);
  GaussFactors f = gaussBorel(M, Side::Left);
  CHECK(biorthogonalityResidual(familyB(f, 1), familyA(f, 1), lebesgue(), 6) < 1e-14);

  // cosine weight, n = 8
  MatrixFunctional cm = cosineMeasure();
  Eigen::MatrixXcd Mc = buildMomentMatrix(cm, 10, Side::Left);
  GaussFactors fc = gaussBorel(Mc, Side::Left);
  CHECK(biorthogonalityResidual(familyB(fc, 1), familyA(fc, 1), cm, 8) < 1e-10);

  // mismatched families: O(1) residual
  CHECK(biorthogonalityResidual(familyB(fc, 1), familyA(f, 1), cm, 6) > 0.1);

  // right-family biorthogonality for a random rectangular measure
  MatrixFunctional m = factorableRandomMeasure(1, 2, 7, 26);
  Eigen::MatrixXcd Ml = buildMomentMatrix(m, 26, Side::Left);
  GaussFactors fl = gaussBorel(Ml, Side::Left);
  CHECK(biorthogonalityResidual(familyB(fl, 1), familyA(fl, 2), m, 20) < 1e-9);
}

TEST_CASE("truncated inverse through the factors") {
  MatrixFunctional m = factorableRandomMeasure(2, 1, 11, 20);
  Eigen::MatrixXcd M = buildMomentMatrix(m, 20, Side::Left);
  GaussFactors f = gaussBorel(M, Side::Left);
  Eigen::MatrixXcd Minv = f.upper * f.unitLower;
  CHECK((M * Minv - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("real scalar symmetry: B equals the script A family") {
  MatrixFunctional m = factorableRandomMeasure(1, 1, 19, 24, {.maxExp = 2, .eps = 0.4, .real = true});
  Eigen::MatrixXcd Ml = buildMomentMatrix(m, 24, Side::Left);
  Eigen::MatrixXcd Mr = buildMomentMatrix(m, 24, Side::Right);
  Family B = familyB(gaussBorel(Ml, Side::Left), 1);
  Family As = familyAscr(gaussBorel(Mr, Side::Right), 1);
  for (int n = 0; n < 20; ++n)
    CHECK(B.at(n, 0).approxEqual(As.at(n, 0), 1e-10));
}
