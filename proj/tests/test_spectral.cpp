#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmvmix/errors.hpp"
#include "cmvmix/rng.hpp"
#include "cmvmix/spectral.hpp"

using namespace cmv;

namespace {

MatrixFunctional lebesgue(int q = 1, int p = 1) {
  MatrixFunctional m(q, p);
  for (int b = 0; b < q; ++b) m.at(b, b % p).ac = Laurent::one();
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

std::vector<Complex> unitPoints(uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Complex> zs;
  for (int i = 0; i < count; ++i) zs.push_back(rng.onCircle());
  return zs;
}

// max residual of (X * F)(arg) - factor * F(arg) over truncation-exact rows.
double columnActionResidual(const Banded& X, const Family& F, Complex factor,
                            Complex arg) {
  const int n = X.n();
  double worst = 0.0;
  for (int i = 0; i < n - X.upper(); ++i)
    for (int c = 0; c < F.components; ++c) {
      Complex s(0.0, 0.0);
      for (int j = std::max(0, i - X.lower()); j <= std::min(n - 1, i + X.upper()); ++j)
        s += X.at(i, j) * F.eval(j, c, arg);
      worst = std::max(worst, std::abs(s - factor * F.eval(i, c, arg)));
    }
  return worst;
}

// max residual of (F * X)(arg) - factor * F(arg) over truncation-exact cols.
double rowActionResidual(const Banded& X, const Family& F, Complex factor, Complex arg) {
  const int n = X.n();
  double worst = 0.0;
  for (int j = 0; j < n - X.lower(); ++j)
    for (int c = 0; c < F.components; ++c) {
      Complex s(0.0, 0.0);
      for (int i = std::max(0, j - X.upper()); i <= std::min(n - 1, j + X.lower()); ++i)
        s += F.eval(i, c, arg) * X.at(i, j);
      worst = std::max(worst, std::abs(s - factor * F.eval(j, c, arg)));
    }
  return worst;
}

}  // namespace

TEST_CASE("shift matrix patterns and actions") {
  Banded U1 = upsilon(1, 12);
  CHECK(U1.at(0, 2) == Complex(1, 0));
  CHECK(U1.at(1, 0) == Complex(1, 0));
  CHECK(U1.at(0, 0) == Complex(0, 0));
  CHECK(U1.at(2, 4) == Complex(1, 0));
  CHECK(U1.at(3, 1) == Complex(1, 0));

  // eta^2 = I on interior rows
  for (int r : {1, 2}) {
    const int n = 12 * r;
    Eigen::MatrixXcd E = eta(r, n).toDense();
    Eigen::MatrixXcd E2 = E * E;
    for (int i = r; i < n - r; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(E2(i, j) - (i == j ? 1.0 : 0.0)) == 0.0);
  }

  // eigen-actions on the monomial vector at random unit z
  for (int r : {1, 2, 3}) {
    const int n = 10 * r;
    for (Complex z : unitPoints(77 + r, 10)) {
      const Complex zi = Complex(1.0, 0.0) / z;
      Eigen::VectorXcd Z(n), Zi(n);
      for (int i = 0; i < n; ++i) {
        Z(i) = std::pow(z, cmvExponent(i / r));
        Zi(i) = std::pow(zi, cmvExponent(i / r));
      }
      Eigen::VectorXcd uz = upsilon(r, n).toDense() * Z;
      Eigen::VectorXcd ez = eta(r, n).toDense() * Z;
      Eigen::VectorXcd vz = nu(r, n).toDense() * Z;
      for (int i = 0; i < n - 2 * r; ++i) {
        CHECK(std::abs(uz(i) - z * Z(i)) < 1e-12);
        CHECK(std::abs(ez(i) - Zi(i)) < 1e-12);
        CHECK(std::abs(vz(i) - zi * Zi(i)) < 1e-12);
      }
    }
  }
}

TEST_CASE("shift matrix factorizations") {
  for (int r : {1, 2}) {
    UpsilonFactorReport rep = factorCheckUpsilon(r, r == 1 ? 12 : 16);
    CHECK(rep.nuEta == 0.0);
    CHECK(rep.etaNu == 0.0);
    CHECK(rep.orthogonal == 0.0);
  }
}

TEST_CASE("moment matrix intertwining") {
  MatrixFunctional m = factorableRandomMeasure(2, 3, 41, 36);
  const int n = 36, q = 2, p = 3;
  Eigen::MatrixXcd Ml = buildMomentMatrix(m, n, Side::Left);
  Eigen::MatrixXcd Mr = buildMomentMatrix(m, n, Side::Right);
  Eigen::MatrixXcd Uq = upsilon(q, n).toDense(), Up = upsilon(p, n).toDense();
  Eigen::MatrixXcd Eq = eta(q, n).toDense(), Ep = eta(p, n).toDense();
  Eigen::MatrixXcd Nq = nu(q, n).toDense(), Np = nu(p, n).toDense();

  auto interior = [&](const Eigen::MatrixXcd& D, int margin) {
    double worst = 0.0;
    for (int i = margin; i < n - margin; ++i)
      for (int j = margin; j < n - margin; ++j)
        worst = std::max(worst, std::abs(D(i, j)));
    return worst;
  };
  CHECK(interior(Uq * Ml - Ml * Up, 2 * 3) < 1e-10);
  CHECK(interior(Eq * Ml - Mr * Ep, 3) < 1e-10);
  CHECK(interior(Nq * Ml - Mr * Np, 3) < 1e-10);
  CHECK(interior(Eq * Ml * Ep - Nq * Ml * Np, 2 * 3) < 1e-10);
}

TEST_CASE("recurrence matrix on the Lebesgue measure") {
  Context ctx = Context::build(lebesgue(), 24);
  RecurrencePack rp = recurrenceT(ctx, 16);
  CHECK(rp.crossResidual < 1e-13);
  CHECK(rp.bandPurity < 1e-13);
  Eigen::MatrixXcd diff = rp.T.toDense() - upsilon(1, 16).toDense();
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("recurrence relations for random measures") {
  for (auto [q, p] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const int n = 44, N = n + 2 * (p + q);
    MatrixFunctional m = factorableRandomMeasure(q, p, 100 + q * 10 + p, N);
    Context ctx = Context::build(m, N);
    RecurrencePack rp = recurrenceT(ctx, n);
    CHECK(rp.crossResidual < 1e-9);
    CHECK(rp.bandPurity < 1e-11);

    Family Abar = ctx.A.conjCoeffs();
    Family AscrBar = ctx.Ascr.conjCoeffs();
    for (Complex z : unitPoints(5 + q + p, 5)) {
      const Complex zi = Complex(1.0, 0.0) / z;
      CHECK(columnActionResidual(rp.T, ctx.B, z, z) < 1e-9);
      CHECK(rowActionResidual(rp.T, Abar, z, zi) < 1e-9);
      CHECK(columnActionResidual(rp.Tscr, AscrBar, z, zi) < 1e-9);
      CHECK(rowActionResidual(rp.Tscr, ctx.Bscr, z, z) < 1e-9);
    }
  }
}

TEST_CASE("Szego matrices: Lebesgue reduces to the shift pieces") {
  Context ctx = Context::build(lebesgue(), 20);
  SzegoPack sz = szegoMatrices(ctx, 14);
  CHECK((sz.R.toDense() - eta(1, 14).toDense()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((sz.S.toDense() - nu(1, 14).toDense()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Szego relations, inverses and factorizations") {
  for (auto [q, p] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const int n = 40, N = n + 2 * (p + q);
    MatrixFunctional m = factorableRandomMeasure(q, p, 200 + q * 10 + p, N);
    Context ctx = Context::build(m, N);
    SzegoPack sz = szegoMatrices(ctx, n);
    RecurrencePack rp = recurrenceT(ctx, n);
    CHECK(sz.crossResidual < 1e-9);
    CHECK(sz.bandPurity < 1e-11);

    Family Abar = ctx.A.conjCoeffs();
    Family AscrBar = ctx.Ascr.conjCoeffs();
    for (Complex z : unitPoints(17 + q + p, 5)) {
      const Complex zi = Complex(1.0, 0.0) / z;
      // R B(z) = Ascrbar(z^{-1}); S Ascrbar(z^{-1}) = z B(z): column families
      double worst = 0.0;
      for (int i = 0; i < n - q; ++i)
        for (int b = 0; b < q; ++b) {
          Complex s1(0.0, 0.0), s2(0.0, 0.0);
          for (int j = std::max(0, i - p); j <= std::min(n - 1, i + q); ++j) {
            s1 += sz.R.at(i, j) * ctx.B.eval(j, b, z);
            s2 += sz.S.at(i, j) * AscrBar.eval(j, b, zi);
          }
          worst = std::max({worst, std::abs(s1 - AscrBar.eval(i, b, zi)),
                            std::abs(s2 - z * ctx.B.eval(i, b, z))});
        }
      CHECK(worst < 1e-9);

      // Bscr(z) R = Abar(z^{-1}); Abar(z^{-1}) S = z Bscr(z): row families
      worst = 0.0;
      for (int j = 0; j < n - p; ++j)
        for (int a = 0; a < p; ++a) {
          Complex s1(0.0, 0.0), s2(0.0, 0.0);
          for (int i = std::max(0, j - q); i <= std::min(n - 1, j + p); ++i) {
            s1 += ctx.Bscr.eval(i, a, z) * sz.R.at(i, j);
            s2 += Abar.eval(i, a, zi) * sz.S.at(i, j);
          }
          worst = std::max({worst, std::abs(s1 - Abar.eval(j, a, zi)),
                            std::abs(s2 - z * ctx.Bscr.eval(j, a, z))});
        }
      CHECK(worst < 1e-9);
    }

    // T = S R, Tscr = R S, S Sscr = I, R Rscr = I on interior windows
    Eigen::MatrixXcd R = sz.R.toDense(), S = sz.S.toDense();
    Eigen::MatrixXcd Rs = sz.Rscr.toDense(), Ss = sz.Sscr.toDense();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    auto interiorMax = [&](const Eigen::MatrixXcd& D, int margin) {
      double worst = 0.0;
      for (int i = margin; i < n - margin; ++i)
        for (int j = margin; j < n - margin; ++j)
          worst = std::max(worst, std::abs(D(i, j)));
      return worst;
    };
    const int mgn = 2 * (p + q);
    CHECK(interiorMax(rp.T.toDense() - S * R, mgn) < 1e-9);
    CHECK(interiorMax(rp.Tscr.toDense() - R * S, mgn) < 1e-9);
    CHECK(interiorMax(S * Ss - I, mgn) < 1e-9);
    CHECK(interiorMax(Ss * S - I, mgn) < 1e-9);
    CHECK(interiorMax(R * Rs - I, mgn) < 1e-9);
  }
}

TEST_CASE("block ladder inverse formula and stairs") {
  // Lebesgue: l_n = 0 and LL_n is the antidiagonal flip
  Context leb = Context::build(lebesgue(), 16);
  BlockLadder ladLeb = blockLadder(leb);
  CHECK(ladLeb.inverseResidual() < 1e-14);
  Eigen::Matrix2cd flip;
  flip << 0.0, 1.0, 1.0, 0.0;
  for (int k = 0; k < 4; ++k) {
    CHECK((ladLeb.LL[k] - flip).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(ladLeb.lsub[k](0, 0)) < 1e-14);
  }

  // cosine weight: l_0 = -1/2
  Context cosw = Context::build(cosineMeasure(), 16);
  BlockLadder ladCos = blockLadder(cosw);
  CHECK(std::abs(ladCos.lsub[0](0, 0) - Complex(-0.5, 0.0)) < 1e-14);

  for (auto [q, p] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const int n = 30, N = n + 2 * (p + q);
    MatrixFunctional m = factorableRandomMeasure(q, p, 300 + q * 10 + p, N);
    Context ctx = Context::build(m, N);
    BlockLadder lad = blockLadder(ctx);
    CHECK(lad.inverseResidual() < 1e-10);
    SzegoPack sz = szegoMatrices(ctx, n);
    CHECK(stairsResidual(sz, lad) < 1e-9);
  }
}

TEST_CASE("Verblunsky coefficients") {
  Context leb = Context::build(lebesgue(), 20);
  for (Complex a : verblunsky(leb, 12)) CHECK(std::abs(a) < 1e-14);

  Context cosw = Context::build(cosineMeasure(), 20);
  std::vector<Complex> alpha = verblunsky(cosw, 10);
  CHECK(std::abs(alpha[0] - Complex(-0.5, 0.0)) < 1e-14);

  // atom-plus-Lebesgue measure vs the monic orthogonal-polynomial oracle:
  // alpha_k = Phi_{k+1}(0)
  MatrixFunctional atomLeb = lebesgue();
  atomLeb.at(0, 0).atoms.push_back({{1.0, 0.0}, {0.5, 0.0}});
  Context ctx = Context::build(atomLeb, 28);
  std::vector<Complex> al = verblunsky(ctx, 20);
  std::vector<Laurent> oracle = monicOpucOracle(atomLeb, 21);
  for (int k = 0; k < 20; ++k)
    CHECK(std::abs(al[k] - oracle[k + 1].coeff(0)) < 1e-10);
  for (Complex a : al) CHECK(std::abs(a) < 1.0);  // positive measure

  // complex-coefficient real measure exercises the conjugation pattern
  MatrixFunctional real =
      factorableRandomMeasure(1, 1, 47, 30, {.maxExp = 2, .eps = 0.25, .real = true});
  Context rctx = Context::build(real, 30);
  std::vector<Complex> ar = verblunsky(rctx, 18);
  std::vector<Laurent> ro = monicOpucOracle(real, 19);
  for (int k = 0; k < 18; ++k)
    CHECK(std::abs(ar[k] - ro[k + 1].coeff(0)) < 1e-9);

  MatrixFunctional cplx = factorableRandomMeasure(1, 1, 48, 20);
  Context cctx = Context::build(cplx, 20);
  CHECK_THROWS_AS(verblunsky(cctx, 8), Error);
  MatrixFunctional rect = factorableRandomMeasure(1, 2, 49, 20);
  Context rectCtx = Context::build(rect, 20);
  CHECK_THROWS_AS(verblunsky(rectCtx, 8), Error);
}

TEST_CASE("Szego polynomials and recurrence") {
  Context leb = Context::build(lebesgue(), 26);
  SzegoScalar sl = szegoPhi(leb, 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(sl.phi[k].approxEqual(Laurent::monomial(k, {1, 0}), 1e-14));
    CHECK(std::abs(sl.phiStar[k].coeff(0) - Complex(1, 0)) < 1e-14);
  }

  Context cosw = Context::build(cosineMeasure(), 30);
  SzegoScalar sc = szegoPhi(cosw, 12);
  Laurent phi1 = Laurent::monomial(1, {1, 0});
  phi1.addToCoeff(0, {-0.5, 0.0});
  CHECK(sc.phi[1].approxEqual(phi1, 1e-14));
  CHECK(szegoRecurrenceResidual(sc, verblunsky(cosw, 12)) < 1e-12);

  for (uint64_t seed : {61u, 62u, 63u, 64u, 65u}) {
    MatrixFunctional m =
        factorableRandomMeasure(1, 1, seed, 36, {.maxExp = 2, .eps = 0.25, .real = true});
    Context ctx = Context::build(m, 36);
    SzegoScalar s = szegoPhi(ctx, 30);
    std::vector<Laurent> oracle = monicOpucOracle(m, 30);
    for (int k = 0; k <= 30; ++k) {
      CHECK(s.phi[k].degPlus() == k);
      CHECK(std::abs(s.phi[k].coeff(k) - Complex(1, 0)) < 1e-12);
      CHECK(s.phi[k].approxEqual(oracle[k], 1e-8));
      CHECK(std::abs(s.phiStar[k].coeff(0) - Complex(1, 0)) < 1e-12);
    }
    CHECK(szegoRecurrenceResidual(s, verblunsky(ctx, 30)) < 1e-9);

    // scalar ladder systems behind the recursion
    BlockLadder lad = blockLadder(ctx);
    Family Bb = ctx.B.conjCoeffs();
    for (Complex z : unitPoints(seed, 4)) {
      const Complex zi = Complex(1.0, 0.0) / z;
      for (int k = 1; k < 10; ++k) {
        Eigen::Vector2cd lhs, rhs;
        lhs << Bb.eval(2 * k - 1, 0, zi), Bb.eval(2 * k, 0, zi);
        rhs << ctx.B.eval(2 * k - 1, 0, z), ctx.B.eval(2 * k, 0, z);
        CHECK((lhs - lad.LL[2 * k - 1] * rhs).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::Vector2cd l2, r2;
        l2 << ctx.B.eval(2 * k, 0, z), ctx.B.eval(2 * k + 1, 0, z);
        r2 << Bb.eval(2 * k, 0, zi), Bb.eval(2 * k + 1, 0, zi);
        CHECK((z * l2 - lad.LLinv[2 * k] * r2).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("Szego block polynomials") {
  // block-diagonal Lebesgue, q = p = 2: Q_{2m}(z) = z^{2m} I
  MatrixFunctional diag = lebesgue(2, 2);
  Context ctx = Context::build(diag, 32);
  SzegoBlocks blocks = szegoBlockPolynomials(ctx, 3);
  for (int mIdx = 0; mIdx < 3; ++mIdx)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Laurent& e = blocks.Q[mIdx].at(i, j);
        if (i == j)
          CHECK(e.approxEqual(Laurent::monomial(2 * mIdx, {1, 0}), 1e-13));
        else
          CHECK(e.maxAbsCoeff() < 1e-13);
      }

  // q = 1 collapse: Q_{2m} equals Phi_{2m}
  Context cosw = Context::build(cosineMeasure(), 32);
  SzegoBlocks sb = szegoBlockPolynomials(cosw, 4);
  SzegoScalar ss = szegoPhi(cosw, 8);
  for (int mIdx = 0; mIdx < 4; ++mIdx)
    CHECK(sb.Q[mIdx].at(0, 0).approxEqual(ss.phi[2 * mIdx], 1e-12));

  // random square measure: monic leading/constant coefficients
  MatrixFunctional m = factorableRandomMeasure(2, 2, 71, 36);
  Context rctx = Context::build(m, 36);
  SzegoBlocks rb = szegoBlockPolynomials(rctx, 3);
  for (int mIdx = 0; mIdx < 3; ++mIdx)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
        CHECK(std::abs(rb.Q[mIdx].at(i, j).coeff(2 * mIdx) - want) < 1e-10);
        CHECK(std::abs(rb.P[mIdx].at(i, j).coeff(2 * mIdx) - want) < 1e-10);
        CHECK(std::abs(rb.Qstar[mIdx].at(i, j).coeff(0) - want) < 1e-10);
        CHECK(std::abs(rb.Pstar[mIdx].at(i, j).coeff(0) - want) < 1e-10);
      }
}

TEST_CASE("two-measure recurrences (q=1, p=2)") {
  for (uint64_t seed : {81u, 82u}) {
    MatrixFunctional m =
        factorableRandomMeasure(1, 2, seed, 52, {.maxExp = 3, .eps = 0.3, .real = true});
    Context c = Context::build(m, 52);
    TwoMeasureReport r = twoMeasureRecurrenceCheck(c, 6, unitPoints(seed, 10));
    CHECK(r.blockDiagonal < 1e-9);
    CHECK(r.blockContents < 1e-9);
    CHECK(r.recurrences < 1e-9);
    CHECK(r.uConsistency < 1e-9);
  }

  MatrixFunctional bad = factorableRandomMeasure(2, 1, 83, 20);
  Context bc = Context::build(bad, 20);
  CHECK_THROWS_AS(twoMeasureRecurrenceCheck(bc, 2, unitPoints(1, 2)), Error);
}
