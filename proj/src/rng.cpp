#include "cmvmix/rng.hpp"

#include <cmath>

#include "cmvmix/cmv_core.hpp"
#include "cmvmix/errors.hpp"

namespace cmv {

uint64_t Rng::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

Complex Rng::inSquare() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

Complex Rng::onCircle() {
  const double t = uniform(0.0, 2.0 * 3.14159265358979323846);
  return {std::cos(t), std::sin(t)};
}

MatrixFunctional randomMeasure(int q, int p, uint64_t seed,
                               const RandomMeasureOptions& opts) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
  MatrixFunctional m(q, p);
  for (int b = 0; b < q; ++b)
    for (int a = 0; a < p; ++a) {
      Laurent w;
      if (opts.real) {
        // positive real weight: base plus a trigonometric tail normalized
        // so the weight stays bounded away from zero on the circle
        const double base = (a == b % p) ? 1.0 : 0.35;
        double tail = 0.0;
        std::vector<Complex> cs(opts.maxExp + 1);
        for (int k = 1; k <= opts.maxExp; ++k) {
          cs[k] = opts.eps * rng.inSquare();
          tail += 2.0 * std::abs(cs[k]);
        }
        const double scale = (tail > 0.7 * base) ? 0.7 * base / tail : 1.0;
        w.setCoeff(0, Complex(base, 0.0));
        for (int k = 1; k <= opts.maxExp; ++k) {
          w.setCoeff(k, scale * cs[k]);
          w.setCoeff(-k, std::conj(scale * cs[k]));
        }
      } else {
        for (int k = -opts.maxExp; k <= opts.maxExp; ++k)
          w.setCoeff(k, opts.eps * rng.inSquare());
        // dominant diagonal pattern: one unit entry per row
        if (a == b % p) w.addToCoeff(0, Complex(1.0, 0.0));
      }
      m.at(b, a).ac = w;
      for (int t = 0; t < opts.atomsOnCircle; ++t) {
        const Complex loc = rng.onCircle();
        const Complex mass = opts.eps * (opts.real ? Complex(rng.uniform(0.0, 1.0), 0.0)
                                                   : rng.inSquare());
        m.at(b, a).atoms.push_back({loc, mass});
        if (opts.real && std::abs(std::imag(loc)) > 1e-9)
          m.at(b, a).atoms.push_back({std::conj(loc), std::conj(mass)});
      }
    }
  return m;
}

int supportForShape(int q, int p, int n) {
  // Row exponents reach ceil((n-1)/2q), columns ceil((n-1)/2p); the weight
  // support must bridge the gap or trailing rows/columns of the leading
  // minors fall outside the moment band and the truncation is singular.
  const int er = (n - 1 + 2 * q - 1) / (2 * q);
  const int ec = (n - 1 + 2 * p - 1) / (2 * p);
  return std::abs(er - ec) + 2;
}

MatrixFunctional factorableRandomMeasure(int q, int p, uint64_t seed, int n,
                                         const RandomMeasureOptions& opts) {
  RandomMeasureOptions o = opts;
  o.maxExp = std::max(opts.maxExp, supportForShape(q, p, n));
  for (int attempt = 0; attempt < 32; ++attempt) {
    MatrixFunctional m = randomMeasure(q, p, seed + 1000003ULL * attempt, o);
    try {
      gaussBorel(buildMomentMatrix(m, n, Side::Left), Side::Left);
      gaussBorel(buildMomentMatrix(m, n, Side::Right), Side::Right);
      return m;
    } catch (const Error& e) {
      if (e.code() != Err::SingularMinor) throw;
    }
  }
  fail(Err::SingularMinor, "no factorable random measure after 32 attempts");
}

}  // namespace cmv
