#pragma once

#include <cstdint>
#include <cstdlib>

#include "cmvmix/measures.hpp"

namespace cmv {

// splitmix64 with an explicit uint-to-double mapping, so that seeded runs
// are bit-reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next();
  double uniform();                  // [0, 1)
  double uniform(double a, double b);
  Complex inSquare();                // re, im in [-1, 1]
  Complex onCircle();

 private:
  uint64_t state_;
};

struct RandomMeasureOptions {
  int maxExp = 2;        // a.c. support |k| <= maxExp
  double eps = 0.2;      // off-dominant coefficient scale
  bool real = false;     // enforce mu = conj(mu)
  int atomsOnCircle = 0; // optional unit-modulus atoms (real pairs if real)
};

// Random Laurent-weight measure with a dominant c_0 pattern injected so the
// CMV moment matrix stays factorable at moderate sizes. Deterministic in
// (q, p, seed, options).
MatrixFunctional randomMeasure(int q, int p, uint64_t seed,
                               const RandomMeasureOptions& opts = {});

// Minimal weight support needed for factorability at size n.
int supportForShape(int q, int p, int n);

// Retry wrapper: derives sub-seeds until gaussBorel succeeds at size n.
MatrixFunctional factorableRandomMeasure(int q, int p, uint64_t seed, int n,
                                         const RandomMeasureOptions& opts = {});

}  // namespace cmv
