#include "cmvmix/banded.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

Banded::Banded(int n, int lower, int upper)
    : n_(n), lower_(lower), upper_(upper),
      data_(static_cast<size_t>(n) * (lower + upper + 1), Complex(0.0, 0.0)) {
  if (n < 0 || lower < 0 || upper < 0) fail(Err::ShapeMismatch, "bad band shape");
}

Complex Banded::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || !inBand(i, j)) return {0.0, 0.0};
  return data_[idx(i, j - i)];
}

void Banded::set(int i, int j, Complex v) {
  if (!inBand(i, j)) fail(Err::ShapeMismatch, "write outside declared band");
  data_[idx(i, j - i)] = v;
}

Eigen::MatrixXcd Banded::toDense() const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - lower_), j1 = std::min(n_ - 1, i + upper_);
    for (int j = j0; j <= j1; ++j) M(i, j) = data_[idx(i, j - i)];
  }
  return M;
}

Banded Banded::fromDense(const Eigen::MatrixXcd& M, int lower, int upper,
                         double* outOfBand) {
  const int n = static_cast<int>(M.rows());
  Banded B(n, lower, upper);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (B.inBand(i, j))
        B.set(i, j, M(i, j));
      else
        worst = std::max(worst, std::abs(M(i, j)));
    }
  if (outOfBand) *outOfBand = worst;
  return B;
}

}  // namespace cmv
