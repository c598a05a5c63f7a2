#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cmvmix/laurent.hpp"

namespace cmv {

// Band-compressed complex matrix: entries with j - i in [-lower, upper];
// everything outside the declared band is identically zero.
class Banded {
 public:
  Banded() = default;
  Banded(int n, int lower, int upper);

  int n() const { return n_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }

  bool inBand(int i, int j) const {
    const int d = j - i;
    return d >= -lower_ && d <= upper_;
  }
  Complex at(int i, int j) const;
  void set(int i, int j, Complex v);

  Eigen::MatrixXcd toDense() const;

  // Compresses a dense matrix into the declared band; the largest
  // out-of-band magnitude is reported through *outOfBand (band purity).
  static Banded fromDense(const Eigen::MatrixXcd& M, int lower, int upper,
                          double* outOfBand = nullptr);

  // Row range on which a band identity is truncation-exact: rows i with
  // [i - lower, i + upper] inside [0, n).
  int interiorBegin() const { return lower_; }
  int interiorEnd() const { return n_ - upper_; }

 private:
  int n_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<Complex> data_;  // row-major, width lower+upper+1

  int idx(int i, int d) const { return i * (lower_ + upper_ + 1) + (d + lower_); }
};

}  // namespace cmv
