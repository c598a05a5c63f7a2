#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cmvmix/laurent.hpp"

namespace cmv {

// Point mass at a (possibly off-circle) location. Off-circle atoms act as
// point functionals; they carry the discrete part of Geronimus data.
struct Atom {
  Complex location;
  Complex mass;
};

// Scalar functional <mu, f> = sum_k f_k w_{-k} + sum_j m_j f(loc_j),
// i.e. an absolutely continuous part w(z) dz/(2 pi i z) with Laurent
// polynomial weight, plus finitely many point masses. Finite Fourier
// support makes every integral in the library exact.
struct ScalarFunctional {
  Laurent ac;
  std::vector<Atom> atoms;

  ScalarFunctional() = default;
  explicit ScalarFunctional(Laurent w) : ac(std::move(w)) {}
  ScalarFunctional(Laurent w, std::vector<Atom> a);

  // n-th moment <mu, z^n>.
  Complex moment(int n) const;
  // <mu, p> for a Laurent polynomial p.
  Complex apply(const Laurent& p) const;

  void validate() const;
};

// q x p grid of scalar functionals; the source of all CMV moments.
class MatrixFunctional {
 public:
  MatrixFunctional() = default;
  MatrixFunctional(int q, int p);

  int q() const { return q_; }
  int p() const { return p_; }
  ScalarFunctional& at(int row, int col) { return grid_[row * p_ + col]; }
  const ScalarFunctional& at(int row, int col) const { return grid_[row * p_ + col]; }

  // q x p matrix c_n.
  Eigen::MatrixXcd moment(int n) const;

  // Row b multiplied by W[b] (Laurent product on the a.c. part, mass
  // rescaling on atoms). Atoms whose new mass drops below 1e-14 of the
  // original magnitude are removed; this is what annihilates Geronimus
  // atoms sitting at roots of W.
  MatrixFunctional scaleRows(const std::vector<Laurent>& Wdiag) const;

  MatrixFunctional conjugate() const;
  MatrixFunctional transpose() const;
  MatrixFunctional adjoint() const;

  // max_{|n|<=bound} |c_n - conj(c_{-n})|
  double realDefect(int bound) const;

 private:
  int q_ = 0;
  int p_ = 0;
  std::vector<ScalarFunctional> grid_;
};

}  // namespace cmv
