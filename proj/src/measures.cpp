#include "cmvmix/measures.hpp"

#include <cmath>

#include "cmvmix/errors.hpp"

namespace cmv {

ScalarFunctional::ScalarFunctional(Laurent w, std::vector<Atom> a)
    : ac(std::move(w)), atoms(std::move(a)) {
  validate();
}

void ScalarFunctional::validate() const {
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (std::abs(atoms[i].location) == 0.0)
      fail(Err::ZeroArgument, "atom at the origin");
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (std::abs(atoms[i].location - atoms[j].location) == 0.0)
        fail(Err::ShapeMismatch, "coincident atom locations");
  }
}

Complex ScalarFunctional::moment(int n) const {
  Complex c = ac.coeff(-n);
  for (const Atom& a : atoms) c += a.mass * std::pow(a.location, n);
  return c;
}

Complex ScalarFunctional::apply(const Laurent& p) const {
  Complex v(0.0, 0.0);
  for (const auto& [k, pk] : p.coeffs()) v += pk * ac.coeff(-k);
  for (const Atom& a : atoms) v += a.mass * p.evaluate(a.location);
  return v;
}

MatrixFunctional::MatrixFunctional(int q, int p) : q_(q), p_(p), grid_(q * p) {
  if (q < 1 || p < 1) fail(Err::ShapeMismatch, "measure grid needs q,p >= 1");
}

Eigen::MatrixXcd MatrixFunctional::moment(int n) const {
  Eigen::MatrixXcd c(q_, p_);
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) c(b, a) = at(b, a).moment(n);
  return c;
}

MatrixFunctional MatrixFunctional::scaleRows(const std::vector<Laurent>& Wdiag) const {
  if (static_cast<int>(Wdiag.size()) != q_)
    fail(Err::ShapeMismatch, "row scaling needs one Laurent polynomial per row");
  MatrixFunctional r(q_, p_);
  for (int b = 0; b < q_; ++b) {
    for (int a = 0; a < p_; ++a) {
      const ScalarFunctional& src = at(b, a);
      ScalarFunctional& dst = r.at(b, a);
      dst.ac = src.ac * Wdiag[b];
      for (const Atom& atom : src.atoms) {
        Complex m = atom.mass * Wdiag[b].evaluate(atom.location);
        if (std::abs(m) >= 1e-14 * std::abs(atom.mass))
          dst.atoms.push_back({atom.location, m});
      }
    }
  }
  return r;
}

MatrixFunctional MatrixFunctional::conjugate() const {
  // c_n(conj mu) = conj(c_{-n}(mu)): the weight reflects coefficientwise and
  // atoms move to 1/conj(location) (fixed points of 𝕋), with conjugated mass.
  MatrixFunctional r(q_, p_);
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) {
      const ScalarFunctional& src = at(b, a);
      ScalarFunctional& dst = r.at(b, a);
      dst.ac = src.ac.conjReflect();
      for (const Atom& atom : src.atoms)
        dst.atoms.push_back(
            {Complex(1.0, 0.0) / std::conj(atom.location), std::conj(atom.mass)});
    }
  return r;
}

MatrixFunctional MatrixFunctional::transpose() const {
  MatrixFunctional r(p_, q_);
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) r.at(a, b) = at(b, a);
  return r;
}

MatrixFunctional MatrixFunctional::adjoint() const { return conjugate().transpose(); }

double MatrixFunctional::realDefect(int bound) const {
  double worst = 0.0;
  for (int n = -bound; n <= bound; ++n) {
    Eigen::MatrixXcd d = moment(n) - moment(-n).conjugate();
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cmv
