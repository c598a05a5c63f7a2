#include "cmvmix/json_io.hpp"

#include <cstdio>

#include "cmvmix/errors.hpp"

namespace cmv {

json laurentToJson(const Laurent& p) {
  json coeffs = json::array();
  for (const auto& [k, c] : p.coeffs())
    coeffs.push_back({k, c.real(), c.imag()});
  return json{{"coeffs", coeffs}};
}

Laurent laurentFromJson(const json& j) {
  Laurent p;
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    fail(Err::BadConfig, "laurent: missing coeffs array");
  for (const auto& t : j["coeffs"]) {
    if (!t.is_array() || t.size() != 3)
      fail(Err::BadConfig, "laurent: coefficient entries are [k, re, im]");
    p.addToCoeff(t[0].get<int>(), {t[1].get<double>(), t[2].get<double>()});
  }
  return p;
}

json measureToJson(const MatrixFunctional& m) {
  json entries = json::array();
  for (int b = 0; b < m.q(); ++b)
    for (int a = 0; a < m.p(); ++a) {
      const ScalarFunctional& s = m.at(b, a);
      json ac = json::array();
      for (const auto& [k, c] : s.ac.coeffs()) ac.push_back({k, c.real(), c.imag()});
      json atoms = json::array();
      for (const Atom& atom : s.atoms)
        atoms.push_back({atom.location.real(), atom.location.imag(),
                         atom.mass.real(), atom.mass.imag()});
      entries.push_back({{"row", b + 1}, {"col", a + 1}, {"ac_coeffs", ac}, {"atoms", atoms}});
    }
  return json{{"q", m.q()}, {"p", m.p()}, {"entries", entries}};
}

MatrixFunctional measureFromJson(const json& j) {
  if (!j.contains("q") || !j.contains("p"))
    fail(Err::BadConfig, "measure: q and p are required");
  const int q = j["q"].get<int>(), p = j["p"].get<int>();
  if (q < 1 || p < 1) fail(Err::BadConfig, "measure: q and p must be positive");
  MatrixFunctional m(q, p);
  if (!j.contains("entries")) return m;
  for (const auto& e : j["entries"]) {
    const int row = e.value("row", 0), col = e.value("col", 0);
    if (row < 1 || row > q || col < 1 || col > p)
      fail(Err::BadConfig, "measure: entry row/col out of range");
    ScalarFunctional& s = m.at(row - 1, col - 1);
    if (e.contains("ac_coeffs"))
      for (const auto& t : e["ac_coeffs"]) {
        if (!t.is_array() || t.size() != 3)
          fail(Err::BadConfig, "measure: ac_coeffs entries are [k, re, im]");
        s.ac.addToCoeff(t[0].get<int>(), {t[1].get<double>(), t[2].get<double>()});
      }
    if (e.contains("atoms"))
      for (const auto& t : e["atoms"]) {
        if (!t.is_array() || t.size() != 4)
          fail(Err::BadConfig, "measure: atoms entries are [re_loc, im_loc, re_mass, im_mass]");
        s.atoms.push_back({{t[0].get<double>(), t[1].get<double>()},
                           {t[2].get<double>(), t[3].get<double>()}});
      }
    s.validate();
  }
  return m;
}

namespace {
const char* kindName(FamilyKind k) {
  switch (k) {
    case FamilyKind::B: return "B";
    case FamilyKind::A: return "A";
    case FamilyKind::Ascr: return "Ascr";
    case FamilyKind::Bscr: return "Bscr";
  }
  return "?";
}
}  // namespace

json familyToJson(const Family& f) {
  json entries = json::array();
  for (int n = 0; n < f.count; ++n)
    for (int c = 0; c < f.components; ++c) {
      json coeffs = json::array();
      for (const auto& [k, v] : f.at(n, c).coeffs())
        coeffs.push_back({k, v.real(), v.imag()});
      entries.push_back({{"index", n}, {"component", c + 1}, {"coeffs", coeffs}});
    }
  return json{{"kind", kindName(f.kind)}, {"n", f.count}, {"entries", entries}};
}

json bandedToJson(const Banded& b) {
  json rows = json::array();
  for (int i = 0; i < b.n(); ++i) {
    const int j0 = std::max(0, i - b.lower());
    const int j1 = std::min(b.n() - 1, i + b.upper());
    json row = json::array();
    row.push_back(j0);
    for (int j = j0; j <= j1; ++j) {
      row.push_back(b.at(i, j).real());
      row.push_back(b.at(i, j).imag());
    }
    rows.push_back(row);
  }
  return json{{"n", b.n()}, {"lower", b.lower()}, {"upper", b.upper()}, {"rows", rows}};
}

Perturbation perturbationFromJson(const json& j) {
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    fail(Err::BadConfig, "perturbation: rows array required");
  std::vector<BalancedLaurent> entries;
  for (const auto& r : j["rows"]) {
    Complex leading(1.0, 0.0);
    if (r.contains("leading"))
      leading = {r["leading"][0].get<double>(), r["leading"][1].get<double>()};
    std::vector<Complex> roots;
    if (!r.contains("roots")) fail(Err::BadConfig, "perturbation: roots required per row");
    for (const auto& t : r["roots"])
      roots.push_back({t[0].get<double>(), t[1].get<double>()});
    entries.push_back(makeBalanced(leading, std::move(roots)));
  }
  return makePerturbation(std::move(entries));
}

Eigen::MatrixXcd massesFromJson(const json& j, int q, int p, int d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q * 2 * d, p);
  if (!j.contains("masses")) return m;
  for (const auto& t : j["masses"]) {
    if (!t.is_array() || t.size() != 5)
      fail(Err::BadConfig, "perturbation: masses entries are [b, a, j, re, im]");
    const int b = t[0].get<int>(), a = t[1].get<int>(), jj = t[2].get<int>();
    if (b < 1 || b > q || a < 1 || a > p || jj < 1 || jj > 2 * d)
      fail(Err::BadConfig, "perturbation: mass index out of range");
    m((b - 1) * 2 * d + (jj - 1), a - 1) = {t[3].get<double>(), t[4].get<double>()};
  }
  return m;
}

json reportToJson(const std::vector<CheckResult>& checks, double seconds) {
  json arr = json::array();
  bool all = true;
  for (const CheckResult& c : checks) {
    arr.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
    all = all && c.pass;
  }
  return json{{"checks", arr}, {"all_pass", all}, {"elapsed_seconds", seconds}};
}

std::string reportToText(const std::vector<CheckResult>& checks) {
  std::string out;
  char line[256];
  for (const CheckResult& c : checks) {
    std::snprintf(line, sizeof line, "%-34s residual %.3e  tol %.1e  %s\n",
                  c.name.c_str(), c.residual, c.tolerance, c.pass ? "pass" : "FAIL");
    out += line;
  }
  return out;
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace cmv
