#pragma once

#include <json.hpp>
#include <string>

#include "cmvmix/banded.hpp"
#include "cmvmix/cmv_core.hpp"
#include "cmvmix/measures.hpp"
#include "cmvmix/transforms.hpp"

namespace cmv {

using json = nlohmann::ordered_json;

// {"coeffs": [[k, re, im], ...]} sorted ascending by k
json laurentToJson(const Laurent& p);
Laurent laurentFromJson(const json& j);

// {"q":..,"p":..,"entries":[{"row","col","ac_coeffs":[[k,re,im]..],
//  "atoms":[[re_loc,im_loc,re_mass,im_mass]..]}..]}
json measureToJson(const MatrixFunctional& m);
MatrixFunctional measureFromJson(const json& j);

// {"kind":..,"n":..,"entries":[{"index","component","coeffs":[[k,re,im]..]}..]}
json familyToJson(const Family& f);

// {"n":..,"lower":..,"upper":..,"rows":[[j0, re0, im0, re1, im1, ...]..]}
json bandedToJson(const Banded& b);

// Perturbation spec: {"d":..,"rows":[{"leading":[re,im],
//   "roots":[[re,im]...]}...], "masses":[[b,a,j,re,im]...]}
Perturbation perturbationFromJson(const json& j);
Eigen::MatrixXcd massesFromJson(const json& j, int q, int p, int d);

// Verification report entry.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

json reportToJson(const std::vector<CheckResult>& checks, double seconds);
std::string reportToText(const std::vector<CheckResult>& checks);

// Fixed 17-significant-digit formatting for CSV exports.
std::string formatDouble(double v);

}  // namespace cmv
