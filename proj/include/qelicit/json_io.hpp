// Copyright 2026 The qelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encoding for matrices, measurements and reports. Requires
// nlohmann/json (<json.hpp>) on the include path.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qelicit/checks.hpp"
#include "qelicit/measurement.hpp"

namespace qelicit::json {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers (shortest round-trip form); infinities and NaN
/// as the strings "inf", "-inf", "nan".
inline Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline Json number(ExtendedReal v) { return v.is_neg_inf() ? Json("-inf") : number(v.value()); }

/// {"dim": n, "re": [[...]], "im": [[...]]}
inline Json matrix(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(number(m(i, j).real()));
      ri.push_back(number(m(i, j).imag()));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Json vector(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

/// Parses the matrix form above; "im" may be omitted for real matrices.
inline ComplexMatrix parse_matrix(const Json& j) {
  if (!j.is_object() || !j.contains("re")) throw DomainError("matrix JSON needs a \"re\" array");
  const auto& re = j.at("re");
  if (!re.is_array() || re.empty()) throw DomainError("matrix JSON: \"re\" must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(re.size());
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != n) {
    throw DimensionMismatch("matrix JSON: \"dim\" does not match the row count");
  }
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = re.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw DimensionMismatch("matrix JSON: matrix must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const double a = row.at(static_cast<std::size_t>(c)).get<double>();
      const double b = im ? im->at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>() : 0.0;
      m(r, c) = Complex(a, b);
    }
  }
  return m;
}

inline DensityMatrix parse_density(const Json& j) { return DensityMatrix(parse_matrix(j)); }
inline HermitianMatrix parse_hermitian(const Json& j) { return HermitianMatrix(parse_matrix(j)); }

/// Measurement descriptor: "standard", "hadamard", "canonical",
/// {"basis": matrix} (columns of a unitary) or {"elements": [matrix, ...]}.
inline Measurement parse_measurement(const Json& j, Eigen::Index n) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "standard") return standard_basis_pvm(n);
    if (s == "canonical") return canonical_complete(n);
    if (s == "hadamard") {
      if (n != 2) throw DomainError("measurement \"hadamard\" needs dimension 2");
      return basis_pvm(UnitaryMatrix::hadamard());
    }
    throw DomainError("unknown measurement name \"" + s + "\"");
  }
  if (j.is_object() && j.contains("basis")) return basis_pvm(UnitaryMatrix(parse_matrix(j.at("basis"))));
  if (j.is_object() && j.contains("elements")) {
    std::vector<HermitianMatrix> els;
    for (const auto& e : j.at("elements")) els.emplace_back(parse_matrix(e));
    return Measurement(std::move(els));
  }
  throw DomainError("measurement JSON must be a name, {\"basis\": ...} or {\"elements\": [...]}");
}

inline Json measurement(const Measurement& mu) {
  Json els = Json::array();
  for (const auto& e : mu.elements()) els.push_back(matrix(e.matrix()));
  return Json{{"elements", std::move(els)}};
}

inline Json score_report(const ScoreReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back(Json{{"rho", matrix(x.belief)},
                     {"rho_prime", matrix(x.report)},
                     {"gap", number(x.gap)},
                     {"kind", x.kind}});
  }
  Json dims = Json::array();
  for (auto d : r.dims) dims.push_back(d);
  return Json{{"name", r.name},
              {"check", r.check},
              {"trials", r.trials},
              {"dims", std::move(dims)},
              {"pairs", r.pairs},
              {"verdict", r.pass() ? "pass" : "fail"},
              {"max_gap", number(r.max_gap)},
              {"violation_count", r.violation_count},
              {"violations", std::move(v)}};
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace qelicit::json
