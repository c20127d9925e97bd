// Copyright 2026 The semicoh Authors
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

#include <fstream>
#include <string>

#include <json.hpp>

#include "semicoh/operator_core.hpp"

namespace semicoh {

// Matrix files are {"dim": n, "re": [...], "im": [...]}, row-major. Vectors
// use the same layout with the entry count equal to dim.

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("re") && j.contains("im"), ErrorCode::Io,
          "matrix file needs dim, re and im");
  auto n = j.at("dim").get<long>();
  require(n >= 1, ErrorCode::Io, "matrix dim must be positive");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(re.is_array() && im.is_array() && static_cast<long>(re.size()) == n * n &&
              static_cast<long>(im.size()) == n * n,
          ErrorCode::Io, "matrix entry count must equal dim^2");
  Matrix m(n, n);
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < n; ++k) m(i, k) = cplx(re[i * n + k].get<double>(), im[i * n + k].get<double>());
  return m;
}

inline Vector vector_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("re") && j.contains("im"), ErrorCode::Io,
          "state file needs dim, re and im");
  auto n = j.at("dim").get<long>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(n >= 1 && static_cast<long>(re.size()) == n && static_cast<long>(im.size()) == n, ErrorCode::Io,
          "state entry count must equal dim");
  Vector v(n);
  for (long i = 0; i < n; ++i) v[i] = cplx(re[i].get<double>(), im[i].get<double>());
  return v;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
}

inline Matrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

}  // namespace semicoh
