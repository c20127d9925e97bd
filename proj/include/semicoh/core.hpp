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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace semicoh {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  InvalidArgument,
  DimMismatch,
  NotHermitian,
  NotUnitary,
  NotDichotomic,
  BranchCut,
  BranchAmbiguity,
  NonDiagonalizable,
  SingularInverse,
  DegenerateGrid,
  ZeroBranch,
  ZeroSuccess,
  ZeroState,
  OddLength,
  EvenOrder,
  NonFinite,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotDichotomic: return "NotDichotomic";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::SingularInverse: return "SingularInverse";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::ZeroBranch: return "ZeroBranch";
    case ErrorCode::ZeroSuccess: return "ZeroSuccess";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::EvenOrder: return "EvenOrder";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical thresholds shared by every module. `dim`-scaled checks multiply
/// the per-entry value by the matrix dimension.
struct ToleranceConfig {
  double hermitian = 1e-12;         // ||M - M^dag||_F <= hermitian * dim
  double unitary = 1e-12;           // ||M^dag M - 1||_F <= unitary * dim
  double normalization = 1e-12;     // | ||psi|| - 1 |
  double density_trace = 1e-12;
  double density_min_eig = -1e-10;
  double branch_cut = 1e-10;        // distance of an eigenvalue to (-inf, 0]
  double max_condition = 1e8;       // eigenvector matrix condition number
  double exact_zero = 1e-13;        // symmetry residual counted as exact
  double zero_branch = 1e-14;       // smallest admissible branch norm
  double dichotomic = 1e-12;        // ||a^2 - 1||_F
};

inline const ToleranceConfig& tolerances() {
  static const ToleranceConfig config{};
  return config;
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace semicoh
