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

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semicoh/operator_core.hpp"

namespace semicoh {

/// A generator split H = A + B.
struct SplitGenerator {
  Matrix A;
  Matrix B;

  SplitGenerator(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
    require_square(A, "SplitGenerator");
    require_same_dim(A, B, "SplitGenerator");
  }

  bool anti_hermitian() const { return is_anti_hermitian(A) && is_anti_hermitian(B); }
  bool hermitian() const { return is_hermitian(A) && is_hermitian(B); }
  SplitGenerator swapped() const { return {B, A}; }
  Eigen::Index dim() const { return A.rows(); }
};

inline Matrix jordan_product(const Matrix& u, const Matrix& v) {
  require_same_dim(u, v, "jordan_product");
  return 0.5 * (u * v + v * u);
}

struct BchTerms {
  Matrix z1, z2, z3, z4;
};

/// Degree 1..4 terms of log(e^A e^B) as explicit polynomials.
inline BchTerms bch_terms(const SplitGenerator& g) {
  const Matrix& a = g.A;
  const Matrix& b = g.B;
  Matrix ab = a * b, ba = b * a, aa = a * a, bb = b * b;
  BchTerms z;
  z.z1 = a + b;
  z.z2 = 0.5 * (ab - ba);
  z.z3 = (aa * b + b * aa + bb * a + a * bb - 2.0 * a * b * a - 2.0 * b * a * b) / 12.0;
  z.z4 = (aa * bb - bb * aa - 2.0 * ab * ab + 2.0 * ba * ba) / 24.0;
  return z;
}

/// log(e^{tA} e^{tB}).
inline Matrix bch_log(const SplitGenerator& g, double t) { return logm(expm(t * g.A) * expm(t * g.B)); }

/// Generator of the Jordan-Trotter product: log(e^{tA} o e^{tB}).
inline Matrix z_plus(const SplitGenerator& g, double t) {
  return logm(jordan_product(expm(t * g.A), expm(t * g.B)));
}

/// Through fourth order: t(A+B) + t^3/12 ([A,[A,B]] + [B,[B,A]]) + t^4/8 [A,B]^2.
inline Matrix z_plus_series(const SplitGenerator& g, double t) {
  const Matrix& a = g.A;
  const Matrix& b = g.B;
  Matrix c = commutator(a, b);
  Matrix third = commutator(a, c) + commutator(b, commutator(b, a));
  return t * (a + b) + std::pow(t, 3) / 12.0 * third + std::pow(t, 4) / 8.0 * (c * c);
}

/// Average of the two BCH orderings, which keeps only odd-degree terms.
inline Matrix z_odd(const SplitGenerator& g, double t) {
  Matrix ea = expm(t * g.A), eb = expm(t * g.B);
  return 0.5 * (logm(ea * eb) + logm(eb * ea));
}

struct UPlusMinus {
  Matrix plus;
  Matrix minus;
};

inline UPlusMinus u_pm(const SplitGenerator& g, double t) {
  Matrix ea = expm(t * g.A), eb = expm(t * g.B);
  Matrix ab = ea * eb, ba = eb * ea;
  return {0.5 * (ab + ba), 0.5 * (ab - ba)};
}

/// Log-log slope fit. `exact_zero` is set when every error sits below the
/// exact-zero floor, in which case `order` is meaningless.
struct OrderFit {
  bool exact_zero = false;
  double order = 0.0;
};

inline OrderFit estimate_order(const std::vector<std::pair<double, double>>& samples) {
  require(samples.size() >= 4, ErrorCode::DegenerateGrid, "estimate_order: need at least 4 samples");
  const double floor = tolerances().exact_zero;
  size_t below = 0;
  for (auto [t, e] : samples) {
    require(t > 0.0 && std::isfinite(t) && std::isfinite(e), ErrorCode::DegenerateGrid,
            "estimate_order: samples must be finite with t > 0");
    if (e < floor) ++below;
  }
  if (below == samples.size()) return {true, 0.0};
  require(below == 0, ErrorCode::DegenerateGrid, "estimate_order: errors straddle the exact-zero floor");
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      require(samples[i].first != samples[j].first, ErrorCode::DegenerateGrid,
              "estimate_order: t values must be distinct");
  double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [t, e] : samples) {
    double x = std::log(t), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return {false, (n * sxy - sx * sy) / (n * sxx - sx * sx)};
}

inline OrderFit estimate_order(const std::vector<double>& t, const std::vector<double>& err) {
  require(t.size() == err.size(), ErrorCode::DimMismatch, "estimate_order: length mismatch");
  std::vector<std::pair<double, double>> s;
  for (size_t i = 0; i < t.size(); ++i) s.emplace_back(t[i], err[i]);
  return estimate_order(s);
}

// Symmetry classification of product formulas. Case-1 processes approximate
// e^{t(A+B)} and measure time reversal against the inverse; case-2 processes
// are (anti-)symmetrized combinations compared by signed subtraction.

enum class Process {
  Exact,
  Trotter1,
  Strang,
  Jordan,
  ExactPlusTR,
  ExactMinusTR,
  Trotter1PlusTR,
  Trotter1MinusTR,
  Trotter1PlusTRIS,
  Trotter1MinusTRIS,
  Trotter1PlusI,
  Trotter1MinusI,
};

inline constexpr std::array<Process, 12> kAllProcesses = {
    Process::Exact,          Process::Trotter1,         Process::Strang,
    Process::Jordan,         Process::ExactPlusTR,      Process::ExactMinusTR,
    Process::Trotter1PlusTR, Process::Trotter1MinusTR,  Process::Trotter1PlusTRIS,
    Process::Trotter1MinusTRIS, Process::Trotter1PlusI, Process::Trotter1MinusI,
};

constexpr std::string_view process_id(Process p) {
  switch (p) {
    case Process::Exact: return "exact";
    case Process::Trotter1: return "trotter1";
    case Process::Strang: return "strang";
    case Process::Jordan: return "jordan";
    case Process::ExactPlusTR: return "exact_plus_tr";
    case Process::ExactMinusTR: return "exact_minus_tr";
    case Process::Trotter1PlusTR: return "trotter1_plus_tr";
    case Process::Trotter1MinusTR: return "trotter1_minus_tr";
    case Process::Trotter1PlusTRIS: return "trotter1_plus_tris";
    case Process::Trotter1MinusTRIS: return "trotter1_minus_tris";
    case Process::Trotter1PlusI: return "trotter1_plus_i";
    case Process::Trotter1MinusI: return "trotter1_minus_i";
  }
  return "";
}

inline Process parse_process(std::string_view id) {
  for (Process p : kAllProcesses)
    if (process_id(p) == id) return p;
  throw Error(ErrorCode::InvalidArgument, "unknown process id '" + std::string(id) + "'");
}

/// 1 or 2.
constexpr int process_case(Process p) {
  return p == Process::Exact || p == Process::Trotter1 || p == Process::Strang || p == Process::Jordan ? 1 : 2;
}

/// The projector sign s of a case-2 row; +1 for case-1 rows.
constexpr int process_sign(Process p) {
  switch (p) {
    case Process::ExactMinusTR:
    case Process::Trotter1MinusTR:
    case Process::Trotter1MinusTRIS:
    case Process::Trotter1MinusI: return -1;
    default: return 1;
  }
}

enum class SymmetryColumn { TR, I, TRIS };

/// The sign s used for one column's residual. It is the row's projector sign,
/// except that U(t) - U(-t) stays even under A <-> B.
constexpr int column_sign(Process p, SymmetryColumn c) {
  if (p == Process::ExactMinusTR && c == SymmetryColumn::I) return 1;
  return process_sign(p);
}

/// The operator U(t; A, B) of a row.
inline Matrix process_operator(Process p, const Matrix& a, const Matrix& b, double t) {
  auto v = [&](double s) { return Matrix(expm(s * a) * expm(s * b)); };
  switch (p) {
    case Process::Exact: return expm(t * (a + b));
    case Process::Trotter1: return v(t);
    case Process::Strang: return expm(0.5 * t * a) * expm(t * b) * expm(0.5 * t * a);
    case Process::Jordan: return jordan_product(expm(t * a), expm(t * b));
    case Process::ExactPlusTR: return expm(t * (a + b)) + expm(-t * (a + b));
    case Process::ExactMinusTR: return expm(t * (a + b)) - expm(-t * (a + b));
    case Process::Trotter1PlusTR: return v(t) + v(-t);
    case Process::Trotter1MinusTR: return v(t) - v(-t);
    case Process::Trotter1PlusTRIS: return v(t) + expm(-t * b) * expm(-t * a);
    case Process::Trotter1MinusTRIS: return v(t) - expm(-t * b) * expm(-t * a);
    case Process::Trotter1PlusI: return v(t) + expm(t * b) * expm(t * a);
    case Process::Trotter1MinusI: return v(t) - expm(t * b) * expm(t * a);
  }
  throw Error(ErrorCode::InvalidArgument, "process_operator: unknown process");
}

inline Matrix checked_inverse(const Matrix& m) {
  Eigen::FullPivLU<Matrix> lu(m);
  require(lu.isInvertible(), ErrorCode::SingularInverse, "symmetry_errors: case-1 operator is singular");
  return lu.inverse();
}

struct SymmetryResiduals {
  double tr = 0.0;
  double i = 0.0;
  double tris = 0.0;
};

/// Frobenius norms of the TR, I and combined TR x I breaking errors at one t.
inline SymmetryResiduals symmetry_residuals(Process p, const SplitGenerator& g, double t) {
  const Matrix& a = g.A;
  const Matrix& b = g.B;
  Matrix u = process_operator(p, a, b, t);
  Matrix u_swap = process_operator(p, b, a, t);
  SymmetryResiduals r;
  if (process_case(p) == 1) {
    r.tr = (u - checked_inverse(process_operator(p, a, b, -t))).norm();
    r.i = (u - u_swap).norm();
    r.tris = (u - checked_inverse(process_operator(p, b, a, -t))).norm();
  } else {
    double s_tr = column_sign(p, SymmetryColumn::TR), s_i = column_sign(p, SymmetryColumn::I),
           s_tris = column_sign(p, SymmetryColumn::TRIS);
    r.tr = (u - s_tr * process_operator(p, a, b, -t)).norm();
    r.i = (u - s_i * u_swap).norm();
    r.tris = (u - s_tris * process_operator(p, b, a, -t)).norm();
  }
  return r;
}

struct SymmetryErrorReport {
  Process process = Process::Exact;
  std::vector<double> t_grid;
  std::vector<double> eps_tr;
  std::vector<double> eps_i;
  std::vector<double> eps_tris;
  OrderFit fitted_order_tr;
  OrderFit fitted_order_i;
  OrderFit fitted_order_tris;
};

inline const std::vector<double>& default_t_grid() {
  static const std::vector<double> grid = {0.2, 0.1, 0.05, 0.025, 0.0125};
  return grid;
}

/// Fits an order, or reports a row whose errors straddle the floor as
/// broken with a non-finite order.
inline OrderFit fit_or_nan(const std::vector<double>& t, const std::vector<double>& e) {
  try {
    return estimate_order(t, e);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::DegenerateGrid) throw;
    return {false, std::nan("")};
  }
}

inline SymmetryErrorReport symmetry_errors(Process p, const SplitGenerator& g,
                                           const std::vector<double>& t_grid = default_t_grid()) {
  SymmetryErrorReport rep;
  rep.process = p;
  rep.t_grid = t_grid;
  for (double t : t_grid) {
    auto r = symmetry_residuals(p, g, t);
    rep.eps_tr.push_back(r.tr);
    rep.eps_i.push_back(r.i);
    rep.eps_tris.push_back(r.tris);
  }
  rep.fitted_order_tr = fit_or_nan(t_grid, rep.eps_tr);
  rep.fitted_order_i = fit_or_nan(t_grid, rep.eps_i);
  rep.fitted_order_tris = fit_or_nan(t_grid, rep.eps_tris);
  return rep;
}

/// "sym" for a case-1 symmetry, "sym+"/"sym-" for case 2, else "broken".
inline std::string symmetry_mark(Process p, SymmetryColumn c, const OrderFit& fit) {
  if (!fit.exact_zero) return "broken";
  if (process_case(p) == 1) return "sym";
  return column_sign(p, c) > 0 ? "sym+" : "sym-";
}

}  // namespace semicoh
