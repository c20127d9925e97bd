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

#include <algorithm>
#include <cmath>
#include <vector>

#include "semicoh/pauli.hpp"

namespace semicoh {

// Single-qubit benchmark H = d1 X + d2 Y with U(t) = e^{-itH}. Writing
// a = t d1 and b = t d2, every operator below is c0 1 - i (cx X + cy Y + cz Z).

struct OneQubitSplit {
  double d1 = 0.0;
  double d2 = 0.0;

  static OneQubitSplit polar(double d, double theta) { return {d * std::cos(theta), d * std::sin(theta)}; }

  double d() const { return std::hypot(d1, d2); }
  double theta() const { return std::atan2(d2, d1); }
  Matrix hamiltonian() const { return d1 * pauli::X() + d2 * pauli::Y(); }
};

/// e^{-itH}; the identity when d = 0.
inline Matrix exact_u(const OneQubitSplit& s, double t) {
  double d = s.d();
  if (d == 0.0) return pauli::I();
  return std::cos(t * d) * pauli::I() - kI * std::sin(t * d) * s.hamiltonian() / d;
}

inline Matrix rot_x(double a) { return std::cos(a) * pauli::I() - kI * std::sin(a) * pauli::X(); }
inline Matrix rot_y(double b) { return std::cos(b) * pauli::I() - kI * std::sin(b) * pauli::Y(); }

/// (e^{-iaX} e^{-ibY} + e^{-ibY} e^{-iaX}) / 2.
inline Matrix lctu_plus(const OneQubitSplit& s, double t) {
  Matrix ex = rot_x(t * s.d1), ey = rot_y(t * s.d2);
  return 0.5 * (ex * ey + ey * ex);
}

inline Matrix lctu_minus(const OneQubitSplit& s, double t) {
  Matrix ex = rot_x(t * s.d1), ey = rot_y(t * s.d2);
  return 0.5 * (ex * ey - ey * ex);
}

/// Closed form of lctu_plus in the cos t(d1 +- d2) basis.
inline Matrix lctu_plus_closed(const OneQubitSplit& s, double t) {
  double sum = t * (s.d1 + s.d2), dif = t * (s.d1 - s.d2);
  double c0 = 0.5 * (std::cos(dif) + std::cos(sum));
  double cx = 0.5 * (std::sin(sum) + std::sin(dif));
  double cy = 0.5 * (std::sin(sum) - std::sin(dif));
  return c0 * pauli::I() - kI * (cx * pauli::X() + cy * pauli::Y());
}

/// e^{-iaX/2} e^{-ibY} e^{-iaX/2}.
inline Matrix trotter2(const OneQubitSplit& s, double t) {
  Matrix hx = rot_x(0.5 * t * s.d1);
  return hx * rot_y(t * s.d2) * hx;
}

inline Matrix trotter2_closed(const OneQubitSplit& s, double t) {
  double a = t * s.d1, b = t * s.d2;
  return std::cos(a) * std::cos(b) * pauli::I() - kI * (std::cos(b) * std::sin(a) * pauli::X() + std::sin(b) * pauli::Y());
}

/// U+ = e^{-alpha} (cos phi - i sin phi n.sigma), with n in the XY plane.
struct PolarReport {
  double alpha = 0.0;
  double phi_plus = 0.0;
  double nx = 0.0;
  double ny = 0.0;
  double p00 = 1.0;
};

struct GeneratorReport {
  PolarReport plus;
  double phi2 = 0.0;  // U(2) = cos phi2 - i sin phi2 n2.sigma
  double n2x = 0.0;
  double n2y = 0.0;
  Matrix z_plus;  // log U+
  Matrix z_2;     // log U(2)
};

inline GeneratorReport generators(const OneQubitSplit& s, double t) {
  double a = t * s.d1, b = t * s.d2;
  require(std::abs(a) < kPi / 2 && std::abs(b) < kPi / 2, ErrorCode::BranchCut,
          "generators: |t d1| and |t d2| must stay below pi/2");
  double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  GeneratorReport g;
  double p00 = 1.0 - sa * sa * sb * sb;
  g.plus.p00 = p00;
  g.plus.alpha = -0.5 * std::log(p00);
  double ea = std::exp(g.plus.alpha);
  double cos_phi = std::clamp(ea * ca * cb, -1.0, 1.0);
  g.plus.phi_plus = std::acos(cos_phi);
  double sp = std::sin(g.plus.phi_plus);
  if (sp > 0.0) {
    g.plus.nx = ea * sa * cb / sp;
    g.plus.ny = ea * ca * sb / sp;
  }
  g.phi2 = std::acos(std::clamp(ca * cb, -1.0, 1.0));
  double s2 = std::sin(g.phi2);
  if (s2 > 0.0) {
    g.n2x = cb * sa / s2;
    g.n2y = sb / s2;
  }
  using namespace pauli;
  g.z_plus = -g.plus.alpha * I() - kI * g.plus.phi_plus * (g.plus.nx * X() + g.plus.ny * Y());
  g.z_2 = -kI * g.phi2 * (g.n2x * X() + g.n2y * Y());
  return g;
}

/// ||U+ - U'+||_F with U'+ = e^{alpha} U+ the unitary polar factor.
inline double unitary_distance(const OneQubitSplit& s, double t) {
  GeneratorReport g = generators(s, t);
  Matrix up = lctu_plus(s, t);
  return (up - std::exp(g.plus.alpha) * up).norm();
}

inline double err_plus(const OneQubitSplit& s, double t) { return (lctu_plus(s, t) - exact_u(s, t)).norm(); }
inline double err_trotter2(const OneQubitSplit& s, double t) { return (trotter2(s, t) - exact_u(s, t)).norm(); }

struct SweepRow {
  double t;
  double theta;
  double err_plus;
  double err_trotter2;
};

/// Row-major over (t, theta).
inline std::vector<SweepRow> sweep_grid(const std::vector<double>& t_values, const std::vector<double>& theta_values,
                                        double d) {
  require(!t_values.empty() && !theta_values.empty(), ErrorCode::InvalidArgument, "sweep_grid: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(t_values.size() * theta_values.size());
  for (double t : t_values)
    for (double th : theta_values) {
      OneQubitSplit s = OneQubitSplit::polar(d, th);
      rows.push_back({t, th, err_plus(s, t), err_trotter2(s, t)});
    }
  return rows;
}

/// n points from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "linear_grid: need at least one point");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return v;
}

/// theta_j = -pi + 2 pi (j + 1) / n, which hits 0, +-pi/2 and pi when 4 | n.
inline std::vector<double> theta_grid(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "theta_grid: need at least one point");
  std::vector<double> v;
  for (int j = 0; j < n; ++j) v.push_back(-kPi + 2.0 * kPi * (j + 1) / n);
  return v;
}

/// Leading coefficient c of f(t) = c t^k (1 + O(t^2)) from samples at t, t/2, t/4.
template <typename F>
double richardson_coefficient(F&& f, int k, double t0 = 0.1) {
  double g[3];
  for (int i = 0; i < 3; ++i) {
    double t = t0 / std::pow(2.0, i);
    g[i] = f(t) / std::pow(t, k);
  }
  double r1 = (4.0 * g[1] - g[0]) / 3.0;
  double r2 = (4.0 * g[2] - g[1]) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace semicoh
