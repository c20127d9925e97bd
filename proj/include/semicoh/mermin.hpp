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
#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "semicoh/gadget.hpp"
#include "semicoh/pauli.hpp"
#include "semicoh/rng.hpp"

namespace semicoh {

// Mermin and Svetlichny polynomials over n qubits. Qubit l is tensor factor
// l, counted from the most significant end.

/// n pairs (a_l, a'_l) of single-qubit Hermitian involutions.
struct MerminSetting {
  std::vector<std::pair<Matrix, Matrix>> pairs;

  MerminSetting() = default;
  explicit MerminSetting(std::vector<std::pair<Matrix, Matrix>> p) : pairs(std::move(p)) { validate(); }

  int n() const { return static_cast<int>(pairs.size()); }

  void validate() const {
    require(!pairs.empty() && pairs.size() <= 10, ErrorCode::InvalidArgument, "MerminSetting: need 1 to 10 qubits");
    for (const auto& [a, b] : pairs) {
      for (const Matrix* m : {&a, &b}) {
        require(m->rows() == 2 && m->cols() == 2, ErrorCode::DimMismatch, "MerminSetting: observables must be 2x2");
        require_hermitian(*m, "MerminSetting");
        require((*m * *m - pauli::I()).norm() <= tolerances().dichotomic, ErrorCode::NotDichotomic,
                "MerminSetting: observable does not square to the identity");
      }
    }
  }

  /// a = X, a' = Y on every qubit.
  static MerminSetting xy(int n) {
    return MerminSetting(std::vector<std::pair<Matrix, Matrix>>(static_cast<size_t>(n), {pauli::X(), pauli::Y()}));
  }

  /// Random axes: a = W Z W^dag for Haar-random W.
  static MerminSetting random(int n, RngStream& rng) {
    std::vector<std::pair<Matrix, Matrix>> p;
    for (int l = 0; l < n; ++l) {
      Matrix w1 = random_unitary(2, rng), w2 = random_unitary(2, rng);
      Matrix a = w1 * pauli::Z() * w1.adjoint(), b = w2 * pauli::Z() * w2.adjoint();
      p.emplace_back(0.5 * (a + a.adjoint()), 0.5 * (b + b.adjoint()));
    }
    return MerminSetting(std::move(p));
  }

  MerminSetting primes_exchanged() const {
    MerminSetting s;
    for (const auto& [a, b] : pairs) s.pairs.emplace_back(b, a);
    return s;
  }
};

struct MerminOperators {
  Matrix M;
  Matrix M_prime;
};

/// Mermin's A_n from the two-product form.
inline Matrix mermin_A_product(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "mermin_A: n must be positive");
  Matrix up = Matrix::Identity(1, 1), dn = Matrix::Identity(1, 1);
  for (int l = 0; l < n; ++l) {
    up = kron(up, Matrix(pauli::X() + kI * pauli::Y()));
    dn = kron(dn, Matrix(pauli::X() - kI * pauli::Y()));
  }
  return (up - dn) / (2.0 * kI);
}

/// A_n as the signed sum of X/Y strings with an odd number of Y letters.
inline Matrix mermin_A_pauli_sum(int n, int* term_count = nullptr) {
  require(n >= 1, ErrorCode::InvalidArgument, "mermin_A: n must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix a = Matrix::Zero(dim, dim);
  int terms = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int ny = std::popcount(mask);
    if (ny % 2 == 0) continue;
    std::string letters;
    for (int l = 0; l < n; ++l) letters += (mask >> (n - 1 - l)) & 1u ? 'Y' : 'X';
    double sign = ((ny - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    a += sign * PauliString(letters).matrix();
    ++terms;
  }
  if (term_count) *term_count = terms;
  return a;
}

inline Matrix mermin_A(int n) { return mermin_A_product(n); }

/// (|0...0> + phase |1...1>)/sqrt2.
inline Vector ghz_state(int n, cplx phase) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[0] = 1.0 / std::sqrt(2.0);
  v[v.size() - 1] = phase / std::sqrt(2.0);
  return v;
}

/// GHZ pair diagonalizing M_n in the XY setting, phase e^{i pi (n-1)/4}.
inline Vector ghz_tilde(int n, int sign = +1) {
  return ghz_state(n, static_cast<double>(sign) * std::polar(1.0, kPi * (n - 1) / 4.0));
}

/// M_k = (M_{k-1} (a_k + a'_k) + M'_{k-1} (a_k - a'_k)) / 2 and
/// M'_k = (M'_{k-1} (a_k + a'_k) - M_{k-1} (a_k - a'_k)) / 2.
inline MerminOperators mermin_recursive(const MerminSetting& s) {
  s.validate();
  MerminOperators m{s.pairs[0].first, s.pairs[0].second};
  for (int k = 1; k < s.n(); ++k) {
    const auto& [a, b] = s.pairs[static_cast<size_t>(k)];
    Matrix sum = a + b, dif = a - b;
    Matrix mk = 0.5 * (kron(m.M, sum) + kron(m.M_prime, dif));
    Matrix mpk = 0.5 * (kron(m.M_prime, sum) - kron(m.M, dif));
    m = {std::move(mk), std::move(mpk)};
  }
  return m;
}

inline std::pair<Matrix, Matrix> mermin_products(const MerminSetting& s) {
  Matrix p = Matrix::Identity(1, 1), q = Matrix::Identity(1, 1);
  for (const auto& [a, b] : s.pairs) {
    p = kron(p, Matrix(a + kI * b));
    q = kron(q, Matrix(b + kI * a));
  }
  return {p, q};
}

inline MerminOperators mermin_closed(const MerminSetting& s) {
  s.validate();
  const int k = s.n();
  auto [p, q] = mermin_products(s);
  cplx c = std::pow(cplx(1.0, -1.0), k + 1) / std::pow(2.0, k + 1);
  return {c * (kI * p + q), c * (p + kI * q)};
}

/// 2^{-k/2} prod (a_l e^{i pi Y/4} + a'_l e^{-i pi Y/4}) acting on (1, 1).
inline MerminOperators transfer_matrix_eval(const MerminSetting& s) {
  s.validate();
  const double h = 1.0 / std::sqrt(2.0);
  // e^{+i pi Y/4} and e^{-i pi Y/4} as real 2x2 arrays.
  const double ep[2][2] = {{h, h}, {-h, h}};
  const double em[2][2] = {{h, -h}, {h, h}};
  std::array<Matrix, 2> v = {Matrix::Identity(1, 1), Matrix::Identity(1, 1)};
  for (const auto& [a, b] : s.pairs) {
    std::array<Matrix, 2> next;
    for (int i = 0; i < 2; ++i) {
      Matrix acc = Matrix::Zero(v[0].rows() * 2, v[0].cols() * 2);
      for (int j = 0; j < 2; ++j) acc += ep[i][j] * kron(v[static_cast<size_t>(j)], a) + em[i][j] * kron(v[static_cast<size_t>(j)], b);
      next[static_cast<size_t>(i)] = h * acc;
    }
    v = std::move(next);
  }
  return {v[0], v[1]};
}

/// Symmetric Svetlichny form, defined for odd n.
inline Matrix svetlichny(const MerminSetting& s) {
  s.validate();
  const int k = s.n();
  require(k % 2 == 1, ErrorCode::EvenOrder, "svetlichny: the symmetric form needs an odd number of qubits");
  auto [p, q] = mermin_products(s);
  cplx c = std::pow(cplx(1.0, -1.0), k) / std::pow(2.0, k + 1);
  return c * (p + q);
}

inline double expectation(const Matrix& op, const Vector& psi) { return psi.dot(op * psi).real(); }

struct ProductMeasurement {
  double p_all_zero = 0.0;  // simulated post-selection probability
  double p_formula = 0.0;   // 2^{-n} <prod (1 + (i/2)[a_l, a'_l])>
  Vector phi;
};

/// Applies (a_l + i a'_l)/2 qubit by qubit through the gadget with U = a_l,
/// V = i a'_l, keeping the all-zero readout.
inline ProductMeasurement measure_product_circuit(const MerminSetting& s, const Vector& psi) {
  s.validate();
  const int n = s.n();
  require(psi.size() == (Eigen::Index{1} << n), ErrorCode::DimMismatch, "measure_product_circuit: state dimension mismatch");
  require_normalized(psi, "measure_product_circuit");
  Vector v = psi;
  double p = 1.0;
  Matrix formula = Matrix::Identity(1, 1);
  for (int l = 0; l < n; ++l) {
    const auto& [a, b] = s.pairs[static_cast<size_t>(l)];
    Matrix u = pauli::embed(a, l, n), w = pauli::embed(kI * b, l, n);
    GadgetBranches br = apply_gadget(u, w, v, 0);
    double pl = br.branch0.squaredNorm();
    p *= pl;
    require(p >= 1e-14, ErrorCode::ZeroSuccess, "measure_product_circuit: post-selection probability vanished");
    v = br.branch0 / std::sqrt(pl);
    formula = kron(formula, Matrix(pauli::I() + 0.5 * kI * commutator(a, b)));
  }
  ProductMeasurement out;
  out.p_all_zero = p;
  out.p_formula = std::pow(2.0, -n) * psi.dot(formula * psi).real();
  out.phi = v;
  return out;
}

struct MerminMeasurement {
  double p0 = 0.0;
  Vector phi;
  double bound = 0.0;  // >= |<M_n>|
};

/// Block-encodes Mbar = 2^{-(n+1)/2} M_n and post-selects the zero readout.
inline MerminMeasurement measure_mermin_circuit(const MerminSetting& s, const Vector& psi) {
  const int n = s.n();
  require(psi.size() == (Eigen::Index{1} << n), ErrorCode::DimMismatch, "measure_mermin_circuit: state dimension mismatch");
  require_normalized(psi, "measure_mermin_circuit");
  Matrix mbar = std::pow(2.0, -(n + 1) / 2.0) * mermin_closed(s).M;
  Vector branch = mbar * psi;
  MerminMeasurement out;
  out.p0 = branch.squaredNorm();
  require(out.p0 >= 1e-14, ErrorCode::ZeroSuccess, "measure_mermin_circuit: post-selection probability vanished");
  out.phi = branch / std::sqrt(out.p0);
  out.bound = std::pow(2.0, (n - 1) / 2.0) * std::sqrt(4.0 * out.p0);
  return out;
}

struct MeasurementComparison {
  std::array<double, 2> ancilla_probs{};
  std::array<double, 2> direct_probs{};
  double tv_distance = 0.0;
  double max_state_distance = 0.0;  // over outcomes with nonzero probability
  bool equivalent = false;
};

/// X_l then the ancilla gadget with U = 1, V = Z_l, against X_l then a direct
/// computational-basis measurement of qubit l.
inline MeasurementComparison measurement_equivalence_check(const Vector& psi, int l) {
  require_normalized(psi, "measurement_equivalence_check");
  const int n = std::countr_zero(static_cast<uint64_t>(psi.size()));
  require((Eigen::Index{1} << n) == psi.size(), ErrorCode::DimMismatch, "measurement_equivalence_check: dimension is not a power of 2");
  require(l >= 0 && l < n, ErrorCode::InvalidArgument, "measurement_equivalence_check: qubit index out of range");
  Vector flipped = pauli::embed(pauli::X(), l, n) * psi;
  GadgetBranches br = apply_gadget(identity(psi.size()), pauli::embed(pauli::Z(), l, n), flipped, 0);
  MeasurementComparison c;
  Vector direct[2] = {Vector::Zero(psi.size()), Vector::Zero(psi.size())};
  for (Eigen::Index s = 0; s < psi.size(); ++s) {
    int bit = static_cast<int>((s >> (n - 1 - l)) & 1);
    direct[bit][s] = flipped[s];
  }
  const Vector* anc[2] = {&br.branch0, &br.branch1};
  for (int b = 0; b < 2; ++b) {
    c.ancilla_probs[static_cast<size_t>(b)] = anc[b]->squaredNorm();
    c.direct_probs[static_cast<size_t>(b)] = direct[b].squaredNorm();
    c.tv_distance += 0.5 * std::abs(c.ancilla_probs[static_cast<size_t>(b)] - c.direct_probs[static_cast<size_t>(b)]);
    if (c.direct_probs[static_cast<size_t>(b)] > 1e-14 && c.ancilla_probs[static_cast<size_t>(b)] > 1e-14) {
      Vector x = *anc[b] / anc[b]->norm(), y = direct[b] / direct[b].norm();
      c.max_state_distance = std::max(c.max_state_distance, (pure_density(x) - pure_density(y)).norm());
    }
  }
  c.equivalent = c.tv_distance <= 1e-12 && c.max_state_distance <= 1e-12;
  return c;
}

/// Swap-test estimate of |<a|b>|^2 from `shots` ancilla readouts; exact when
/// shots is 0. The ancilla reads 0 with probability (1 + |<a|b>|^2)/2.
inline double swap_test_overlap(const Vector& a, const Vector& b, int shots, RngStream* rng) {
  double f = std::norm(a.dot(b));
  if (shots <= 0 || rng == nullptr) return f;
  double p0 = 0.5 * (1.0 + f);
  int zeros = 0;
  for (int s = 0; s < shots; ++s)
    if (rng->uniform() < p0) ++zeros;
  return 2.0 * zeros / shots - 1.0;
}

}  // namespace semicoh
