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

#include <cmath>

#include "semicoh/operator_core.hpp"
#include "semicoh/rng.hpp"

namespace semicoh {

// One-ancilla interference gadget: G on the ancilla, U controlled on |0>,
// V controlled on |1>, then G^dag. The joint register is never built; each
// ancilla outcome maps to an operator on the principal system.

/// Single-qubit ancilla gate, G = [[g00, g01], [g10, g11]].
struct AncillaGate {
  cplx g00, g01, g10, g11;

  static AncillaGate hadamard() {
    double h = 1.0 / std::sqrt(2.0);
    return {h, h, h, -h};
  }

  static AncillaGate identity() { return {1.0, 0.0, 0.0, 1.0}; }

  static AncillaGate from_matrix(const Matrix& m) {
    require(m.rows() == 2 && m.cols() == 2, ErrorCode::DimMismatch, "AncillaGate: need a 2x2 matrix");
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  Matrix matrix() const {
    Matrix m(2, 2);
    m << g00, g01, g10, g11;
    return m;
  }

  bool is_unitary() const {
    double tol = tolerances().unitary;
    return std::abs(std::norm(g00) + std::norm(g10) - 1.0) <= tol &&
           std::abs(std::norm(g01) + std::norm(g11) - 1.0) <= tol &&
           std::abs(g00 * std::conj(g01) + g10 * std::conj(g11)) <= tol;
  }
};

struct GadgetBranches {
  Vector branch0;
  Vector branch1;
};

struct GadgetOutcome {
  int ancilla_bit = 0;
  double probability = 0.0;
  Vector post_state;
};

inline void check_gadget_inputs(const Matrix& u, const Matrix& v, const Vector& psi, int ancilla_in,
                                const char* who) {
  require_unitary(u, who);
  require_unitary(v, who);
  require_same_dim(u, v, who);
  require(psi.size() == u.rows(), ErrorCode::DimMismatch, std::string(who) + ": state dimension mismatch");
  require_normalized(psi, who);
  require(ancilla_in == 0 || ancilla_in == 1, ErrorCode::InvalidArgument,
          std::string(who) + ": ancilla input must be 0 or 1");
}

/// Hadamard gadget. With the ancilla in |0> the branches are U+ psi and U- psi,
/// U+- = (U +- V)/2; with |1> they swap.
inline GadgetBranches apply_gadget(const Matrix& u, const Matrix& v, const Vector& psi, int ancilla_in = 0) {
  check_gadget_inputs(u, v, psi, ancilla_in, "apply_gadget");
  Vector up = u * psi, vp = v * psi;
  Vector plus = 0.5 * (up + vp), minus = 0.5 * (up - vp);
  if (ancilla_in == 0) return {plus, minus};
  return {minus, plus};
}

struct TransitionProbs {
  double p00 = 1.0;
  double p01 = 0.0;
};

inline TransitionProbs transition_probs(const Matrix& u, const Matrix& v, const Vector& psi) {
  check_gadget_inputs(u, v, psi, 0, "transition_probs");
  double overlap = psi.dot(v.adjoint() * (u * psi)).real();
  double p00 = 0.5 * (1.0 + overlap);
  return {p00, 1.0 - p00};
}

struct GeneralBranches {
  Vector branch0;
  Vector branch1;
  double p_flip = 0.0;
};

/// Gadget with G and G^dag in place of the two Hadamards. Branch b collects
/// sum_a (G^dag)_{b a} G_{a, in} X_a psi with X_0 = U and X_1 = V.
inline GeneralBranches apply_gadget_general(const AncillaGate& g, const Matrix& u, const Matrix& v,
                                            const Vector& psi, int ancilla_in = 0) {
  require(g.is_unitary(), ErrorCode::NotUnitary, "apply_gadget_general: ancilla gate is not unitary");
  check_gadget_inputs(u, v, psi, ancilla_in, "apply_gadget_general");
  Matrix gm = g.matrix();
  Matrix gd = gm.adjoint();
  Vector x[2] = {u * psi, v * psi};
  Vector br[2];
  for (int b = 0; b < 2; ++b) {
    br[b] = gd(b, 0) * gm(0, ancilla_in) * x[0] + gd(b, 1) * gm(1, ancilla_in) * x[1];
  }
  double p_flip = br[1 - ancilla_in].squaredNorm();
  return {br[0], br[1], p_flip};
}

/// Draws one ancilla outcome with the exact branch probabilities.
inline GadgetOutcome sample_branches(const Vector& branch0, const Vector& branch1, RngStream& rng) {
  double p0 = branch0.squaredNorm();
  double p1 = branch1.squaredNorm();
  double total = p0 + p1;
  int bit = rng.uniform() * total < p0 ? 0 : 1;
  const Vector& chosen = bit == 0 ? branch0 : branch1;
  double n = chosen.norm();
  require(n >= tolerances().zero_branch, ErrorCode::ZeroBranch, "sample_step: drawn branch has zero norm");
  return {bit, (bit == 0 ? p0 : p1) / total, chosen / n};
}

inline GadgetOutcome sample_step(const Matrix& u, const Matrix& v, const Vector& psi, int ancilla_in,
                                 RngStream& rng) {
  auto br = apply_gadget(u, v, psi, ancilla_in);
  return sample_branches(br.branch0, br.branch1, rng);
}

enum class ResetPolicy { Reset, Carry };

}  // namespace semicoh
