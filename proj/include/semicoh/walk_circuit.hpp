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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semicoh/gadget.hpp"
#include "semicoh/pauli.hpp"
#include "semicoh/rng.hpp"

namespace semicoh {

// Gate-level form of the single-qubit walk. Qubit 0 is the ancilla, qubit 1
// the system written in the energy eigenbasis (|0> = |g>), so the controlled
// evolutions reduce to CX, two Z rotations and CX.

enum class GateKind { H, CX, RY, RZ, Measure };

struct Gate {
  GateKind kind;
  int qubit = 0;   // target, or control for CX
  int target = -1; // CX target
  double angle = 0.0;
};

/// Gates sharing a time slice.
using Moment = std::vector<Gate>;

inline std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::CX: return "CX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::Measure: return "M";
  }
  return "?";
}

/// One prep moment, then six moments per iteration. The two Z rotations share
/// a moment, so an iteration holds seven gates.
inline std::vector<Moment> compile_1q_walk_circuit(double omega_plus, double omega_minus, double theta,
                                                   double /*phi*/, double t, int r) {
  require(r >= 0, ErrorCode::InvalidArgument, "compile_1q_walk_circuit: r must be nonnegative");
  std::vector<Moment> c;
  c.push_back({{GateKind::RY, 1, -1, theta}});
  for (int k = 0; k < r; ++k) {
    c.push_back({{GateKind::H, 0}});
    c.push_back({{GateKind::CX, 0, 1}});
    c.push_back({{GateKind::RZ, 0, -1, 2.0 * omega_plus * t}, {GateKind::RZ, 1, -1, 2.0 * omega_minus * t}});
    c.push_back({{GateKind::CX, 0, 1}});
    c.push_back({{GateKind::H, 0}});
    c.push_back({{GateKind::Measure, 0}});
  }
  return c;
}

inline size_t gate_count(const std::vector<Moment>& c) {
  size_t n = 0;
  for (const auto& m : c) n += m.size();
  return n;
}

struct CircuitShot {
  std::vector<int> measured_bits;
  std::vector<RealVector> fidelities;  // system populations after each measurement, plus the initial one
  std::optional<int> absorbed_index;
  std::optional<int> absorbed_step;
};

/// Dense two-qubit simulation of a compiled walk circuit.
class WalkCircuitSimulator {
 public:
  WalkCircuitSimulator(std::vector<Moment> circuit, ResetPolicy policy, double absorption_tol = 1e-10)
      : circuit_(std::move(circuit)), policy_(policy), tol_(absorption_tol) {}

  CircuitShot run(uint64_t seed, uint64_t shot) const {
    RngStream rng(seed, shot);
    Vector s = Vector::Zero(4);
    s[0] = 1.0;
    CircuitShot out;
    bool prepared = false;
    for (const auto& moment : circuit_) {
      for (const Gate& g : moment) {
        if (g.kind == GateKind::Measure) {
          out.measured_bits.push_back(measure_ancilla(s, rng));
          out.fidelities.push_back(system_populations(s));
        } else {
          s = gate_matrix(g) * s;
        }
      }
      if (!prepared) {
        out.fidelities.push_back(system_populations(s));
        prepared = true;
      }
    }
    classify(out);
    return out;
  }

 private:
  static Matrix gate_matrix(const Gate& g) {
    using namespace pauli;
    switch (g.kind) {
      case GateKind::H: return embed(Hadamard(), g.qubit, 2);
      case GateKind::RY: return embed(std::cos(g.angle / 2) * I() - kI * std::sin(g.angle / 2) * Y(), g.qubit, 2);
      case GateKind::RZ: return embed(std::cos(g.angle / 2) * I() - kI * std::sin(g.angle / 2) * Z(), g.qubit, 2);
      case GateKind::CX: {
        Matrix p0 = 0.5 * (I() + Z()), p1 = 0.5 * (I() - Z());
        Matrix a = g.qubit == 0 ? kron(p0, I()) : kron(I(), p0);
        Matrix b = g.qubit == 0 ? kron(p1, X()) : kron(X(), p1);
        return a + b;
      }
      case GateKind::Measure: break;
    }
    throw Error(ErrorCode::InvalidArgument, "gate_matrix: measurement has no matrix");
  }

  int measure_ancilla(Vector& s, RngStream& rng) const {
    Vector b0 = Vector::Zero(4), b1 = Vector::Zero(4);
    b0.head(2) = s.head(2);
    b1.tail(2) = s.tail(2);
    GadgetOutcome o = sample_branches(b0, b1, rng);
    s = o.post_state;
    if (o.ancilla_bit == 1 && policy_ == ResetPolicy::Reset) {
      Vector r = Vector::Zero(4);
      r.head(2) = s.tail(2);
      s = r;
    }
    return o.ancilla_bit;
  }

  static RealVector system_populations(const Vector& s) {
    RealVector p(2);
    p[0] = std::norm(s[0]) + std::norm(s[2]);
    p[1] = std::norm(s[1]) + std::norm(s[3]);
    return p;
  }

  void classify(CircuitShot& out) const {
    const RealVector& last = out.fidelities.back();
    Eigen::Index n = 0;
    last.maxCoeff(&n);
    double floor = 1.0 - tol_;
    if (last[n] < floor) return;
    int step = static_cast<int>(out.fidelities.size()) - 1;
    while (step > 0 && out.fidelities[static_cast<size_t>(step - 1)][n] >= floor) --step;
    out.absorbed_index = static_cast<int>(n);
    out.absorbed_step = step;
  }

  std::vector<Moment> circuit_;
  ResetPolicy policy_;
  double tol_;
};

}  // namespace semicoh
