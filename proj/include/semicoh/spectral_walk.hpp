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
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "semicoh/gadget.hpp"
#include "semicoh/operator_core.hpp"
#include "semicoh/pauli.hpp"
#include "semicoh/rng.hpp"

namespace semicoh {

// Spectral-projection walk. Each step runs the gadget with U = e^{-iHt} and
// V = e^{+iHt}, so the two Kraus operators are cos(Ht) and -i sin(Ht).

/// rho -> cos(Ht) rho cos(Ht) + sin(Ht) rho sin(Ht).
inline DensityMatrix kraus_step(const SpectralData& sd, double t, const DensityMatrix& rho) {
  Matrix c = sd.apply([&](double w) { return std::cos(w * t); });
  Matrix s = sd.apply([&](double w) { return std::sin(w * t); });
  return c * rho * c + s * rho * s;
}

inline DensityMatrix kraus_step(const Matrix& h, double t, const DensityMatrix& rho) {
  return kraus_step(herm_eig(h), t, rho);
}

/// Frobenius norm of the part of rho off the diagonal in the eigenbasis.
inline double offdiag_norm(const SpectralData& sd, const DensityMatrix& rho) {
  Matrix r = sd.eigenvectors.adjoint() * rho * sd.eigenvectors;
  r.diagonal().setZero();
  return r.norm();
}

struct ChannelRun {
  DensityMatrix rho_final;
  std::vector<double> offdiag_norms;  // entry k is after k steps, entry 0 is the input
  std::vector<double> energies;       // Tr(rho_k H)
};

inline ChannelRun iterate_channel(const Matrix& h, const std::vector<double>& t_schedule,
                                  const DensityMatrix& rho0) {
  SpectralData sd = herm_eig(h);
  require_square(rho0, "iterate_channel");
  require(rho0.rows() == h.rows(), ErrorCode::DimMismatch, "iterate_channel: state dimension mismatch");
  ChannelRun run;
  run.rho_final = rho0;
  run.offdiag_norms.push_back(offdiag_norm(sd, rho0));
  run.energies.push_back((rho0 * h).trace().real());
  for (double t : t_schedule) {
    run.rho_final = kraus_step(sd, t, run.rho_final);
    run.offdiag_norms.push_back(offdiag_norm(sd, run.rho_final));
    run.energies.push_back((run.rho_final * h).trace().real());
  }
  return run;
}

/// True when two distinct eigenvalues share a magnitude, where cos(Ht) and
/// sin(Ht) cannot tell them apart. A constant shift of H removes this.
inline bool has_degenerate_magnitudes(const SpectralData& sd, double tol = 1e-10) {
  for (Eigen::Index n = 0; n < sd.dim(); ++n)
    for (Eigen::Index m = n + 1; m < sd.dim(); ++m)
      if (std::abs(std::abs(sd.eigenvalues[n]) - std::abs(sd.eigenvalues[m])) <= tol) return true;
  return false;
}

struct WalkConfig {
  Matrix hamiltonian;
  std::vector<double> t_schedule;
  int n_shots = 100;
  uint64_t seed = 0;
  double absorption_tol = 1e-10;
  ResetPolicy reset_policy = ResetPolicy::Reset;

  void validate() const {
    require_hermitian(hamiltonian, "WalkConfig");
    require(!t_schedule.empty(), ErrorCode::InvalidArgument, "WalkConfig: schedule must have at least one step");
    for (double t : t_schedule)
      require(std::isfinite(t), ErrorCode::InvalidArgument, "WalkConfig: schedule entries must be finite");
    require(n_shots >= 1, ErrorCode::InvalidArgument, "WalkConfig: need at least one shot");
    require(absorption_tol > 0.0 && absorption_tol < 1e-4, ErrorCode::InvalidArgument,
            "WalkConfig: absorption tolerance must lie in (0, 1e-4)");
  }
};

inline std::vector<double> constant_schedule(double t, int r) { return std::vector<double>(r, t); }

/// t_k drawn log-uniformly in [t_min, t_max].
inline std::vector<double> log_uniform_schedule(double t_min, double t_max, int r, RngStream& rng) {
  require(t_min > 0.0 && t_max >= t_min, ErrorCode::InvalidArgument, "log_uniform_schedule: need 0 < t_min <= t_max");
  std::vector<double> out;
  double a = std::log(t_min), b = std::log(t_max);
  for (int k = 0; k < r; ++k) out.push_back(std::exp(rng.uniform(a, b)));
  return out;
}

struct WalkTrajectory {
  std::vector<int> bits;           // Kraus index b_k: 0 for cos, 1 for sin
  std::vector<int> measured_bits;  // ancilla readout m_k
  std::vector<RealVector> fidelities;  // |<n|psi_k>|^2 for k = 0..r
  std::optional<int> absorbed_index;
  std::optional<int> absorbed_step;
  Vector final_state;
};

/// Bloch-sphere walk Hamiltonian w+ 1 + w- n.sigma.
inline Matrix walk_hamiltonian_1q(double omega_plus, double omega_minus, double theta, double phi) {
  double nx = std::sin(theta) * std::cos(phi), ny = std::sin(theta) * std::sin(phi), nz = std::cos(theta);
  return omega_plus * pauli::I() + omega_minus * (nx * pauli::X() + ny * pauli::Y() + nz * pauli::Z());
}

class SpectralWalk {
 public:
  explicit SpectralWalk(WalkConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    sd_ = herm_eig(cfg_.hamiltonian);
    degenerate_ = has_degenerate_magnitudes(sd_);
  }

  const WalkConfig& config() const { return cfg_; }
  const SpectralData& spectral() const { return sd_; }
  bool degenerate() const { return degenerate_; }

  /// One shot. Runs in the eigenbasis where both Kraus operators are diagonal.
  WalkTrajectory run_trajectory(const Vector& psi0, uint64_t shot_index) const {
    require(psi0.size() == sd_.dim(), ErrorCode::DimMismatch, "run_trajectory: state dimension mismatch");
    require_normalized(psi0, "run_trajectory");
    RngStream rng(cfg_.seed, shot_index);
    Vector c = sd_.coefficients(psi0);
    const Eigen::Index dim = sd_.dim();
    WalkTrajectory tr;
    tr.fidelities.push_back(c.cwiseAbs2());
    int prev_measured = 0;
    for (double t : cfg_.t_schedule) {
      Vector k0(dim), k1(dim);
      for (Eigen::Index n = 0; n < dim; ++n) {
        double w = sd_.eigenvalues[n] * t;
        k0[n] = std::cos(w) * c[n];
        k1[n] = -kI * std::sin(w) * c[n];
      }
      int ancilla_in = cfg_.reset_policy == ResetPolicy::Carry ? prev_measured : 0;
      // With the ancilla entering in |1> the readout labels of the branches swap.
      Vector& out0 = ancilla_in == 0 ? k0 : k1;
      Vector& out1 = ancilla_in == 0 ? k1 : k0;
      GadgetOutcome o = sample_branches(out0, out1, rng);
      int b = (o.ancilla_bit ^ ancilla_in);
      tr.measured_bits.push_back(o.ancilla_bit);
      tr.bits.push_back(b);
      prev_measured = o.ancilla_bit;
      c = o.post_state;
      tr.fidelities.push_back(c.cwiseAbs2());
    }
    tr.final_state = sd_.eigenvectors * c;
    classify_absorption(tr);
    return tr;
  }

  std::vector<WalkTrajectory> run_all(const Vector& psi0) const {
    std::vector<WalkTrajectory> out;
    out.reserve(static_cast<size_t>(cfg_.n_shots));
    for (int s = 0; s < cfg_.n_shots; ++s) out.push_back(run_trajectory(psi0, static_cast<uint64_t>(s)));
    return out;
  }

 private:
  void classify_absorption(WalkTrajectory& tr) const {
    const RealVector& last = tr.fidelities.back();
    Eigen::Index n = 0;
    last.maxCoeff(&n);
    double floor = 1.0 - cfg_.absorption_tol;
    if (last[n] < floor) return;
    int step = static_cast<int>(tr.fidelities.size()) - 1;
    while (step > 0 && tr.fidelities[static_cast<size_t>(step - 1)][n] >= floor) --step;
    tr.absorbed_index = static_cast<int>(n);
    tr.absorbed_step = step;
  }

  WalkConfig cfg_;
  SpectralData sd_;
  bool degenerate_ = false;
};

inline WalkTrajectory run_trajectory(const WalkConfig& cfg, const Vector& psi0, uint64_t shot_index) {
  return SpectralWalk(cfg).run_trajectory(psi0, shot_index);
}

struct BornStatistics {
  int shots = 0;
  int absorbed = 0;
  std::vector<double> absorbed_fraction;     // per eigenstate, over all shots
  std::vector<double> conditional_fraction;  // per eigenstate, over absorbed shots
  double unabsorbed_fraction = 0.0;
  // Post-warm-up frequency of the cos branch among shots absorbed into each
  // eigenstate; NaN when a class is empty.
  std::vector<double> p_plus;
  std::vector<long> p_plus_samples;
  // class_series[k][n]: fraction of shots with fidelity to n above the
  // absorption floor after k steps.
  std::vector<std::vector<double>> class_series;
};

inline BornStatistics born_statistics(const std::vector<WalkTrajectory>& trajs, const SpectralData& sd,
                                      int warmup = 50, double absorption_tol = 1e-10) {
  const size_t dim = static_cast<size_t>(sd.dim());
  BornStatistics st;
  st.shots = static_cast<int>(trajs.size());
  st.absorbed_fraction.assign(dim, 0.0);
  st.conditional_fraction.assign(dim, 0.0);
  std::vector<long> zeros(dim, 0);
  st.p_plus_samples.assign(dim, 0);
  size_t steps = trajs.empty() ? 0 : trajs.front().fidelities.size();
  st.class_series.assign(steps, std::vector<double>(dim, 0.0));
  for (const auto& tr : trajs) {
    for (size_t k = 0; k < tr.fidelities.size() && k < steps; ++k)
      for (size_t n = 0; n < dim; ++n)
        if (tr.fidelities[k][static_cast<Eigen::Index>(n)] >= 1.0 - absorption_tol) st.class_series[k][n] += 1.0;
    if (!tr.absorbed_index) continue;
    size_t n = static_cast<size_t>(*tr.absorbed_index);
    st.absorbed++;
    st.absorbed_fraction[n] += 1.0;
    // Kraus bits count from the first step at which the shot is warmed up and
    // has reached its class. That step depends only on the past, so the bits
    // after it are unbiased draws. absorbed_step looks ahead and would favour
    // the branch that raises the fidelity.
    size_t hit = 0;
    while (hit < tr.fidelities.size() &&
           tr.fidelities[hit][static_cast<Eigen::Index>(n)] < 1.0 - absorption_tol)
      ++hit;
    size_t first = std::max(static_cast<size_t>(std::max(warmup, 0)), hit);
    for (size_t k = first; k < tr.bits.size(); ++k) {
      st.p_plus_samples[n]++;
      if (tr.bits[k] == 0) zeros[n]++;
    }
  }
  double shots = std::max(1, st.shots);
  for (size_t n = 0; n < dim; ++n) {
    st.conditional_fraction[n] = st.absorbed > 0 ? st.absorbed_fraction[n] / st.absorbed : 0.0;
    st.absorbed_fraction[n] /= shots;
    st.p_plus.push_back(st.p_plus_samples[n] > 0 ? static_cast<double>(zeros[n]) / st.p_plus_samples[n]
                                                 : std::numeric_limits<double>::quiet_NaN());
  }
  for (auto& row : st.class_series)
    for (auto& x : row) x /= shots;
  st.unabsorbed_fraction = 1.0 - static_cast<double>(st.absorbed) / shots;
  return st;
}

/// Principal-branch frequency from a cos^2(w t) probability. Aliased when
/// |w t| exceeds pi/2.
inline double omega_from_p_plus(double p_plus, double t) {
  return std::acos(std::sqrt(std::clamp(p_plus, 0.0, 1.0))) / t;
}

/// E with cos(2Et) = <psi|cos(2Ht)|psi>.
inline double estimate_energy_scale(const Vector& psi, const Matrix& h, double t) {
  SpectralData sd = herm_eig(h);
  require(psi.size() == sd.dim(), ErrorCode::DimMismatch, "estimate_energy_scale: state dimension mismatch");
  double radius = sd.eigenvalues.cwiseAbs().maxCoeff();
  require(t != 0.0, ErrorCode::InvalidArgument, "estimate_energy_scale: t must be nonzero");
  require(std::abs(t) * radius < kPi / 2, ErrorCode::BranchAmbiguity,
          "estimate_energy_scale: |t| times the spectral radius must stay below pi/2");
  Vector c = sd.coefficients(psi);
  double norm2 = c.squaredNorm();
  double avg = 0.0;
  for (Eigen::Index n = 0; n < sd.dim(); ++n) avg += std::norm(c[n]) * std::cos(2.0 * sd.eigenvalues[n] * t);
  avg /= norm2;
  return std::acos(std::clamp(avg, -1.0, 1.0)) / (2.0 * std::abs(t));
}

struct TrisDecomposition {
  std::vector<int> cos_indices;
  std::vector<int> sin_indices;
  int tris_parity = 0;
};

inline TrisDecomposition tris_decomposition(const std::vector<int>& bits, const std::vector<double>& t_schedule) {
  require(bits.size() == t_schedule.size(), ErrorCode::DimMismatch, "tris_decomposition: length mismatch");
  TrisDecomposition d;
  for (size_t k = 0; k < bits.size(); ++k) {
    require(bits[k] == 0 || bits[k] == 1, ErrorCode::InvalidArgument, "tris_decomposition: bits must be 0 or 1");
    (bits[k] == 0 ? d.cos_indices : d.sin_indices).push_back(static_cast<int>(k));
  }
  d.tris_parity = static_cast<int>(d.sin_indices.size() % 2);
  return d;
}

/// Product of the applied Kraus operators, later steps to the left.
inline Matrix walk_path_operator(const Matrix& h, const std::vector<int>& bits, const std::vector<double>& t_schedule) {
  require(bits.size() == t_schedule.size(), ErrorCode::DimMismatch, "walk_path_operator: length mismatch");
  SpectralData sd = herm_eig(h);
  Matrix out = identity(h.rows());
  for (size_t k = 0; k < bits.size(); ++k) {
    double t = t_schedule[k];
    Matrix f = bits[k] == 0 ? sd.apply([&](double w) { return std::cos(w * t); })
                            : sd.apply([&](double w) { return -kI * std::sin(w * t); });
    out = f * out;
  }
  return out;
}

/// The same product regrouped as prod cos * (-i)^{|I1|} prod sin.
inline Matrix tris_grouped_operator(const Matrix& h, const TrisDecomposition& d, const std::vector<double>& t_schedule) {
  SpectralData sd = herm_eig(h);
  Matrix out = identity(h.rows());
  for (int k : d.cos_indices) out = sd.apply([&](double w) { return std::cos(w * t_schedule[k]); }) * out;
  for (int k : d.sin_indices) out = sd.apply([&](double w) { return std::sin(w * t_schedule[k]); }) * out;
  return std::pow(-kI, static_cast<int>(d.sin_indices.size())) * out;
}

struct OperatorPair {
  Matrix lhs;
  Matrix rhs;
};

/// U(t) + U(-t + 2 delta) against 2 cos[H(t - delta)] (cos H delta - i sin H delta)
/// for U(t) = e^{-itH}.
inline OperatorPair tris_control_error(const Matrix& h, double t, double delta) {
  SpectralData sd = herm_eig(h);
  auto u = [&](double s) { return sd.apply([&](double w) { return std::exp(-kI * w * s); }); };
  Matrix lhs = u(t) + u(-t + 2.0 * delta);
  Matrix c = sd.apply([&](double w) { return 2.0 * std::cos(w * (t - delta)); });
  Matrix phase = sd.apply([&](double w) { return std::cos(w * delta) - kI * std::sin(w * delta); });
  return {lhs, c * phase};
}

}  // namespace semicoh
