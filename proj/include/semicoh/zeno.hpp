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

namespace semicoh {

struct ZenoSurvival {
  double s = 0.0;        // conditioned on all-zero ancilla readouts
  double s_check = 0.0;  // joint with the all-zero readout
  double s_tilde = 0.0;  // direct projective monitoring
};

/// Survival probabilities after n ancilla checks over total time T.
inline ZenoSurvival qze_survival(const Matrix& h, double T, int n, const Vector& psi) {
  require(n >= 1, ErrorCode::InvalidArgument, "qze_survival: n must be at least 1");
  SpectralData sd = herm_eig(h);
  require(psi.size() == sd.dim(), ErrorCode::DimMismatch, "qze_survival: state dimension mismatch");
  require_normalized(psi, "qze_survival");
  Vector c = sd.coefficients(psi);
  double tau = T / n;
  double amp = 0.0, p0 = 0.0;
  cplx u1 = 0.0;
  for (Eigen::Index k = 0; k < sd.dim(); ++k) {
    double w = std::norm(c[k]);
    double ck = std::cos(sd.eigenvalues[k] * tau);
    double cn = std::pow(ck, n);
    amp += w * cn;
    p0 += w * cn * cn;
    u1 += w * std::exp(-kI * sd.eigenvalues[k] * tau);
  }
  require(p0 >= 1e-300, ErrorCode::ZeroSuccess, "qze_survival: all-zero readout has vanishing probability");
  ZenoSurvival z;
  z.s = amp * amp / p0;
  z.s_check = amp * amp;
  z.s_tilde = std::pow(std::norm(u1), n);
  return z;
}

/// Decoherence from a Gaussian continuous-variable ancilla: the |n><m| entry
/// in the eigenbasis picks up exp(-t^2 (w_n - w_m)^2 / 8).
inline DensityMatrix cv_channel(const Matrix& h, double t, const DensityMatrix& rho) {
  SpectralData sd = herm_eig(h);
  require_square(rho, "cv_channel");
  require(rho.rows() == sd.dim(), ErrorCode::DimMismatch, "cv_channel: state dimension mismatch");
  Matrix r = sd.eigenvectors.adjoint() * rho * sd.eigenvectors;
  for (Eigen::Index n = 0; n < sd.dim(); ++n)
    for (Eigen::Index m = 0; m < sd.dim(); ++m) {
      double d = sd.eigenvalues[n] - sd.eigenvalues[m];
      r(n, m) *= std::exp(-t * t * d * d / 8.0);
    }
  return sd.eigenvectors * r * sd.eigenvectors.adjoint();
}

}  // namespace semicoh
