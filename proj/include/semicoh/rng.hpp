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
#include <random>

#include "semicoh/operator_core.hpp"

namespace semicoh {

/// Deterministic random stream identified by (seed, stream index). Distinct
/// stream indices give independent sequences, so trajectories can be replayed
/// in any order.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32), 0x5eedu};
    engine_.seed(seq);
  }

  /// Uniform double in [0, 1) with 53 random bits. Defined bitwise so the
  /// sequence does not depend on the standard library's distributions.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline Matrix random_complex(int dim, RngStream& rng) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline Matrix random_hermitian(int dim, RngStream& rng) {
  Matrix g = random_complex(dim, rng);
  return 0.5 * (g + g.adjoint());
}

/// Anti-Hermitian with unit Frobenius norm.
inline Matrix random_anti_hermitian(int dim, RngStream& rng) {
  Matrix h = random_hermitian(dim, rng);
  Matrix a = kI * h;
  return a / a.norm();
}

inline Matrix random_unitary(int dim, RngStream& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_complex(dim, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

inline Vector random_state(int dim, RngStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cplx(rng.normal(), rng.normal());
  return v / v.norm();
}

}  // namespace semicoh
