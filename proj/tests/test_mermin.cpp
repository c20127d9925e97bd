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

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "semicoh/mermin.hpp"

using namespace semicoh;

namespace {

Vector product_state(int n, RngStream& rng) {
  Vector v = Vector::Ones(1);
  for (int l = 0; l < n; ++l) {
    Vector q = random_state(2, rng);
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(2 * i, 2) = v[i] * q;
    v = next;
  }
  return v;
}

Vector basis(int n, Eigen::Index k) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[k] = 1.0;
  return v;
}

}  // namespace

TEST(MerminA, ProductFormMatchesPauliSum) {
  for (int n = 1; n <= 6; ++n) {
    int terms = 0;
    Matrix sum = mermin_A_pauli_sum(n, &terms);
    EXPECT_EQ(terms, 1 << (n - 1));
    EXPECT_LT((mermin_A_product(n) - sum).norm(), 1e-10);
  }
  EXPECT_LT((mermin_A(2) - oracle::pauli_string("XY") - oracle::pauli_string("YX")).norm(), 1e-14);
  Matrix a3 = oracle::pauli_string("XXY") + oracle::pauli_string("XYX") + oracle::pauli_string("YXX") -
              oracle::pauli_string("YYY");
  EXPECT_LT((mermin_A(3) - a3).norm(), 1e-13);
}

TEST(MerminA, PowerIdentityAndGhzEigenvalue) {
  for (int n = 2; n <= 5; ++n) {
    Matrix a = mermin_A(n), a2 = a * a;
    double c = std::pow(4.0, n - 1);
    EXPECT_LT((a2 * a2 - c * a2).norm(), 1e-9 * c * c);
    Vector plus = ghz_state(n, kI);
    EXPECT_NEAR(expectation(a, plus), std::pow(2.0, n - 1), 1e-10);
  }
}

TEST(MerminM, XySettingSpectrumAndGhzTilde) {
  for (int n = 2; n <= 6; ++n) {
    Matrix m = mermin_recursive(MerminSetting::xy(n)).M, m2 = m * m;
    double c = std::pow(2.0, n - 1);
    EXPECT_LT((m2 * m2 - c * m2).norm(), 1e-9 * c * c);
    EXPECT_NEAR(expectation(m, ghz_tilde(n)), std::pow(2.0, (n - 1) / 2.0), 1e-10);
    EXPECT_NEAR(expectation(m, ghz_tilde(n, -1)), -std::pow(2.0, (n - 1) / 2.0), 1e-10);
  }
}

TEST(MerminM, ThreeConstructionsAgree) {
  RngStream rng(1, 0);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 6;
    MerminSetting s = MerminSetting::random(n, rng);
    MerminOperators r = mermin_recursive(s), c = mermin_closed(s), t = transfer_matrix_eval(s);
    EXPECT_LT((r.M - c.M).norm(), 1e-10);
    EXPECT_LT((r.M_prime - c.M_prime).norm(), 1e-10);
    EXPECT_LT((r.M - t.M).norm(), 1e-10);
    EXPECT_LT((r.M_prime - t.M_prime).norm(), 1e-10);
    EXPECT_LT((r.M - r.M.adjoint()).norm(), 1e-12);
    EXPECT_LT((r.M_prime - r.M_prime.adjoint()).norm(), 1e-12);
  }
}

TEST(MerminM, ThreeQubitExpansion) {
  RngStream rng(2, 0);
  MerminSetting s = MerminSetting::random(3, rng);
  const auto& p = s.pairs;
  auto k3 = [](const Matrix& x, const Matrix& y, const Matrix& z) { return oracle::kron(oracle::kron(x, y), z); };
  Matrix expect = 0.5 * (k3(p[0].first, p[1].first, p[2].second) + k3(p[0].first, p[1].second, p[2].first) +
                         k3(p[0].second, p[1].first, p[2].first) - k3(p[0].second, p[1].second, p[2].second));
  EXPECT_LT((mermin_recursive(s).M - expect).norm(), 1e-12);
}

TEST(MerminM, PrimeExchangeSwapsPair) {
  RngStream rng(3, 0);
  for (int n : {2, 3, 4}) {
    MerminSetting s = MerminSetting::random(n, rng);
    MerminOperators a = mermin_recursive(s), b = mermin_recursive(s.primes_exchanged());
    EXPECT_LT((a.M_prime - b.M).norm(), 1e-12);
    EXPECT_LT((a.M - b.M_prime).norm(), 1e-12);
  }
}

TEST(Svetlichny, AverageOfPairAndOddOnly) {
  RngStream rng(4, 0);
  for (int n : {1, 3, 5}) {
    MerminSetting s = MerminSetting::random(n, rng);
    MerminOperators m = mermin_recursive(s);
    Matrix sv = svetlichny(s);
    EXPECT_LT((sv - 0.5 * (m.M + m.M_prime)).norm(), 1e-12);
    EXPECT_LT((sv - sv.adjoint()).norm(), 1e-12);
  }
  try {
    svetlichny(MerminSetting::xy(4));
    ADD_FAILURE() << "expected EvenOrder";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenOrder);
  }
}

TEST(MerminSetting, RejectsBadObservables) {
  EXPECT_THROW(MerminSetting({{pauli::X(), Matrix(2.0 * pauli::Y())}}), Error);
  EXPECT_THROW(MerminSetting({{pauli::X(), identity(4)}}), Error);
  EXPECT_THROW(MerminSetting(std::vector<std::pair<Matrix, Matrix>>{}), Error);
}

TEST(ProductCircuit, MatchesFormulaAndExamples) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + trial % 4;
    MerminSetting s = MerminSetting::random(n, rng);
    ProductMeasurement pm = measure_product_circuit(s, random_state(1 << n, rng));
    EXPECT_NEAR(pm.p_all_zero, pm.p_formula, 1e-12);
    EXPECT_NEAR(pm.phi.norm(), 1.0, 1e-12);
  }
  ProductMeasurement ones = measure_product_circuit(MerminSetting::xy(3), basis(3, 7));
  EXPECT_NEAR(ones.p_all_zero, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(ones.phi[0]), 1.0, 1e-14);
  MerminSetting same({{pauli::X(), pauli::X()}, {pauli::Z(), pauli::Z()}, {pauli::Y(), pauli::Y()}});
  EXPECT_NEAR(measure_product_circuit(same, random_state(8, rng)).p_all_zero, 0.125, 1e-13);
}

TEST(MerminCircuit, ProbabilityBoundAndZeroSuccess) {
  RngStream rng(6, 0);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 3;
    MerminSetting s = trial % 2 ? MerminSetting::random(n, rng) : MerminSetting::xy(n);
    Vector psi = random_state(1 << n, rng);
    MerminMeasurement mm = measure_mermin_circuit(s, psi);
    EXPECT_LE(mm.p0, 0.25 + 1e-12);
    EXPECT_GE(mm.bound + 1e-12, std::abs(expectation(mermin_closed(s).M, psi)));
  }
  MerminMeasurement top = measure_mermin_circuit(MerminSetting::xy(3), ghz_tilde(3));
  EXPECT_NEAR(top.p0, 0.25, 1e-13);
  EXPECT_NEAR(top.bound, 2.0, 1e-12);
  try {
    measure_mermin_circuit(MerminSetting::xy(3), basis(3, 2));
    ADD_FAILURE() << "expected ZeroSuccess";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroSuccess);
  }
}

TEST(MeasurementEquivalence, AncillaMatchesDirectReadout) {
  RngStream rng(7, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Vector psi = random_state(8, rng);
    for (int l = 0; l < 3; ++l) {
      MeasurementComparison c = measurement_equivalence_check(psi, l);
      EXPECT_LE(c.tv_distance, 1e-12);
      EXPECT_LE(c.max_state_distance, 1e-12);
      EXPECT_TRUE(c.equivalent);
    }
  }
  EXPECT_THROW(measurement_equivalence_check(random_state(8, rng), 3), Error);
}

TEST(LocalBound, ProductStatesStayWithinOne) {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 4;
    MerminSetting s = MerminSetting::random(n, rng);
    EXPECT_LE(std::abs(expectation(mermin_closed(s).M, product_state(n, rng))), 1.0 + 1e-12);
  }
}

TEST(SwapTest, ExactAndSampled) {
  RngStream rng(9, 0);
  Vector a = random_state(4, rng), b = random_state(4, rng);
  double f = std::norm(a.dot(b));
  EXPECT_DOUBLE_EQ(swap_test_overlap(a, b, 0, nullptr), f);
  const int shots = 40000;
  RngStream srng(9, 1);
  double est = swap_test_overlap(a, b, shots, &srng);
  EXPECT_NEAR(est, f, 4.0 * 2.0 * oracle::binomial_sigma(0.5 * (1.0 + f), shots));
}
