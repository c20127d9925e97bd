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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "semicoh/matrix_io.hpp"
#include "semicoh/pauli.hpp"
#include "semicoh/rng.hpp"

using namespace semicoh;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no semicoh::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Kron, IdentityAndPauliBlocks) {
  EXPECT_LT((kron(pauli::I(), pauli::I()) - identity(4)).norm(), 1e-15);
  Matrix xz = kron(pauli::X(), pauli::Z());
  EXPECT_LT(xz.block(0, 0, 2, 2).norm(), 1e-15);
  EXPECT_LT((xz.block(0, 2, 2, 2) - pauli::Z()).norm(), 1e-15);
  EXPECT_LT((xz.block(2, 0, 2, 2) - pauli::Z()).norm(), 1e-15);
  Matrix zz = kron(pauli::Z(), pauli::Z());
  Eigen::Vector4d expect(1, -1, -1, 1);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(zz(i, i).real(), expect[i]);
}

TEST(Kron, MatchesOracleIndexing) {
  RngStream rng(3, 0);
  Matrix a = random_complex(3, rng), b = random_complex(2, rng);
  EXPECT_LT((kron(a, b) - oracle::kron(a, b)).norm(), 1e-14);
  Matrix k = kron(a, b);
  EXPECT_EQ(k(1 * 2 + 1, 2 * 2 + 0), a(1, 2) * b(1, 0));
}

TEST(HermEig, PauliZAndSingleQubitField) {
  SpectralData z = herm_eig(pauli::Z());
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-15);
  double d1 = 0.3, d2 = -1.1;
  SpectralData h = herm_eig(d1 * pauli::X() + d2 * pauli::Y());
  EXPECT_NEAR(h.eigenvalues[0], -std::hypot(d1, d2), 1e-14);
  EXPECT_NEAR(h.eigenvalues[1], std::hypot(d1, d2), 1e-14);
}

TEST(HermEig, RandomReconstructionAndUnitarity) {
  RngStream rng(11, 0);
  Matrix h = random_hermitian(8, rng);
  SpectralData sd = herm_eig(h);
  Matrix rec = sd.eigenvectors * sd.eigenvalues.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
  EXPECT_LE((rec - h).norm(), 1e-10 * h.norm());
  EXPECT_LE((sd.eigenvectors.adjoint() * sd.eigenvectors - identity(8)).norm(), 1e-12);
  for (Eigen::Index k = 0; k < 8; ++k) {
    EXPECT_LE((h * sd.eigenvectors.col(k) - sd.eigenvalues[k] * sd.eigenvectors.col(k)).norm(), 1e-10 * h.norm());
    if (k) EXPECT_LE(sd.eigenvalues[k - 1], sd.eigenvalues[k]);
  }
}

TEST(HermEig, RejectsNonHermitian) {
  Matrix m = pauli::X();
  m(0, 1) = 2.0;
  EXPECT_EQ(code_of([&] { herm_eig(m); }), ErrorCode::NotHermitian);
}

TEST(MatFunc, TrigIdentityAndScalarEntries) {
  RngStream rng(5, 0);
  Matrix h = random_hermitian(6, rng);
  for (double t : {0.0, 0.37, 2.5}) {
    Matrix c = matfunc(h, [&](double w) { return cplx(std::cos(w * t)); });
    Matrix s = matfunc(h, [&](double w) { return cplx(std::sin(w * t)); });
    EXPECT_LT((c * c + s * s - identity(6)).norm(), 1e-12);
  }
  Matrix e = matfunc(pauli::Z(), [](double w) { return std::exp(-kI * w); });
  EXPECT_LT(std::abs(e(0, 0) - std::exp(-kI)), 1e-15);
  EXPECT_LT(std::abs(e(1, 1) - std::exp(kI)), 1e-15);
}

TEST(Expm, ZeroPauliVectorAndInverse) {
  EXPECT_LT((expm(Matrix::Zero(3, 3)) - identity(3)).norm(), 1e-15);
  double phi = 0.83;
  Eigen::Vector3d n(0.48, -0.6, 0.64);
  Matrix nsig = n[0] * pauli::X() + n[1] * pauli::Y() + n[2] * pauli::Z();
  Matrix expect = std::cos(phi) * pauli::I() - kI * std::sin(phi) * nsig;
  EXPECT_LT((expm(-kI * phi * nsig) - expect).norm(), 1e-13);
  RngStream rng(7, 0);
  Matrix m = random_complex(5, rng);
  EXPECT_LE((expm(m) * expm(-m) - identity(5)).norm(), 1e-10);
  EXPECT_LE((expm(m) - oracle::expm(m)).norm(), 1e-10 * expm(m).norm());
  Matrix a = random_anti_hermitian(4, rng);
  EXPECT_TRUE(is_unitary(expm(a)));
}

TEST(Expm, CommutingSum) {
  Matrix a = 0.3 * pauli::Z(), b = -1.2 * pauli::Z();
  EXPECT_LT((expm(a) * expm(b) - expm(a + b)).norm(), 1e-12);
}

TEST(Logm, RoundTripsAndBranchCut) {
  EXPECT_LT(logm(identity(2)).norm(), 1e-15);
  Matrix g = 0.1 * kI * pauli::X();
  EXPECT_LT((logm(expm(g)) - g).norm(), 1e-13);
  Matrix a = 0.4 * kI * pauli::Z(), b = -0.7 * kI * pauli::Z();
  Matrix jp = 0.5 * (expm(0.1 * a) * expm(0.1 * b) + expm(0.1 * b) * expm(0.1 * a));
  EXPECT_LT((logm(jp) - 0.1 * (a + b)).norm(), 1e-13);
  RngStream rng(9, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_complex(4, rng) * 0.2 + 2.0 * identity(4);
    EXPECT_LE((expm(logm(m)) - m).norm(), 1e-9 * m.norm());
  }
  Matrix neg = -identity(2);
  EXPECT_EQ(code_of([&] { logm(neg); }), ErrorCode::BranchCut);
  Matrix jordan(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  EXPECT_EQ(code_of([&] { logm(jordan); }), ErrorCode::NonDiagonalizable);
}

TEST(Norms, Frobenius) {
  EXPECT_DOUBLE_EQ(fro_norm(pauli::I()), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(fro_norm(pauli::X()), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(fro_norm(pauli::Z() - pauli::Z()), 0.0);
}

TEST(Commutators, PauliAlgebra) {
  EXPECT_LT((commutator(pauli::X(), pauli::Y()) - 2.0 * kI * pauli::Z()).norm(), 1e-15);
  EXPECT_LT((anticommutator(pauli::X(), pauli::X()) - 2.0 * pauli::I()).norm(), 1e-15);
  EXPECT_LT(commutator(pauli::Y(), pauli::Y()).norm(), 1e-15);
  EXPECT_EQ(code_of([] { commutator(pauli::X(), identity(3)); }), ErrorCode::DimMismatch);
}

TEST(PauliString, ProductClosureMatchesMatrices) {
  RngStream rng(13, 0);
  const std::string alphabet = "IXYZ";
  for (int trial = 0; trial < 50; ++trial) {
    std::string a, b;
    for (int q = 0; q < 3; ++q) {
      a += alphabet[rng.next() % 4];
      b += alphabet[rng.next() % 4];
    }
    PauliString p(a, static_cast<int>(rng.next() % 4)), q(b);
    PauliString pq = p * q;
    EXPECT_LT((pq.matrix() - p.matrix() * q.matrix()).norm(), 1e-14);
    EXPECT_TRUE(is_unitary(pq.matrix()));
    EXPECT_LT((PauliString(a).matrix() - oracle::pauli_string(a)).norm(), 1e-15);
  }
  EXPECT_TRUE(PauliString("XYZ").is_hermitian());
  EXPECT_TRUE((PauliString("X") * PauliString("Y")) == PauliString("Z", 1));
}

TEST(PauliEmbed, QubitZeroIsMostSignificant) {
  Matrix z0 = pauli::embed(pauli::Z(), 0, 2);
  EXPECT_LT((z0 - oracle::pauli_string("ZI")).norm(), 1e-15);
}

TEST(Validators, StatesAndDensities) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_EQ(code_of([&] { require_normalized(v, "t"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { normalized(Vector::Zero(3)); }), ErrorCode::ZeroState);
  Vector u = normalized(v);
  EXPECT_NO_THROW(require_density(pure_density(u), "t"));
  EXPECT_FALSE(is_unitary(2.0 * pauli::X()));
  EXPECT_TRUE(is_anti_hermitian(kI * pauli::Y()));
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  RngStream a(42, 1), b(42, 1), c(42, 2);
  for (int i = 0; i < 10; ++i) {
    uint64_t x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  RngStream r(1, 0);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) mean += r.uniform() / 20000;
  EXPECT_NEAR(mean, 0.5, 0.01);
  Matrix w = random_unitary(4, r);
  EXPECT_TRUE(is_unitary(w));
  EXPECT_NEAR(random_anti_hermitian(4, r).norm(), 1.0, 1e-14);
}

TEST(MatrixIo, RoundTripThroughFile) {
  RngStream rng(17, 0);
  Matrix m = random_complex(3, rng);
  auto path = std::filesystem::temp_directory_path() / "semicoh_matrix_io_test.json";
  {
    std::ofstream f(path);
    f << matrix_to_json(m).dump();
  }
  Matrix back = read_matrix_file(path.string());
  EXPECT_EQ((back - m).norm(), 0.0);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([] { matrix_from_json(nlohmann::json{{"dim", 2}, {"re", {1, 2}}, {"im", {0, 0}}}); }),
            ErrorCode::Io);
  EXPECT_EQ(code_of([] { read_json_file("/nonexistent/semicoh.json"); }), ErrorCode::Io);
}
