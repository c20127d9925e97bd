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
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "semicoh/core.hpp"

namespace semicoh {

// States are plain vectors and matrices. The validators below enforce the
// invariants at the API boundary; nothing is cached on the objects.
using StateVector = Vector;
using DensityMatrix = Matrix;

inline double fro_norm(const Matrix& m) { return m.norm(); }

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline Vector kron(const Vector& a, const Vector& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline void require_square(const Matrix& m, const char* who) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorCode::DimMismatch,
          std::string(who) + ": matrix must be square and nonempty");
}

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimMismatch,
          std::string(who) + ": operand dimensions differ");
}

inline bool is_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tolerances().hermitian * static_cast<double>(m.rows());
}

inline bool is_anti_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  return (m + m.adjoint()).norm() <= tolerances().hermitian * static_cast<double>(m.rows());
}

inline bool is_unitary(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - identity(m.rows())).norm() <=
         tolerances().unitary * static_cast<double>(m.rows());
}

inline void require_hermitian(const Matrix& m, const char* who) {
  require_square(m, who);
  require(is_hermitian(m), ErrorCode::NotHermitian, std::string(who) + ": operator is not Hermitian");
}

inline void require_unitary(const Matrix& m, const char* who) {
  require_square(m, who);
  require(is_unitary(m), ErrorCode::NotUnitary, std::string(who) + ": operator is not unitary");
}

inline void require_normalized(const Vector& psi, const char* who) {
  require(psi.size() >= 1, ErrorCode::DimMismatch, std::string(who) + ": empty state");
  require(std::abs(psi.norm() - 1.0) <= tolerances().normalization, ErrorCode::InvalidArgument,
          std::string(who) + ": state is not normalized");
}

inline Vector normalized(const Vector& v) {
  double n = v.norm();
  require(n > tolerances().zero_branch, ErrorCode::ZeroState, "normalized: zero vector");
  return v / n;
}

inline DensityMatrix pure_density(const Vector& psi) { return psi * psi.adjoint(); }

inline void require_density(const Matrix& rho, const char* who) {
  require_hermitian(rho, who);
  require(std::abs(rho.trace() - cplx(1.0)) <= tolerances().density_trace, ErrorCode::InvalidArgument,
          std::string(who) + ": density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= tolerances().density_min_eig, ErrorCode::InvalidArgument,
          std::string(who) + ": density matrix has a negative eigenvalue");
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

inline Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

/// Eigenvalues ascending, eigenvectors as the columns of a unitary matrix.
struct SpectralData {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }

  template <typename F>
  Matrix apply(F&& f) const {
    Vector d(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) d[k] = cplx(f(eigenvalues[k]));
    return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
  }

  /// Components of `psi` in the eigenbasis.
  Vector coefficients(const Vector& psi) const { return eigenvectors.adjoint() * psi; }
};

inline SpectralData herm_eig(const Matrix& h) {
  require_hermitian(h, "herm_eig");
  // Symmetrize so the solver sees an exactly Hermitian input.
  Matrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  require(es.info() == Eigen::Success, ErrorCode::NonDiagonalizable, "herm_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

template <typename F>
Matrix matfunc(const Matrix& h, F&& f) {
  return herm_eig(h).apply(std::forward<F>(f));
}

inline Matrix expm(const Matrix& m) {
  require_square(m, "expm");
  if (is_hermitian(m)) {
    return herm_eig(m).apply([](double w) { return std::exp(w); });
  }
  if (is_anti_hermitian(m)) {
    // m = -i K with K Hermitian.
    Matrix k = kI * m;
    return herm_eig(k).apply([](double w) { return std::exp(-kI * w); });
  }
  return m.exp();
}

inline Matrix logm(const Matrix& m) {
  require_square(m, "logm");
  Eigen::ComplexEigenSolver<Matrix> es(m);
  require(es.info() == Eigen::Success, ErrorCode::NonDiagonalizable, "logm: eigensolver failed");
  const Vector& lam = es.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    cplx z = lam[k];
    double dist = z.real() <= 0.0 ? std::abs(z.imag()) : std::abs(z);
    require(dist > tolerances().branch_cut, ErrorCode::BranchCut,
            "logm: eigenvalue on or near the negative real axis");
  }
  const Matrix& v = es.eigenvectors();
  Eigen::JacobiSVD<Matrix> svd(v);
  const auto& s = svd.singularValues();
  double cond = s[0] / s[s.size() - 1];
  require(std::isfinite(cond) && cond <= tolerances().max_condition, ErrorCode::NonDiagonalizable,
          "logm: eigenvector matrix is ill-conditioned");
  Vector logs = lam.unaryExpr([](cplx z) { return std::log(z); });
  return v * logs.asDiagonal() * v.inverse();
}

}  // namespace semicoh
