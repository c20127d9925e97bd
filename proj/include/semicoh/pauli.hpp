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

#include <string>
#include <utility>

#include "semicoh/operator_core.hpp"

namespace semicoh {

namespace pauli {

inline Matrix I() { return Matrix::Identity(2, 2); }

inline Matrix X() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}

inline Matrix Y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

inline Matrix Z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

inline Matrix Hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline Matrix letter(char c) {
  switch (c) {
    case 'I': return I();
    case 'X': return X();
    case 'Y': return Y();
    case 'Z': return Z();
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown Pauli letter '") + c + "'");
}

/// Embeds a single-qubit operator on `qubit` of an `n`-qubit register.
/// Qubit 0 is the most significant tensor factor.
inline Matrix embed(const Matrix& op, int qubit, int n) {
  require(qubit >= 0 && qubit < n, ErrorCode::InvalidArgument, "embed: qubit out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) out = kron(out, q == qubit ? op : I());
  return out;
}

}  // namespace pauli

/// Tensor product of Pauli letters with an overall phase i^phase.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::string letters, int phase = 0) : letters_(std::move(letters)), phase_(phase & 3) {
    require(!letters_.empty(), ErrorCode::InvalidArgument, "PauliString: empty");
    for (char c : letters_) {
      require(c == 'I' || c == 'X' || c == 'Y' || c == 'Z', ErrorCode::InvalidArgument,
              "PauliString: letters must be drawn from IXYZ");
    }
  }

  /// Single letter `c` on `qubit`, identity elsewhere.
  static PauliString single(char c, int qubit, int n) {
    std::string s(static_cast<size_t>(n), 'I');
    s[static_cast<size_t>(qubit)] = c;
    return PauliString(s);
  }

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  int phase_power() const { return phase_; }

  cplx phase() const {
    static const cplx table[4] = {1.0, kI, -1.0, -kI};
    return table[phase_];
  }

  bool is_hermitian() const { return (phase_ & 1) == 0; }

  PauliString operator*(const PauliString& other) const {
    require(n_qubits() == other.n_qubits(), ErrorCode::DimMismatch, "PauliString product: lengths differ");
    std::string out(letters_.size(), 'I');
    int power = phase_ + other.phase_;
    for (size_t q = 0; q < letters_.size(); ++q) {
      auto [c, p] = multiply_letters(letters_[q], other.letters_[q]);
      out[q] = c;
      power += p;
    }
    return PauliString(out, power);
  }

  bool operator==(const PauliString& other) const {
    return letters_ == other.letters_ && phase_ == other.phase_;
  }

  Matrix matrix() const {
    Matrix out = Matrix::Identity(1, 1);
    for (char c : letters_) out = kron(out, pauli::letter(c));
    return phase() * out;
  }

 private:
  // Returns (letter, power of i) with a*b = i^power * letter.
  static std::pair<char, int> multiply_letters(char a, char b) {
    if (a == 'I') return {b, 0};
    if (b == 'I') return {a, 0};
    if (a == b) return {'I', 0};
    auto idx = [](char c) { return c == 'X' ? 0 : c == 'Y' ? 1 : 2; };
    int ia = idx(a), ib = idx(b);
    char c = "XYZ"[3 - ia - ib];
    // XY = iZ, YZ = iX, ZX = iY.
    bool cyclic = (ib - ia + 3) % 3 == 1;
    return {c, cyclic ? 1 : 3};
  }

  std::string letters_ = "I";
  int phase_ = 0;
};

}  // namespace semicoh
