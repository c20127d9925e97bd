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
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "semicoh/pauli.hpp"
#include "semicoh/rng.hpp"

namespace semicoh {

// Isotropic Heisenberg ring, H = sum_l (X_l X_{l+1} + Y_l Y_{l+1} + Z_l Z_{l+1}),
// in units where J hbar / 4 = 1. Site 0 is the most significant bit.

using RealMatrix = Eigen::MatrixXd;

inline int site_bit(uint64_t index, int site, int L) { return static_cast<int>((index >> (L - 1 - site)) & 1u); }

/// Basis states with L/2 up spins. Every bond term preserves this count and
/// the valence-bond states live here, so the ansatz never leaves the sector.
struct ZeroMagnetizationSector {
  int L = 0;
  std::vector<uint64_t> states;  // full-space indices, ascending
  std::vector<int> position;     // full index -> sector index, or -1

  explicit ZeroMagnetizationSector(int sites = 0) : L(sites) {
    uint64_t dim = uint64_t{1} << L;
    position.assign(dim, -1);
    for (uint64_t i = 0; i < dim; ++i)
      if (std::popcount(i) * 2 == L) {
        position[i] = static_cast<int>(states.size());
        states.push_back(i);
      }
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(states.size()); }

  Vector restrict(const Vector& full) const {
    Vector v(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) v[k] = full[static_cast<Eigen::Index>(states[k])];
    return v;
  }

  Vector embed(const Vector& sector) const {
    Vector v = Vector::Zero(Eigen::Index{1} << L);
    for (Eigen::Index k = 0; k < dim(); ++k) v[static_cast<Eigen::Index>(states[k])] = sector[k];
    return v;
  }
};

/// X X + Y Y + Z Z on sites (i, j), which equals 2 SWAP - 1.
inline Matrix bond_matrix(int i, int j, int L) {
  const Eigen::Index dim = Eigen::Index{1} << L;
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    uint64_t u = static_cast<uint64_t>(s);
    int bi = site_bit(u, i, L), bj = site_bit(u, j, L);
    if (bi == bj) {
      h(s, s) += 1.0;
    } else {
      h(s, s) -= 1.0;
      uint64_t flipped = u ^ (uint64_t{1} << (L - 1 - i)) ^ (uint64_t{1} << (L - 1 - j));
      h(static_cast<Eigen::Index>(flipped), s) += 2.0;
    }
  }
  return h;
}

inline RealMatrix bond_matrix_sector(int i, int j, const ZeroMagnetizationSector& sec) {
  const int L = sec.L;
  RealMatrix h = RealMatrix::Zero(sec.dim(), sec.dim());
  for (Eigen::Index k = 0; k < sec.dim(); ++k) {
    uint64_t u = sec.states[k];
    if (site_bit(u, i, L) == site_bit(u, j, L)) {
      h(k, k) += 1.0;
    } else {
      h(k, k) -= 1.0;
      uint64_t flipped = u ^ (uint64_t{1} << (L - 1 - i)) ^ (uint64_t{1} << (L - 1 - j));
      h(sec.position[flipped], k) += 2.0;
    }
  }
  return h;
}

struct SpinChainModel {
  int L = 0;
  bool periodic = true;
  std::vector<std::pair<int, int>> bonds;  // bond l couples (l, l+1 mod L)
  Matrix H_A;                              // even bonds
  Matrix H_B;                              // odd bonds
  Matrix H_total;
  ZeroMagnetizationSector sector;
  std::vector<RealMatrix> bond_sector;
  RealMatrix HA_sector, HB_sector, H_sector;

  int n_bonds() const { return static_cast<int>(bonds.size()); }

  /// The three Pauli strings of bond l.
  std::array<PauliString, 3> bond_terms(int l) const {
    auto [i, j] = bonds[static_cast<size_t>(l)];
    std::array<PauliString, 3> out;
    const char letters[3] = {'X', 'Y', 'Z'};
    for (int k = 0; k < 3; ++k)
      out[static_cast<size_t>(k)] =
          PauliString::single(letters[k], i, L) * PauliString::single(letters[k], j, L);
    return out;
  }
};

inline SpinChainModel build_afhm(int L, bool periodic = true) {
  require(L >= 2 && L <= 12, ErrorCode::InvalidArgument, "build_afhm: need 2 <= L <= 12");
  require(L % 2 == 0, ErrorCode::OddLength, "build_afhm: the sublattice split needs an even number of sites");
  SpinChainModel m;
  m.L = L;
  m.periodic = periodic;
  int nb = periodic ? L : L - 1;
  for (int l = 0; l < nb; ++l) m.bonds.emplace_back(l, (l + 1) % L);
  const Eigen::Index dim = Eigen::Index{1} << L;
  m.H_A = Matrix::Zero(dim, dim);
  m.H_B = Matrix::Zero(dim, dim);
  m.sector = ZeroMagnetizationSector(L);
  m.HA_sector = RealMatrix::Zero(m.sector.dim(), m.sector.dim());
  m.HB_sector = m.HA_sector;
  for (int l = 0; l < nb; ++l) {
    auto [i, j] = m.bonds[static_cast<size_t>(l)];
    Matrix h = bond_matrix(i, j, L);
    RealMatrix hs = bond_matrix_sector(i, j, m.sector);
    (l % 2 == 0 ? m.H_A : m.H_B) += h;
    (l % 2 == 0 ? m.HA_sector : m.HB_sector) += hs;
    m.bond_sector.push_back(std::move(hs));
  }
  m.H_total = m.H_A + m.H_B;
  m.H_sector = m.HA_sector + m.HB_sector;
  return m;
}

/// Lattice translation |s_0 ... s_{L-1}> -> |s_{L-shift} ...>.
inline Matrix translation_operator(int L, int shift) {
  const Eigen::Index dim = Eigen::Index{1} << L;
  Matrix t = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    uint64_t out = 0;
    for (int q = 0; q < L; ++q)
      if (site_bit(static_cast<uint64_t>(s), q, L)) out |= uint64_t{1} << (L - 1 - ((q + shift) % L));
    t(static_cast<Eigen::Index>(out), s) = 1.0;
  }
  return t;
}

/// Product of singlets (|01> - |10>)/sqrt2 on bonds (first, first+1),
/// (first+2, first+3), ... with sites taken mod L.
inline Vector singlet_cover(int L, int first) {
  require(L % 2 == 0, ErrorCode::OddLength, "singlet_cover: L must be even");
  const Eigen::Index dim = Eigen::Index{1} << L;
  Vector v = Vector::Zero(dim);
  double amp = std::pow(0.5, L / 4.0);
  for (Eigen::Index s = 0; s < dim; ++s) {
    double sign = 1.0;
    bool ok = true;
    for (int k = 0; k < L / 2 && ok; ++k) {
      int a = (first + 2 * k) % L, b = (first + 2 * k + 1) % L;
      int ba = site_bit(static_cast<uint64_t>(s), a, L), bb = site_bit(static_cast<uint64_t>(s), b, L);
      if (ba == bb) ok = false;
      else if (ba == 1) sign = -sign;
    }
    if (ok) v[s] = sign * amp;
  }
  return v;
}

struct ValenceBondStates {
  Vector psi_a;  // singlets on the even bonds
  Vector psi_b;  // singlets on the odd bonds
  Vector psi0;   // normalized sum
};

inline ValenceBondStates valence_bond_states(int L) {
  require(L % 2 == 0 && L >= 2, ErrorCode::OddLength, "valence_bond_initial: L must be even");
  ValenceBondStates v;
  v.psi_a = singlet_cover(L, 0);
  v.psi_b = singlet_cover(L, 1);
  Vector sum = v.psi_a + v.psi_b;
  double n = sum.norm();
  require(n >= tolerances().zero_branch, ErrorCode::ZeroState,
          "valence_bond_initial: the two singlet covers cancel");
  v.psi0 = sum / n;
  return v;
}

inline Vector valence_bond_initial(int L) { return valence_bond_states(L).psi0; }

enum class AnsatzKind { HVA, SymHVA };

inline std::string ansatz_name(AnsatzKind k) { return k == AnsatzKind::HVA ? "hva" : "symhva"; }

struct AnsatzParams {
  AnsatzKind kind = AnsatzKind::SymHVA;
  int p = 0;
  std::vector<double> values;
};

inline int n_params(const SpinChainModel& m, AnsatzKind kind, int p) {
  return kind == AnsatzKind::HVA ? m.n_bonds() * p : 2 * p;
}

inline void check_params(const SpinChainModel& m, const AnsatzParams& a) {
  require(a.p >= 0, ErrorCode::InvalidArgument, "ansatz: p must be nonnegative");
  require(static_cast<int>(a.values.size()) == n_params(m, a.kind, a.p), ErrorCode::InvalidArgument,
          "ansatz: parameter count does not match kind and p");
}

/// Ansatz states inside the sector, with cached spectral data of H_A, H_B.
class AnsatzEvaluator {
 public:
  explicit AnsatzEvaluator(const SpinChainModel& m) : m_(m) {
    ea_.compute(m.HA_sector);
    eb_.compute(m.HB_sector);
    psi0_ = m.sector.restrict(valence_bond_initial(m.L));
    // One sparsity pattern covers every bond, so a layer generator only
    // needs its value array refilled.
    RealMatrix pattern = RealMatrix::Zero(m.sector.dim(), m.sector.dim());
    for (const RealMatrix& b : m.bond_sector) pattern += b.cwiseAbs();
    gen_ = pattern.sparseView();
    gen_.makeCompressed();
    for (const RealMatrix& b : m.bond_sector) {
      RealVector w(gen_.nonZeros());
      Eigen::Index n = 0;
      for (int k = 0; k < gen_.outerSize(); ++k)
        for (SparseReal::InnerIterator it(gen_, k); it; ++it) w[n++] = b(it.row(), it.col());
      bond_values_.push_back(std::move(w));
    }
  }

  const SpinChainModel& model() const { return m_; }
  const Vector& initial() const { return psi0_; }

  Vector state(const AnsatzParams& a) const {
    check_params(m_, a);
    Vector v = psi0_;
    if (a.kind == AnsatzKind::HVA) {
      const int nb = m_.n_bonds();
      for (int layer = 0; layer < a.p; ++layer) {
        SparseReal g = gen_;
        Eigen::Map<RealVector> values(g.valuePtr(), g.nonZeros());
        values.setZero();
        for (int l = 0; l < nb; ++l)
          values += a.values[static_cast<size_t>(layer * nb + l)] * bond_values_[static_cast<size_t>(l)];
        // Gershgorin discs bound the spectrum of the real symmetric generator.
        RealVector centre = RealVector::Zero(g.rows()), radius = RealVector::Zero(g.rows());
        for (int k = 0; k < g.outerSize(); ++k)
          for (SparseReal::InnerIterator it(g, k); it; ++it) {
            if (it.row() == it.col()) centre[it.row()] += it.value();
            else radius[it.row()] += std::abs(it.value());
          }
        double lo = (centre - radius).minCoeff(), hi = (centre + radius).maxCoeff();
        v = expi_action(g, lo, hi, v);
      }
    } else {
      for (int layer = 0; layer < a.p; ++layer) {
        double t1 = a.values[static_cast<size_t>(2 * layer)], t2 = a.values[static_cast<size_t>(2 * layer + 1)];
        Vector ab = apply_phase(ea_, t1, apply_phase(eb_, t2, v));
        Vector ba = apply_phase(eb_, t1, apply_phase(ea_, t2, v));
        v = 0.5 * (ab + ba);
      }
    }
    return v;
  }

  double energy(const Vector& sector_state) const {
    double n2 = sector_state.squaredNorm();
    require(n2 >= tolerances().zero_branch * tolerances().zero_branch, ErrorCode::ZeroState,
            "rayleigh_energy: state has vanishing norm");
    return sector_state.dot(m_.H_sector * sector_state).real() / n2;
  }

  double energy(const AnsatzParams& a) const { return energy(state(a)); }

 private:
  // exp(i c G) v from the eigensystem of G.
  static Vector apply_phase(const Eigen::SelfAdjointEigenSolver<RealMatrix>& es, double c, const Vector& v) {
    const RealMatrix& q = es.eigenvectors();
    Vector w = q.transpose() * v;
    for (Eigen::Index k = 0; k < w.size(); ++k) w[k] *= std::exp(kI * (c * es.eigenvalues()[k]));
    return q * w;
  }

  using SparseReal = Eigen::SparseMatrix<double>;
  using RealPair = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  // e^{iG} psi for real symmetric G with spectrum in [lo, hi], by the
  // Chebyshev expansion with Bessel coefficients. Real and imaginary parts
  // travel as the two columns of one real block.
  // exp(i g) psi with spectrum of g inside [lo, hi]. Long spans are split
  // into equal substeps so every Bessel argument stays small.
  static Vector expi_action(const SparseReal& g, double lo, double hi, const Vector& psi) {
    const double span = 0.5 * (hi - lo);
    const int steps = std::max(1, static_cast<int>(std::ceil(span / kMaxChebSpan)));
    Vector v = psi;
    for (int s = 0; s < steps; ++s) v = expi_step(g, lo, hi, 1.0 / steps, v);
    return v;
  }

  // exp(i h g) psi for one substep of length h.
  static Vector expi_step(const SparseReal& g, double lo, double hi, double h, const Vector& psi) {
    const double c = 0.5 * (lo + hi) * h, r = 0.5 * (hi - lo) * h;
    const cplx phase = std::exp(kI * c);
    if (r <= 1e-300) return phase * psi;
    const Eigen::Index n = psi.size();
    RealPair prev(n, 2), cur(n, 2), next(n, 2), gv(n, 2), acc(n, 2);
    prev.col(0) = psi.real();
    prev.col(1) = psi.imag();
    gv.noalias() = h * (g * prev);
    cur = (gv - c * prev) / r;
    acc = std::cyl_bessel_j(0.0, r) * prev;
    const int max_terms = static_cast<int>(std::ceil(r)) + 200;
    for (int k = 1; k <= max_terms; ++k) {
      if (k > 1) {
        gv.noalias() = h * (g * cur);
        next = (2.0 / r) * gv - (2.0 * c / r) * cur - prev;
        prev.swap(cur);
        cur.swap(next);
      }
      // Coefficient 2 i^k J_k(r).
      double j = std::cyl_bessel_j(static_cast<double>(k), r);
      double w = (k % 4 < 2 ? 2.0 : -2.0) * j;
      if (k % 2 == 0) {
        acc += w * cur;
      } else {
        acc.col(0) -= w * cur.col(1);
        acc.col(1) += w * cur.col(0);
      }
      if (k > r && std::abs(j) < 1e-18) break;
    }
    Vector out(n);
    out.real() = acc.col(0);
    out.imag() = acc.col(1);
    return phase * out;
  }

  static constexpr double kMaxChebSpan = 20.0;

  const SpinChainModel& m_;
  SparseReal gen_;
  std::vector<RealVector> bond_values_;
  Eigen::SelfAdjointEigenSolver<RealMatrix> ea_, eb_;
  Vector psi0_;
};

inline Vector hva_state(const SpinChainModel& m, const AnsatzParams& a) {
  require(a.kind == AnsatzKind::HVA, ErrorCode::InvalidArgument, "hva_state: parameters are not HVA");
  return m.sector.embed(AnsatzEvaluator(m).state(a));
}

/// Unnormalized output of the symmetrized layers.
inline Vector symhva_state(const SpinChainModel& m, const AnsatzParams& a) {
  require(a.kind == AnsatzKind::SymHVA, ErrorCode::InvalidArgument, "symhva_state: parameters are not symHVA");
  Vector v = AnsatzEvaluator(m).state(a);
  require(v.norm() >= tolerances().zero_branch, ErrorCode::ZeroState, "symhva_state: state norm vanished");
  return m.sector.embed(v);
}

/// Layer operator (e^{i t1 A} e^{i t2 B} + e^{i t1 B} e^{i t2 A}) / 2 on the full space.
inline Matrix symhva_layer(const Matrix& a, const Matrix& b, double t1, double t2) {
  Matrix ea1 = expm(kI * t1 * a), eb2 = expm(kI * t2 * b);
  Matrix eb1 = expm(kI * t1 * b), ea2 = expm(kI * t2 * a);
  return 0.5 * (ea1 * eb2 + eb1 * ea2);
}

inline double rayleigh_energy(const SpinChainModel& m, const Vector& psi_tilde) {
  require(psi_tilde.size() == m.H_total.rows(), ErrorCode::DimMismatch, "rayleigh_energy: state dimension mismatch");
  double n2 = psi_tilde.squaredNorm();
  require(std::sqrt(n2) >= tolerances().zero_branch, ErrorCode::ZeroState, "rayleigh_energy: state has vanishing norm");
  return psi_tilde.dot(m.H_total * psi_tilde).real() / n2;
}

struct GroundState {
  double E0 = 0.0;
  double gap = 0.0;
  Vector ground_vector;
  RealVector spectrum;
};

inline GroundState exact_ground(const SpinChainModel& m) {
  SpectralData sd = herm_eig(m.H_total);
  GroundState g;
  g.spectrum = sd.eigenvalues;
  g.E0 = sd.eigenvalues[0];
  g.ground_vector = sd.eigenvectors.col(0);
  g.gap = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index k = 1; k < sd.dim(); ++k)
    if (sd.eigenvalues[k] > g.E0 + 1e-10) {
      g.gap = sd.eigenvalues[k] - g.E0;
      break;
    }
  return g;
}

struct OptimizerOptions {
  int restarts = 50;
  int max_iterations = 2000;
  double fd_step = 1e-6;
  double energy_tol = 1e-13;  // stop after `stall_iterations` changes below this
  int stall_iterations = 5;
};

struct RestartResult {
  double energy = 0.0;
  std::vector<double> params;
  std::vector<double> history;
  int iterations = 0;
};

struct OptimizeResult {
  double best_energy = 0.0;
  AnsatzParams best_params;
  std::vector<double> history;  // accepted iterates of the winning restart
  int best_restart = -1;
  double min_iterate_energy = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::vector<double> restart_energies;
};

namespace detail {

struct Objective {
  const AnsatzEvaluator* eval;
  AnsatzKind kind;
  int p;
  double fd_step;
};

inline double objective_value(const gsl_vector* x, const Objective& o) {
  AnsatzParams a{o.kind, o.p, std::vector<double>(x->size)};
  for (size_t i = 0; i < x->size; ++i) a.values[i] = gsl_vector_get(x, i);
  double e = o.eval->energy(a);
  require(std::isfinite(e), ErrorCode::NonFinite, "optimize: energy is not finite");
  return e;
}

inline double gsl_f(const gsl_vector* x, void* params) { return objective_value(x, *static_cast<Objective*>(params)); }

inline void gsl_df(const gsl_vector* x, void* params, gsl_vector* g) {
  const Objective& o = *static_cast<Objective*>(params);
  gsl_vector* y = gsl_vector_alloc(x->size);
  gsl_vector_memcpy(y, x);
  for (size_t i = 0; i < x->size; ++i) {
    double xi = gsl_vector_get(x, i);
    gsl_vector_set(y, i, xi + o.fd_step);
    double fp = objective_value(y, o);
    gsl_vector_set(y, i, xi - o.fd_step);
    double fm = objective_value(y, o);
    gsl_vector_set(y, i, xi);
    gsl_vector_set(g, i, (fp - fm) / (2.0 * o.fd_step));
  }
  gsl_vector_free(y);
}

inline void gsl_fdf(const gsl_vector* x, void* params, double* f, gsl_vector* g) {
  *f = gsl_f(x, params);
  gsl_df(x, params, g);
}

}  // namespace detail

/// One BFGS descent from `start`.
inline RestartResult local_minimize(const AnsatzEvaluator& eval, AnsatzKind kind, int p, const std::vector<double>& start,
                                    const OptimizerOptions& opt) {
  RestartResult r;
  const size_t n = start.size();
  detail::Objective obj{&eval, kind, p, opt.fd_step};
  gsl_multimin_function_fdf fn;
  fn.n = n;
  fn.f = &detail::gsl_f;
  fn.df = &detail::gsl_df;
  fn.fdf = &detail::gsl_fdf;
  fn.params = &obj;
  gsl_vector* x = gsl_vector_alloc(n);
  for (size_t i = 0; i < n; ++i) gsl_vector_set(x, i, start[i]);
  gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  gsl_multimin_fdfminimizer_set(s, &fn, x, 0.01, 0.1);
  double prev = s->f;
  r.history.push_back(prev);
  int stall = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    int status = gsl_multimin_fdfminimizer_iterate(s);
    r.iterations = it + 1;
    if (status != GSL_SUCCESS) break;
    double f = s->f;
    r.history.push_back(f);
    stall = std::abs(prev - f) < opt.energy_tol ? stall + 1 : 0;
    prev = f;
    if (stall >= opt.stall_iterations) break;
  }
  r.energy = s->f;
  for (size_t i = 0; i < n; ++i) r.params.push_back(gsl_vector_get(s->x, i));
  gsl_multimin_fdfminimizer_free(s);
  gsl_vector_free(x);
  return r;
}

/// Multi-start minimization of the Rayleigh quotient. Restart k draws its
/// start from stream (seed, k) uniformly in (-pi/4, pi/4].
inline OptimizeResult optimize(const SpinChainModel& m, AnsatzKind kind, int p, uint64_t seed,
                               const OptimizerOptions& opt = {}) {
  require(p >= 0, ErrorCode::InvalidArgument, "optimize: p must be nonnegative");
  AnsatzEvaluator eval(m);
  OptimizeResult out;
  out.best_params = {kind, p, {}};
  if (p == 0) {
    out.best_energy = eval.energy(eval.initial());
    out.history = {out.best_energy};
    out.min_iterate_energy = out.best_energy;
    out.best_restart = 0;
    out.restart_energies = {out.best_energy};
    return out;
  }
  gsl_set_error_handler_off();
  const int np = n_params(m, kind, p);
  out.best_energy = std::numeric_limits<double>::infinity();
  for (int k = 0; k < std::max(1, opt.restarts); ++k) {
    RngStream rng(seed, static_cast<uint64_t>(k));
    std::vector<double> start;
    for (int i = 0; i < np; ++i) start.push_back(-kPi / 4 + (kPi / 2) * (1.0 - rng.uniform()));
    RestartResult r = local_minimize(eval, kind, p, start, opt);
    out.restart_energies.push_back(r.energy);
    for (size_t i = 0; i < r.history.size(); ++i) {
      out.min_iterate_energy = std::min(out.min_iterate_energy, r.history[i]);
      if (i > 0 && r.history[i] > r.history[i - 1]) out.monotone = false;
    }
    if (r.energy < out.best_energy) {
      out.best_energy = r.energy;
      out.best_params.values = r.params;
      out.history = r.history;
      out.best_restart = k;
    }
  }
  return out;
}

}  // namespace semicoh
