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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semicoh/heisenberg_vqe.hpp"
#include "semicoh/matrix_io.hpp"
#include "semicoh/mermin.hpp"
#include "semicoh/spectral_walk.hpp"
#include "semicoh/symmetric_forms.hpp"
#include "semicoh/trotter_bench.hpp"
#include "semicoh/zeno.hpp"

namespace semicoh::cli {

// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json num_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + p.string());
  f << text;
}

inline void write_json(const std::filesystem::path& p, const json& j) { write_file(p, j.dump(2) + "\n"); }

inline std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  return p;
}

inline void write_manifest(const std::filesystem::path& out, const std::string& sub, const json& params) {
  write_json(out / "manifest.json", json{{"subcommand", sub}, {"parameters", params}, {"version", "0.1.0"}});
}

inline std::vector<double> parse_list(const std::string& flag, const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (v.empty()) throw UsageError(flag + ": empty list");
  return v;
}

/// Splits "kind:arg" specs such as random:7 or file:path.
inline std::pair<std::string, std::string> split_spec(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos) return {s, ""};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

inline uint64_t parse_seed(const std::string& flag, const std::string& s) {
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + s + "' is not a nonnegative integer seed");
  }
}

// ---------------------------------------------------------------------------
// Subcommand parameters. Every field is a flag and is echoed to the manifest.

struct SymmetryArgs {
  uint64_t seed = 1;
  int dim = 4;
  std::string t_grid = "0.2,0.1,0.05,0.025,0.0125";
  std::string out = "results/symmetry-table";
};

struct WalkArgs {
  uint64_t seed = 1;
  std::string hamiltonian = "builtin-1q";
  std::string state = "zero";
  double omega_plus = std::sqrt(7.0);
  double omega_minus = -std::sqrt(3.0);
  double theta = kPi / 4;
  double phi = kPi / 4;
  double t = 0.5;
  double t_min = 0.05;
  std::string schedule = "constant";
  int steps = 80;
  int shots = 100;
  std::string reset = "on";
  double absorption_tol = 1e-10;
  int warmup = 50;
  std::string out = "results/walk";
};

struct TrotterArgs {
  double d = 1.0;
  double t_min = -1.0;  // negative selects t_max / t_steps
  double t_max = 1.0;
  int t_steps = 64;
  int theta_steps = 64;
  std::string out = "results/trotter";
};

struct VqeArgs {
  uint64_t seed = 1;
  int sites = 8;
  std::string ansatz = "symhva";
  int layers = 2;
  int restarts = 50;
  std::string out = "results/vqe";
};

struct MerminArgs {
  uint64_t seed = 1;
  int n = 3;
  std::string setting = "xy";
  std::string state = "ghz-tilde";
  int shots = 0;
  std::string out = "results/mermin";
};

struct QzeArgs {
  uint64_t seed = 1;
  int dim = 4;
  std::string hamiltonian = "random";
  std::string state = "random";
  double T = 1.0;
  std::string n_list = "1,2,5,10,20,50,100,200,400";
  std::string out = "results/qze";
};

// ---------------------------------------------------------------------------

inline int run_symmetry_table(const SymmetryArgs& a, std::ostream& log) {
  if (a.dim < 1 || a.dim > 64) throw UsageError("--dim: must lie in [1, 64]");
  std::vector<double> grid = parse_list("--t-grid", a.t_grid);
  RngStream rng(a.seed, 0);
  SplitGenerator g(random_anti_hermitian(a.dim, rng), random_anti_hermitian(a.dim, rng));
  auto order_str = [](const OrderFit& f) { return f.exact_zero ? std::string("exact_zero") : num(f.order); };
  std::string table = "process_id,tr_mark,tr_order,i_mark,i_order,tris_mark\n";
  std::string resid = "process_id,t,eps_tr,eps_i,eps_tris\n";
  for (Process p : kAllProcesses) {
    auto rep = symmetry_errors(p, g, grid);
    table += std::string(process_id(p)) + "," + symmetry_mark(p, SymmetryColumn::TR, rep.fitted_order_tr) + "," +
             order_str(rep.fitted_order_tr) + "," + symmetry_mark(p, SymmetryColumn::I, rep.fitted_order_i) + "," +
             order_str(rep.fitted_order_i) + "," + symmetry_mark(p, SymmetryColumn::TRIS, rep.fitted_order_tris) + "\n";
    for (size_t k = 0; k < grid.size(); ++k)
      resid += std::string(process_id(p)) + "," + num(grid[k]) + "," + num(rep.eps_tr[k]) + "," +
               num(rep.eps_i[k]) + "," + num(rep.eps_tris[k]) + "\n";
  }
  auto out = prepare_out(a.out);
  write_file(out / "table.csv", table);
  write_file(out / "residuals.csv", resid);
  write_manifest(out, "symmetry-table", {{"seed", a.seed}, {"dim", a.dim}, {"t-grid", a.t_grid}, {"out", a.out}});
  log << "wrote " << (out / "table.csv").string() << "\n";
  return kExitOk;
}

inline Vector load_state(const std::string& flag, const std::string& spec, int dim, uint64_t fallback_seed) {
  auto [kind, arg] = split_spec(spec);
  if (kind == "zero") {
    Vector v = Vector::Zero(dim);
    v[0] = 1.0;
    return v;
  }
  if (kind == "random") {
    RngStream rng(arg.empty() ? fallback_seed : parse_seed(flag, arg), 1);
    return random_state(dim, rng);
  }
  if (kind == "file") {
    Vector v = vector_from_json(read_json_file(arg));
    if (v.size() != dim) throw UsageError(flag + ": state dimension does not match the Hamiltonian");
    return v;
  }
  throw UsageError(flag + ": unknown state spec '" + spec + "'");
}

inline int run_walk(const WalkArgs& a, std::ostream& log) {
  if (a.steps < 1) throw UsageError("--steps: must be at least 1");
  if (a.shots < 1) throw UsageError("--shots: must be at least 1");
  if (a.reset != "on" && a.reset != "off") throw UsageError("--reset: expected on or off");
  if (a.schedule != "constant" && a.schedule != "log-uniform")
    throw UsageError("--schedule: expected constant or log-uniform");
  if (!(a.absorption_tol > 0.0 && a.absorption_tol < 1e-4)) throw UsageError("--absorption-tol: must lie in (0, 1e-4)");
  if (a.warmup < 0) throw UsageError("--warmup: must be nonnegative");
  if (!std::isfinite(a.t)) throw UsageError("--t: must be finite");
  WalkConfig cfg;
  if (a.hamiltonian == "builtin-1q") {
    cfg.hamiltonian = walk_hamiltonian_1q(a.omega_plus, a.omega_minus, a.theta, a.phi);
  } else {
    auto [kind, arg] = split_spec(a.hamiltonian);
    cfg.hamiltonian = read_matrix_file(kind == "file" ? arg : a.hamiltonian);
  }
  if (a.schedule == "constant") {
    cfg.t_schedule = constant_schedule(a.t, a.steps);
  } else {
    if (!(a.t_min > 0.0 && a.t_min <= a.t)) throw UsageError("--t-min: need 0 < t-min <= t");
    RngStream rng(a.seed, std::numeric_limits<uint64_t>::max());
    cfg.t_schedule = log_uniform_schedule(a.t_min, a.t, a.steps, rng);
  }
  cfg.n_shots = a.shots;
  cfg.seed = a.seed;
  cfg.absorption_tol = a.absorption_tol;
  cfg.reset_policy = a.reset == "on" ? ResetPolicy::Reset : ResetPolicy::Carry;
  const int dim = static_cast<int>(cfg.hamiltonian.rows());
  Vector psi0 = load_state("--state", a.state, dim, a.seed);
  SpectralWalk walk(cfg);
  if (walk.degenerate())
    log << "warning: two eigenvalues share a magnitude; the walk cannot separate them. "
           "Add a constant shift to the Hamiltonian.\n";
  auto trajs = walk.run_all(psi0);
  BornStatistics st = born_statistics(trajs, walk.spectral(), a.warmup, a.absorption_tol);

  std::string bitmatrix, fid = "shot,step";
  for (int n = 0; n < dim; ++n) fid += ",f" + std::to_string(n);
  fid += "\n";
  for (size_t s = 0; s < trajs.size(); ++s) {
    const auto& tr = trajs[s];
    for (size_t k = 0; k < tr.measured_bits.size(); ++k) {
      if (k) bitmatrix += ",";
      bitmatrix += tr.measured_bits[k] ? "1" : "0";
    }
    bitmatrix += "\n";
    for (size_t k = 0; k < tr.fidelities.size(); ++k) {
      fid += std::to_string(s) + "," + std::to_string(k);
      for (int n = 0; n < dim; ++n) fid += "," + num(tr.fidelities[k][n]);
      fid += "\n";
    }
  }

  const SpectralData& sd = walk.spectral();
  json eig = json::array(), pp = json::array(), pexp = json::array(), w_est = json::array(), aliased = json::array();
  for (int n = 0; n < dim; ++n) {
    double w = sd.eigenvalues[n];
    eig.push_back(w);
    pp.push_back(num_or_null(st.p_plus[static_cast<size_t>(n)]));
    bool constant = a.schedule == "constant";
    pexp.push_back(constant ? json(std::pow(std::cos(w * a.t), 2)) : json(nullptr));
    w_est.push_back(constant ? num_or_null(omega_from_p_plus(st.p_plus[static_cast<size_t>(n)], a.t)) : json(nullptr));
    aliased.push_back(std::abs(w * a.t) > kPi / 2);
  }
  ChannelRun ch = iterate_channel(cfg.hamiltonian, cfg.t_schedule, pure_density(psi0));
  double drift = 0.0;
  for (double e : ch.energies) drift = std::max(drift, std::abs(e - ch.energies.front()));
  json absorbed_steps = json::array();
  for (const auto& tr : trajs) absorbed_steps.push_back(tr.absorbed_step ? json(*tr.absorbed_step) : json(nullptr));
  json summary = {
      {"shots", st.shots},
      {"steps", a.steps},
      {"eigenvalues", eig},
      {"absorbed_fraction", st.absorbed_fraction},
      {"conditional_fraction", st.conditional_fraction},
      {"unabsorbed_fraction", st.unabsorbed_fraction},
      {"p_plus_estimate", pp},
      {"p_plus_samples", st.p_plus_samples},
      {"p_plus_expected", pexp},
      {"omega_estimate_principal", w_est},
      {"omega_estimate_aliased", aliased},
      {"absorbed_step", absorbed_steps},
      {"channel_energy_drift", drift},
      {"degenerate_spectrum_warning", walk.degenerate()},
  };
  auto out = prepare_out(a.out);
  write_file(out / "bitmatrix.csv", bitmatrix);
  write_file(out / "fidelities.csv", fid);
  write_json(out / "summary.json", summary);
  write_manifest(out, "walk",
                 {{"seed", a.seed}, {"hamiltonian", a.hamiltonian}, {"state", a.state}, {"omega-plus", a.omega_plus},
                  {"omega-minus", a.omega_minus}, {"theta", a.theta}, {"phi", a.phi}, {"t", a.t}, {"t-min", a.t_min},
                  {"schedule", a.schedule}, {"steps", a.steps}, {"shots", a.shots}, {"reset", a.reset},
                  {"absorption-tol", a.absorption_tol}, {"warmup", a.warmup}, {"out", a.out}});
  log << "wrote " << trajs.size() << " trajectories to " << out.string() << "\n";
  return kExitOk;
}

inline int run_trotter(const TrotterArgs& a, std::ostream& log) {
  if (a.t_steps < 1) throw UsageError("--t-steps: must be at least 1");
  if (a.theta_steps < 1) throw UsageError("--theta-steps: must be at least 1");
  if (!(a.d >= 0.0) || !std::isfinite(a.d)) throw UsageError("--d: must be a finite nonnegative number");
  double t_min = a.t_min < 0.0 ? a.t_max / a.t_steps : a.t_min;
  if (!(t_min <= a.t_max)) throw UsageError("--t-min: must not exceed --t-max");
  auto rows = sweep_grid(linear_grid(t_min, a.t_max, a.t_steps), theta_grid(a.theta_steps), a.d);
  std::string csv = "t,theta,err_plus,err_trotter2\n";
  for (const auto& r : rows) csv += num(r.t) + "," + num(r.theta) + "," + num(r.err_plus) + "," + num(r.err_trotter2) + "\n";
  auto out = prepare_out(a.out);
  write_file(out / "grid.csv", csv);
  write_manifest(out, "trotter",
                 {{"d", a.d}, {"t-min", t_min}, {"t-max", a.t_max}, {"t-steps", a.t_steps},
                  {"theta-steps", a.theta_steps}, {"out", a.out}});
  log << "wrote " << rows.size() << " grid rows to " << (out / "grid.csv").string() << "\n";
  return kExitOk;
}

inline int run_vqe(const VqeArgs& a, std::ostream& log) {
  if (a.sites < 2 || a.sites > 12 || a.sites % 2) throw UsageError("--sites: must be even and lie in [2, 12]");
  if (a.ansatz != "hva" && a.ansatz != "symhva") throw UsageError("--ansatz: expected hva or symhva");
  if (a.layers < 0) throw UsageError("--layers: must be nonnegative");
  if (a.restarts < 1) throw UsageError("--restarts: must be at least 1");
  SpinChainModel m = build_afhm(a.sites, true);
  GroundState gs = exact_ground(m);
  AnsatzKind kind = a.ansatz == "hva" ? AnsatzKind::HVA : AnsatzKind::SymHVA;
  OptimizerOptions opt;
  opt.restarts = a.restarts;
  json per_p = json::array();
  for (int p = 0; p <= a.layers; ++p) {
    OptimizeResult r = optimize(m, kind, p, a.seed, opt);
    double rel = std::abs(r.best_energy - gs.E0) / std::abs(gs.E0);
    per_p.push_back({{"p", p}, {"ansatz", a.ansatz}, {"best_energy", r.best_energy}, {"rel_error", rel},
                     {"n_params", n_params(m, kind, p)}, {"best_params", r.best_params.values},
                     {"min_iterate_energy", r.min_iterate_energy}});
    log << a.ansatz << " p=" << p << " E=" << num(r.best_energy) << " rel_error=" << num(rel) << "\n";
  }
  auto out = prepare_out(a.out);
  write_json(out / "results.json", {{"E0_exact", gs.E0}, {"gap", num_or_null(gs.gap)}, {"per_p", per_p}});
  write_manifest(out, "vqe",
                 {{"seed", a.seed}, {"sites", a.sites}, {"ansatz", a.ansatz}, {"layers", a.layers},
                  {"restarts", a.restarts}, {"out", a.out}});
  return kExitOk;
}

inline MerminSetting load_setting(const std::string& spec, int n) {
  auto [kind, arg] = split_spec(spec);
  if (kind == "xy") return MerminSetting::xy(n);
  if (kind == "random") {
    RngStream rng(parse_seed("--setting", arg), 0);
    return MerminSetting::random(n, rng);
  }
  if (kind == "file") {
    json j = read_json_file(arg);
    if (!j.contains("pairs") || !j["pairs"].is_array() || static_cast<int>(j["pairs"].size()) != n)
      throw UsageError("--setting: file needs a 'pairs' array of length n");
    std::vector<std::pair<Matrix, Matrix>> pairs;
    for (const auto& p : j["pairs"]) pairs.emplace_back(matrix_from_json(p.at(0)), matrix_from_json(p.at(1)));
    return MerminSetting(std::move(pairs));
  }
  throw UsageError("--setting: expected xy, random:<seed> or file:<path>");
}

inline int run_mermin(const MerminArgs& a, std::ostream& log) {
  if (a.n < 2 || a.n > 10) throw UsageError("--n: must lie in [2, 10]");
  if (a.shots < 0) throw UsageError("--shots: must be nonnegative");
  MerminSetting s = load_setting(a.setting, a.n);
  const int dim = 1 << a.n;
  Vector psi;
  auto [kind, arg] = split_spec(a.state);
  if (kind == "ghz+") psi = ghz_state(a.n, kI);
  else if (kind == "ghz-") psi = ghz_state(a.n, -kI);
  else if (kind == "ghz-tilde") psi = ghz_tilde(a.n, +1);
  else psi = load_state("--state", a.state, dim, a.seed);
  require_normalized(psi, "mermin");

  MerminOperators rec = mermin_recursive(s), clo = mermin_closed(s), tm = transfer_matrix_eval(s);
  double agree = std::max({(rec.M - clo.M).norm(), (rec.M - tm.M).norm(), (rec.M_prime - clo.M_prime).norm(),
                           (rec.M_prime - tm.M_prime).norm()});
  bool is_xy = split_spec(a.setting).first == "xy";
  json spectrum = {{"setting_is_xy", is_xy}};
  if (is_xy) {
    SpectralData sd = herm_eig(clo.M);
    double top = std::pow(2.0, (a.n - 1) / 2.0), dev = 0.0;
    std::vector<double> expected(static_cast<size_t>(dim), 0.0);
    expected.front() = -top;
    expected.back() = top;
    for (int k = 0; k < dim; ++k) dev = std::max(dev, std::abs(sd.eigenvalues[k] - expected[static_cast<size_t>(k)]));
    spectrum["max_deviation"] = dev;
    spectrum["passed"] = dev <= 1e-10;
  }
  double expectation_exact = semicoh::expectation(clo.M, psi);
  double expectation_value = expectation_exact;
  if (a.shots > 0) {
    if (!is_xy) throw UsageError("--shots: swap-test sampling needs the xy setting");
    RngStream rng(a.seed, 0);
    double fp = swap_test_overlap(ghz_tilde(a.n, +1), psi, a.shots, &rng);
    double fm = swap_test_overlap(ghz_tilde(a.n, -1), psi, a.shots, &rng);
    expectation_value = std::pow(2.0, (a.n - 1) / 2.0) * (fp - fm);
  }
  json report = {{"expectation", expectation_value}, {"expectation_exact", expectation_exact},
                 {"construction_agreement", agree}, {"spectrum_check", spectrum}};
  try {
    MerminMeasurement mm = measure_mermin_circuit(s, psi);
    report["p0"] = mm.p0;
    report["bound"] = mm.bound;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroSuccess) throw;
    report["p0"] = 0.0;
    report["bound"] = 0.0;
  }
  auto out = prepare_out(a.out);
  write_json(out / "report.json", report);
  write_manifest(out, "mermin",
                 {{"seed", a.seed}, {"n", a.n}, {"setting", a.setting}, {"state", a.state}, {"shots", a.shots},
                  {"out", a.out}});
  log << "<M_" << a.n << "> = " << num(expectation_value) << "\n";
  return kExitOk;
}

inline int run_qze(const QzeArgs& a, std::ostream& log) {
  if (a.dim < 1 || a.dim > 1024) throw UsageError("--dim: must lie in [1, 1024]");
  std::vector<double> ns = parse_list("--n-list", a.n_list);
  for (double n : ns)
    if (n < 1 || n != std::floor(n)) throw UsageError("--n-list: entries must be positive integers");
  Matrix h;
  auto [hk, harg] = split_spec(a.hamiltonian);
  if (hk == "random") {
    RngStream rng(harg.empty() ? a.seed : parse_seed("--hamiltonian", harg), 0);
    h = random_hermitian(a.dim, rng);
  } else if (hk == "file") {
    h = read_matrix_file(harg);
  } else {
    throw UsageError("--hamiltonian: expected random[:<seed>] or file:<path>");
  }
  Vector psi = load_state("--state", a.state, static_cast<int>(h.rows()), a.seed);
  require_normalized(psi, "qze");
  Matrix hT = a.T * h;
  double m1 = expectation(hT, psi), m2 = expectation(hT * hT, psi), m4 = expectation(hT * hT * hT * hT, psi);
  std::string csv = "n,S,S_check,S_tilde\n";
  json rows = json::array();
  for (double nd : ns) {
    int n = static_cast<int>(nd);
    ZenoSurvival z = qze_survival(h, a.T, n, psi);
    csv += std::to_string(n) + "," + num(z.s) + "," + num(z.s_check) + "," + num(z.s_tilde) + "\n";
    rows.push_back({{"n", n}, {"n2_one_minus_S", n * double(n) * (1 - z.s)}, {"n_one_minus_S_check", n * (1 - z.s_check)},
                    {"n_one_minus_S_tilde", n * (1 - z.s_tilde)}, {"ordered", z.s >= z.s_tilde && z.s_tilde >= z.s_check}});
  }
  json summary = {{"limit_S", 0.25 * (m4 - m2 * m2)}, {"limit_S_check", m2}, {"limit_S_tilde", m2 - m1 * m1}, {"rows", rows}};
  auto out = prepare_out(a.out);
  write_file(out / "qze.csv", csv);
  write_json(out / "summary.json", summary);
  write_manifest(out, "qze",
                 {{"seed", a.seed}, {"dim", a.dim}, {"hamiltonian", a.hamiltonian}, {"state", a.state}, {"T", a.T},
                  {"n-list", a.n_list}, {"out", a.out}});
  log << "wrote " << ns.size() << " rows to " << (out / "qze.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline std::string json_token(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "on" : "off";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return num(v.get<double>());
  throw UsageError("--config: values must be strings, numbers or booleans");
}

/// Expands --config into flag tokens placed ahead of the explicit flags, so
/// explicit flags win under the take-last policy.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::vector<std::string> head{args[0]}, rest, config_tokens;
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    const std::string& s = args[i];
    if (s == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: missing path");
      path = args[++i];
    } else if (s.rfind("--config=", 0) == 0) {
      path = s.substr(9);
    } else {
      rest.push_back(s);
    }
  }
  if (!path.empty()) {
    json j;
    try {
      j = read_json_file(path);
    } catch (const Error& e) {
      throw UsageError(std::string("--config: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("--config: expected a JSON object");
    if (j.contains("subcommand") && j["subcommand"] != args[0])
      throw UsageError("--config: file was written by subcommand " + j["subcommand"].dump());
    const json& params = j.contains("parameters") ? j["parameters"] : j;
    for (auto it = params.begin(); it != params.end(); ++it) {
      if (j.contains("parameters") == false && (it.key() == "subcommand" || it.key() == "version")) continue;
      config_tokens.push_back("--" + it.key());
      config_tokens.push_back(json_token(it.value()));
    }
  }
  head.insert(head.end(), config_tokens.begin(), config_tokens.end());
  head.insert(head.end(), rest.begin(), rest.end());
  return head;
}

/// Entry point. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"semicoh: symmetric semicoherent quantum process workbench", "semicoh"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  SymmetryArgs sym;
  auto* s_sym = app.add_subcommand("symmetry-table", "Classify TR, I and TR x I symmetry breaking of product formulas");
  s_sym->add_option("--seed", sym.seed, "Seed for the random split");
  s_sym->add_option("--dim", sym.dim, "Dimension of the random anti-Hermitian pair");
  s_sym->add_option("--t-grid", sym.t_grid, "Comma-separated time steps for the order fits");
  s_sym->add_option("--out", sym.out, "Output directory");

  WalkArgs walk;
  auto* s_walk = app.add_subcommand("walk", "Spectral-projection random walk trajectories");
  s_walk->add_option("--seed", walk.seed, "Base seed; shot k uses stream k");
  s_walk->add_option("--hamiltonian", walk.hamiltonian, "builtin-1q or a matrix JSON file");
  s_walk->add_option("--state", walk.state, "Initial state: zero, random:<seed> or file:<path>");
  s_walk->add_option("--omega-plus", walk.omega_plus);
  s_walk->add_option("--omega-minus", walk.omega_minus);
  s_walk->add_option("--theta", walk.theta);
  s_walk->add_option("--phi", walk.phi);
  s_walk->add_option("--t", walk.t, "Step size (upper bound for log-uniform schedules)");
  s_walk->add_option("--t-min", walk.t_min, "Lower bound for log-uniform schedules");
  s_walk->add_option("--schedule", walk.schedule, "constant or log-uniform");
  s_walk->add_option("--steps", walk.steps);
  s_walk->add_option("--shots", walk.shots);
  s_walk->add_option("--reset", walk.reset, "on resets the ancilla after each readout, off carries it");
  s_walk->add_option("--absorption-tol", walk.absorption_tol);
  s_walk->add_option("--warmup", walk.warmup, "Steps skipped before estimating transition probabilities");
  s_walk->add_option("--out", walk.out, "Output directory");

  TrotterArgs trot;
  auto* s_trot = app.add_subcommand("trotter", "Single-qubit LCTU versus second-order Trotter error grid");
  s_trot->add_option("--d", trot.d);
  s_trot->add_option("--t-min", trot.t_min, "Smallest t (default t-max / t-steps)");
  s_trot->add_option("--t-max", trot.t_max);
  s_trot->add_option("--t-steps", trot.t_steps);
  s_trot->add_option("--theta-steps", trot.theta_steps);
  s_trot->add_option("--out", trot.out, "Output directory");

  VqeArgs vqe;
  auto* s_vqe = app.add_subcommand("vqe", "HVA and symHVA minimization on the Heisenberg ring");
  s_vqe->add_option("--seed", vqe.seed);
  s_vqe->add_option("--sites", vqe.sites);
  s_vqe->add_option("--ansatz", vqe.ansatz, "hva or symhva");
  s_vqe->add_option("--layers", vqe.layers, "Largest layer count; every p from 0 is reported");
  s_vqe->add_option("--restarts", vqe.restarts);
  s_vqe->add_option("--out", vqe.out, "Output directory");

  MerminArgs mer;
  auto* s_mer = app.add_subcommand("mermin", "Mermin polynomial constructions and measurement circuits");
  s_mer->add_option("--seed", mer.seed);
  s_mer->add_option("--n", mer.n);
  s_mer->add_option("--setting", mer.setting, "xy, random:<seed> or file:<path>");
  s_mer->add_option("--state", mer.state, "ghz+, ghz-, ghz-tilde, random:<seed> or file:<path>");
  s_mer->add_option("--shots", mer.shots, "Swap-test shots; 0 is exact");
  s_mer->add_option("--out", mer.out, "Output directory");

  QzeArgs qze;
  auto* s_qze = app.add_subcommand("qze", "Zeno survival probabilities");
  s_qze->add_option("--seed", qze.seed);
  s_qze->add_option("--dim", qze.dim);
  s_qze->add_option("--hamiltonian", qze.hamiltonian, "random[:<seed>] or file:<path>");
  s_qze->add_option("--state", qze.state, "random[:<seed>], zero or file:<path>");
  s_qze->add_option("--T", qze.T, "Total evolution time");
  s_qze->add_option("--n-list", qze.n_list);
  s_qze->add_option("--out", qze.out, "Output directory");

  try {
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    log << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (const char* env = std::getenv("SEMICOH_SEED"); env && *env) {
    try {
      uint64_t s = parse_seed("SEMICOH_SEED", env);
      sym.seed = walk.seed = vqe.seed = mer.seed = qze.seed = s;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  try {
    if (*s_sym) return run_symmetry_table(sym, log);
    if (*s_walk) return run_walk(walk, err);
    if (*s_trot) return run_trotter(trot, log);
    if (*s_vqe) return run_vqe(vqe, log);
    if (*s_mer) return run_mermin(mer, log);
    if (*s_qze) return run_qze(qze, log);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args));
}

}  // namespace semicoh::cli
