// Copyright 2026 The iongate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <vector>

#include "iongate/common.hpp"
#include "iongate/magnus.hpp"
#include "iongate/mathieu.hpp"

namespace iongate {

// Brute-force validator: direct integration of the full interaction-picture
// Hamiltonian, carrier included with no rotating-wave approximation, in a
// truncated Fock space.  The spin-phonon couplings carry the
// micromotion-dressed mode functions u_m(t) and the excess-micromotion
// phase modulation e^{i phi_i(t)}, so the same code validates secular and
// first-sideband gates.

struct HilbertSpec {
  int n_ions = 2;        // 1 or 2
  int n_modes = 2;       // 1 or 2
  int fock_cutoff = 12;  // levels per mode
  double nbar = 0.0;     // 0 selects the ground state
  double thermal_weight = 0.999;  // retained thermal population

  void validate() const {
    if (n_ions < 1 || n_ions > 2)
      throw validation_error("oracle supports 1 or 2 ions");
    if (n_modes < 1 || n_modes > 2)
      throw validation_error("oracle supports 1 or 2 modes");
    if (fock_cutoff < 4) throw validation_error("fock_cutoff must be >= 4");
    if (nbar < 0.0) throw validation_error("nbar must be >= 0");
  }
};

struct OracleDrive {
  std::vector<double> rabi;        // per ion, rad/s (dressed)
  std::vector<double> phase;       // varphi_i, rad
  std::vector<double> beta_tilde;  // per ion
  double lab_detuning = 0.0;  // cos(delta t) frequency; Omega_rf + delta~
                              // when driving the first micromotion sideband
  double q = 0.0;
  double rf_freq = 0.0;
  int l_max = 3;
  std::vector<double> mode_freqs;  // rad/s
  std::vector<double> eta;         // per mode
  Eigen::MatrixXd mode_matrix;     // (ion, mode)
  // spin-mixing of the branch used when extracting <a_m>; (1, 0) is the
  // pure sigma~^y force
  std::vector<double> c_y, c_x;
  bool include_carrier = true;
  bool include_force = true;
};

struct StepControls {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_leak = 1e-6;  // tolerated top-Fock-level population
  int min_steps_per_period = 20;
};

struct SimResult {
  Eigen::VectorXcd state;
  double bell_fidelity = 0.0;  // N=2 only
  double norm_drift = 0.0;
  double max_top_leak = 0.0;
  std::vector<complexd> gamma_measured;  // <a_m> on the (+,+) force branch
  double retained_weight = 1.0;          // thermal runs
  long steps = 0;
};

namespace detail {

struct OracleWorkspace {
  int n_ions = 0, n_modes = 0, cutoff = 0, dim = 0, mode_dim = 0;
  std::vector<int> mode_stride;  // within the mode block
  std::vector<int> spin_stride;  // flip stride of each ion
  std::vector<double> sqrt_n;
  std::vector<double> floquet_coeffs;  // 2 C_l, l = 1..l_max
  double xi = 1.0;

  OracleWorkspace(const HilbertSpec& spec, const OracleDrive& drv) {
    n_ions = spec.n_ions;
    n_modes = spec.n_modes;
    cutoff = spec.fock_cutoff;
    mode_dim = 1;
    for (int m = 0; m < n_modes; ++m) mode_dim *= cutoff;
    dim = (1 << n_ions) * mode_dim;
    mode_stride.resize(n_modes);
    mode_stride[n_modes - 1] = 1;
    for (int m = n_modes - 2; m >= 0; --m)
      mode_stride[m] = mode_stride[m + 1] * cutoff;
    spin_stride.resize(n_ions);
    for (int i = 0; i < n_ions; ++i)
      spin_stride[i] = (1 << (n_ions - 1 - i)) * mode_dim;
    sqrt_n.resize(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) sqrt_n[n] = std::sqrt(double(n));
    xi = 1.0;
    floquet_coeffs.resize(drv.l_max);
    for (int l = 1; l <= drv.l_max; ++l) {
      floquet_coeffs[l - 1] = 2.0 * floquet_coefficient(drv.q, l);
      xi += floquet_coeffs[l - 1];
    }
  }

  double envelope(double rf_freq, double t) const {
    double env = 1.0;
    for (std::size_t l = 0; l < floquet_coeffs.size(); ++l)
      env += floquet_coeffs[l] * std::cos((l + 1.0) * rf_freq * t);
    return env;
  }
};

/// out += H(t) psi.
inline void apply_hamiltonian(const OracleWorkspace& ws,
                              const OracleDrive& drv, double t,
                              const Eigen::VectorXcd& psi,
                              Eigen::VectorXcd& out) {
  const double cosd = std::cos(drv.lab_detuning * t);
  const bool micromotion = drv.q != 0.0 && drv.rf_freq > 0.0;
  const double env = micromotion ? ws.envelope(drv.rf_freq, t) : 1.0;
  const double xi = micromotion ? ws.xi : 1.0;
  std::vector<complexd> u(ws.n_modes);
  for (int m = 0; m < ws.n_modes; ++m)
    u[m] = std::exp(kImag * drv.mode_freqs[m] * t) * env / xi;

  for (int i = 0; i < ws.n_ions; ++i) {
    double phi = drv.phase[i];
    if (drv.beta_tilde[i] != 0.0 && drv.rf_freq > 0.0)
      phi += drv.beta_tilde[i] * std::cos(drv.rf_freq * t);
    const complexd mod = std::exp(kImag * phi) * cosd;
    const complexd carr = drv.include_carrier ? drv.rabi[i] * mod : complexd{};
    std::vector<complexd> dcoef(ws.n_modes), ecoef(ws.n_modes);
    for (int m = 0; m < ws.n_modes; ++m) {
      const complexd base = drv.include_force
                                ? kImag * drv.rabi[i] *
                                      drv.mode_matrix(i, m) * drv.eta[m] * mod
                                : complexd{};
      dcoef[m] = base * u[m];
      ecoef[m] = base * std::conj(u[m]);
    }
    const int flip = ws.spin_stride[i];
    const int spin_bit = 1 << (ws.n_ions - 1 - i);
    const int n_spins = 1 << ws.n_ions;
    for (int s = 0; s < n_spins; ++s) {
      if (s & spin_bit) continue;  // iterate over ion-i-down spin states
      const int base_dn = s * ws.mode_dim;
      for (int k = 0; k < ws.mode_dim; ++k) {
        const int dn = base_dn + k;
        const int up = dn + flip;
        if (drv.include_carrier) {
          out[up] += carr * psi[dn];
          out[dn] += std::conj(carr) * psi[up];
        }
        if (!drv.include_force) continue;
        int rem = k;
        for (int m = 0; m < ws.n_modes; ++m) {
          const int nm = rem / ws.mode_stride[m];
          rem -= nm * ws.mode_stride[m];
          if (nm + 1 < ws.cutoff) {
            const double r = ws.sqrt_n[nm + 1];
            out[up + ws.mode_stride[m]] += dcoef[m] * r * psi[dn];
            out[dn] += std::conj(dcoef[m]) * r * psi[up + ws.mode_stride[m]];
          }
          if (nm > 0) {
            const double r = ws.sqrt_n[nm];
            out[up - ws.mode_stride[m]] += ecoef[m] * r * psi[dn];
            out[dn] += std::conj(ecoef[m]) * r * psi[up - ws.mode_stride[m]];
          }
        }
      }
    }
  }
}

inline double top_level_population(const OracleWorkspace& ws,
                                   const Eigen::VectorXcd& psi) {
  double leak = 0.0;
  for (int idx = 0; idx < ws.dim; ++idx) {
    int k = idx % ws.mode_dim;
    bool top = false;
    for (int m = 0; m < ws.n_modes && !top; ++m) {
      const int nm = (k / ws.mode_stride[m]) % ws.cutoff;
      top = nm == ws.cutoff - 1;
    }
    if (top) leak += std::norm(psi[idx]);
  }
  return leak;
}

}  // namespace detail

/// Dense H(t), for Hermiticity checks and small-space diagnostics.
inline Eigen::MatrixXcd build_hamiltonian(const HilbertSpec& spec,
                                          const OracleDrive& drv, double t) {
  spec.validate();
  detail::OracleWorkspace ws(spec, drv);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(ws.dim, ws.dim);
  Eigen::VectorXcd col = Eigen::VectorXcd::Zero(ws.dim);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(ws.dim);
  for (int j = 0; j < ws.dim; ++j) {
    basis.setZero();
    basis[j] = 1.0;
    col.setZero();
    detail::apply_hamiltonian(ws, drv, t, basis, col);
    h.col(j) = col;
  }
  return h;
}

/// Integrates d psi / dt = -i H(t) psi from |dd>|n_init> with an embedded
/// Dormand-Prince 5(4) pair; the r.f. period is always resolved by at least
/// min_steps_per_period steps when micromotion terms are active.
inline SimResult evolve_from(const HilbertSpec& spec, const OracleDrive& drv,
                             double t_g, const std::vector<int>& n_init,
                             const StepControls& ctl = {}) {
  spec.validate();
  detail::OracleWorkspace ws(spec, drv);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(ws.dim);
  {
    int k = 0;
    for (int m = 0; m < ws.n_modes; ++m) {
      if (n_init[m] < 0 || n_init[m] >= ws.cutoff)
        throw validation_error("initial Fock level outside cutoff");
      k += n_init[m] * ws.mode_stride[m];
    }
    psi[k] = 1.0;  // all spins down
  }

  // Dormand-Prince 5(4) tableau
  static const double kA[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
       11.0 / 84}};
  static const double kC[7] = {0.0,     1.0 / 5, 3.0 / 10, 4.0 / 5,
                               8.0 / 9, 1.0,     1.0};
  static const double kB5[7] = {35.0 / 384,    0.0,  500.0 / 1113,
                                125.0 / 192,   -2187.0 / 6784,
                                11.0 / 84,     0.0};
  static const double kB4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                                393.0 / 640,     -92097.0 / 339200,
                                187.0 / 2100,    1.0 / 40};

  const bool micromotion =
      (drv.q != 0.0 || drv.beta_tilde[0] != 0.0) && drv.rf_freq > 0.0;
  double fastest = std::abs(drv.lab_detuning);
  for (double w : drv.mode_freqs) fastest = std::max(fastest, w);
  if (micromotion) fastest = std::max(fastest, drv.rf_freq);
  const double h_max = kTwoPi / fastest / ctl.min_steps_per_period;

  std::vector<Eigen::VectorXcd> k_stage(7, Eigen::VectorXcd::Zero(ws.dim));
  Eigen::VectorXcd tmp(ws.dim), next5(ws.dim), next4(ws.dim);
  SimResult res;
  double t = 0.0;
  double h = std::min(h_max, t_g);
  while (t < t_g) {
    h = std::min(h, t_g - t);
    for (int st = 0; st < 7; ++st) {
      tmp = psi;
      for (int j = 0; j < st; ++j)
        if (kA[st][j] != 0.0) tmp += (h * kA[st][j]) * k_stage[j];
      k_stage[st].setZero();
      detail::apply_hamiltonian(ws, drv, t + kC[st] * h, tmp, k_stage[st]);
      k_stage[st] *= complexd{0.0, -1.0};
    }
    next5 = psi;
    next4 = psi;
    for (int st = 0; st < 7; ++st) {
      if (kB5[st] != 0.0) next5 += (h * kB5[st]) * k_stage[st];
      if (kB4[st] != 0.0) next4 += (h * kB4[st]) * k_stage[st];
    }
    const double err = (next5 - next4).norm();
    const double tol = ctl.atol + ctl.rtol * next5.norm();
    if (err <= tol) {
      t += h;
      psi = next5;
      ++res.steps;
      const double leak = detail::top_level_population(ws, psi);
      res.max_top_leak = std::max(res.max_top_leak, leak);
      if (leak > ctl.max_leak) {
        std::ostringstream msg;
        msg << "oracle: population " << leak
            << " reached the top Fock level; fock_cutoff " << ws.cutoff
            << " too small";
        throw numerical_error(msg.str());
      }
    }
    const double shrink =
        err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h *= std::clamp(shrink, 0.2, 5.0);
    h = std::min(h, h_max);
    if (h < 1e-18 * t_g)
      throw numerical_error("oracle: adaptive step size underflow");
  }
  res.state = psi;
  res.norm_drift = std::abs(psi.norm() - 1.0);

  if (ws.n_ions == 2) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int s = 0; s < 4; ++s)
      for (int sp = 0; sp < 4; ++sp) {
        complexd acc{};
        for (int k = 0; k < ws.mode_dim; ++k)
          acc += psi[s * ws.mode_dim + k] *
                 std::conj(psi[sp * ws.mode_dim + k]);
        rho(s, sp) = acc;
      }
    const Eigen::Vector4cd bell = ideal_bell_state(drv.phase[0],
                                                   drv.phase[1]);
    res.bell_fidelity = std::real(bell.dot(rho * bell));

    // <a_m> conditioned on both ions being in the +1 eigenstate of the
    // force's spin operator
    Eigen::Vector2cd plus[2];
    for (int i = 0; i < 2; ++i) {
      const complexd upper = std::exp(kImag * drv.phase[i]) *
                             complexd{drv.c_x[i], -drv.c_y[i]};
      plus[i] << 1.0 / std::sqrt(2.0), upper / std::sqrt(2.0);
    }
    Eigen::VectorXcd branch = Eigen::VectorXcd::Zero(ws.mode_dim);
    for (int s = 0; s < 4; ++s) {
      const complexd w =
          std::conj(plus[0][(s >> 1) & 1]) * std::conj(plus[1][s & 1]);
      for (int k = 0; k < ws.mode_dim; ++k)
        branch[k] += w * psi[s * ws.mode_dim + k];
    }
    const double norm2 = branch.squaredNorm();
    res.gamma_measured.assign(ws.n_modes, complexd{});
    if (norm2 > 1e-300) {
      for (int m = 0; m < ws.n_modes; ++m) {
        complexd acc{};
        for (int k = 0; k < ws.mode_dim; ++k) {
          const int nm = (k / ws.mode_stride[m]) % ws.cutoff;
          if (nm + 1 < ws.cutoff)
            acc += std::conj(branch[k]) * ws.sqrt_n[nm + 1] *
                   branch[k + ws.mode_stride[m]];
        }
        res.gamma_measured[m] = acc / norm2;
      }
    }
  }
  return res;
}

inline SimResult evolve(const HilbertSpec& spec, const OracleDrive& drv,
                        double t_g, const StepControls& ctl = {}) {
  return evolve_from(spec, drv, t_g, std::vector<int>(spec.n_modes, 0), ctl);
}

/// Thermal-state Bell fidelity: geometric-distribution average over initial
/// Fock states, retaining at least `thermal_weight` of the population.
inline SimResult thermal_average(const HilbertSpec& spec,
                                 const OracleDrive& drv, double t_g,
                                 const StepControls& ctl = {}) {
  spec.validate();
  if (spec.nbar == 0.0) return evolve(spec, drv, t_g, ctl);

  const double p_ratio = spec.nbar / (1.0 + spec.nbar);
  const auto weight = [&](int n) {
    return std::pow(p_ratio, n) / (1.0 + spec.nbar);
  };
  // per-mode truncation n <= n_max with product weight >= target
  const double per_mode_target =
      std::pow(spec.thermal_weight, 1.0 / spec.n_modes);
  int n_max = 0;
  double cum = weight(0);
  while (cum < per_mode_target) {
    ++n_max;
    if (n_max > spec.fock_cutoff - 4) {
      std::ostringstream msg;
      msg << "thermal_average: reaching " << per_mode_target
          << " per-mode weight needs Fock levels above cutoff - 4";
      throw numerical_error(msg.str());
    }
    cum += weight(n_max);
  }

  std::vector<std::vector<int>> inits;
  std::vector<double> probs;
  std::vector<int> occ(spec.n_modes, 0);
  const int combos = static_cast<int>(std::pow(n_max + 1.0, spec.n_modes));
  for (int c = 0; c < combos; ++c) {
    int rem = c;
    double p = 1.0;
    for (int m = 0; m < spec.n_modes; ++m) {
      occ[m] = rem % (n_max + 1);
      rem /= (n_max + 1);
      p *= weight(occ[m]);
    }
    inits.push_back(occ);
    probs.push_back(p);
  }

  SimResult avg;
  double fid = 0.0, total_p = 0.0;
  for (std::size_t r = 0; r < inits.size(); ++r) {
    SimResult run = evolve_from(spec, drv, t_g, inits[r], ctl);
    fid += probs[r] * run.bell_fidelity;
    total_p += probs[r];
    avg.norm_drift = std::max(avg.norm_drift, run.norm_drift);
    avg.max_top_leak = std::max(avg.max_top_leak, run.max_top_leak);
    avg.steps += run.steps;
    if (r == 0) {
      avg.state = run.state;
      avg.gamma_measured = run.gamma_measured;
    }
  }
  avg.bell_fidelity = fid / total_p;
  avg.retained_weight = total_p;
  return avg;
}

/// OracleDrive matching a designed single-pulse gate.  For the first
/// micromotion sideband the laser Rabi frequency is the secular-equivalent
/// one scaled by 4/q; the sideband coupling then emerges dynamically from
/// the dressed mode functions.
inline OracleDrive oracle_drive_from_design(const CrystalModes& modes,
                                            const GateSolution& gate,
                                            int sideband_index = 0,
                                            double q = 0.0,
                                            double rf_freq = 0.0,
                                            double beta_tilde_index = 0.0) {
  OracleDrive drv;
  const int n = modes.n_ions;
  const double raw_rabi = sideband_index == 1
                              ? gate.rabi_scaled * 4.0 / q
                              : gate.rabi_scaled;
  DriveConfig d = make_drive(modes, raw_rabi, gate.detuning, 0,
                             beta_tilde_index, q, rf_freq);
  drv.rabi = d.rabi;
  drv.phase.assign(n, 0.0);
  drv.beta_tilde = d.beta_tilde;
  drv.q = q;
  drv.rf_freq = rf_freq;
  drv.lab_detuning =
      sideband_index == 1 ? rf_freq + gate.detuning : gate.detuning;
  drv.mode_freqs = modes.mode_freqs;
  drv.eta = modes.lamb_dicke;
  drv.mode_matrix = modes.mode_matrix;
  drv.c_y.assign(n, 1.0);
  drv.c_x.assign(n, 0.0);
  return drv;
}

}  // namespace iongate
