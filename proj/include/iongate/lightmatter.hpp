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

#include <cmath>
#include <sstream>
#include <vector>

#include "iongate/common.hpp"
#include "iongate/crystal.hpp"

namespace iongate {

// Bichromatic laser-ion interaction in the Lamb-Dicke, resolved-sideband
// regime.  Excess micromotion phase-modulates the beams (Bessel sideband
// comb); intrinsic micromotion dresses the spin-phonon coupling.  Both the
// secular (l*=0) and first-micromotion-sideband (l*=1) state-dependent
// force models are provided, with their residual carrier terms.

/// Bessel function J_l by power series; valid and accurate for |x| < 1,
/// which covers every modulation index in scope (|beta~| <= 1e-2).
inline double bessel_j(int l, double x) {
  if (l < 0) throw validation_error("bessel_j: order must be >= 0");
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= l; ++k) term *= half / k;
  double sum = term;
  const double h2 = -half * half;
  for (int k = 1; k < 40; ++k) {
    term *= h2 / (k * (k + l));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

/// Excess-micromotion modulation index beta~ = -k_L r_driv(0) q/2 (signed).
inline double beta_tilde(double k_l, double driv_amp_dc, double q) {
  return -k_l * driv_amp_dc * q / 2.0;
}

/// J_l(beta~), the weight of the l-th micromotion sideband.
inline double sideband_weight(double beta_tilde_index, int l) {
  if (std::abs(beta_tilde_index) >= 1.0)
    throw validation_error("sideband_weight: |beta~| must be < 1");
  return bessel_j(l, beta_tilde_index);
}

struct DriveConfig {
  Axis axis = Axis::z;
  std::vector<double> rabi;        // per ion, rad/s, Debye-Waller dressed
  std::vector<double> rabi_raw;    // per ion, rad/s, as applied by the laser
  double detuning = 0.0;           // delta (l*=0) or delta~ (l*=1), rad/s
  int sideband_index = 0;          // l* in {0, 1}
  double phase = 0.0;              // common laser phase phi, rad
  std::vector<double> beta_tilde;  // per ion
  double q = 0.0;                  // Mathieu q of the driven axis
  double rf_freq = 0.0;            // Omega_rf, rad/s
  double k_l = 0.0;                // laser wavevector, 1/m
};

/// Debye-Waller factor exp(-sum_m (M_im eta_m)^2 / 2) of ion i.
inline double debye_waller(const CrystalModes& modes, int ion) {
  double s = 0.0;
  for (int m = 0; m < modes.n_ions; ++m) {
    const double c = modes.mode_matrix(ion, m) * modes.lamb_dicke[m];
    s += c * c;
  }
  return std::exp(-0.5 * s);
}

/// Builds a DriveConfig with uniform raw Rabi frequency; the stored per-ion
/// Rabi frequencies carry the Debye-Waller renormalization.
inline DriveConfig make_drive(const CrystalModes& modes, double rabi_raw,
                              double detuning, int sideband_index,
                              double beta_tilde_index = 0.0, double q = 0.0,
                              double rf_freq = 0.0, double phase = 0.0) {
  if (sideband_index != 0 && sideband_index != 1)
    throw validation_error("sideband_index must be 0 or 1");
  DriveConfig d;
  d.axis = modes.axis;
  d.detuning = detuning;
  d.sideband_index = sideband_index;
  d.phase = phase;
  d.q = q;
  d.rf_freq = rf_freq;
  d.k_l = modes.k_l;
  d.rabi_raw.assign(modes.n_ions, rabi_raw);
  d.rabi.resize(modes.n_ions);
  d.beta_tilde.assign(modes.n_ions, std::abs(beta_tilde_index));
  for (int i = 0; i < modes.n_ions; ++i)
    d.rabi[i] = rabi_raw * debye_waller(modes, i);
  return d;
}

struct CarrierTerm {
  std::vector<double> amp;  // per ion, rad/s
  double freq = 0.0;        // rad/s
  char spin_axis = 'x';     // 'x' -> sigma~^x, 'y' -> sigma~^y
};

struct ForceModel {
  // F(i, m): dipole-force strength, rad/s per meter
  std::vector<std::vector<double>> strengths;
  // coupling(i, m) = F(i, m) x_m, rad/s
  std::vector<std::vector<double>> coupling;
  // s_i = c_y sigma~^y + c_x sigma~^x, per ion
  std::vector<double> c_y, c_x;
  double effective_detuning = 0.0;  // rad/s
  std::vector<CarrierTerm> carriers;
  int n_ions = 0, n_modes = 0;
  int sideband_index = 0;
  double q = 0.0, rf_freq = 0.0;
};

// Margin thresholds for the "<<" regime conditions: a ratio <= 0.1
// passes, <= 0.3 warns, above that the model is rejected.
inline constexpr double kMarginPass = 0.1;
inline constexpr double kMarginFail = 0.3;

struct RegimeReport {
  double resolved_micromotion_margin = 0.0;  // max|Omega| / Omega_rf
  double carrier_margin = 0.0;         // |Omega J0|/delta or |Omega|b~/delta~
  double compensation_margin = 0.0;    // beta~ / (q/4)
  double beta_bound_margin = 0.0;      // beta~ / (q omega / 4 Omega_rf)
  bool resolved_micromotion = false;
  bool carrier_ok = false;
  bool compensation_ok = false;
  bool beta_bound_ok = false;
};

inline RegimeReport regime_check(const DriveConfig& d,
                                 const CrystalModes& modes) {
  RegimeReport r;
  double max_rabi = 0.0, max_beta = 0.0;
  for (std::size_t i = 0; i < d.rabi.size(); ++i) {
    max_rabi = std::max(max_rabi, std::abs(d.rabi[i]));
    max_beta = std::max(max_beta, std::abs(d.beta_tilde[i]));
  }
  r.resolved_micromotion_margin =
      d.rf_freq > 0.0 ? max_rabi / d.rf_freq : 0.0;
  if (d.sideband_index == 0) {
    r.carrier_margin = max_rabi * bessel_j(0, max_beta) / d.detuning;
  } else {
    // two conditions; report the worse of |Omega|/Omega_rf and
    // |Omega| beta~ / delta~
    const double c1 = r.resolved_micromotion_margin;
    const double c2 = max_rabi * max_beta / d.detuning;
    r.carrier_margin = std::max(c1, c2);
  }
  r.compensation_margin = d.q > 0.0 ? max_beta / (0.25 * d.q) : 0.0;
  const double com_freq = modes.mode_freqs.empty() ? modes.trap_freq
                                                   : modes.mode_freqs[0];
  r.beta_bound_margin = (d.q > 0.0 && d.rf_freq > 0.0)
                            ? max_beta / (0.25 * d.q * com_freq / d.rf_freq)
                            : 0.0;
  r.resolved_micromotion = r.resolved_micromotion_margin <= kMarginPass;
  r.carrier_ok = r.carrier_margin <= kMarginPass;
  r.compensation_ok = r.compensation_margin <= kMarginPass;
  r.beta_bound_ok = r.beta_bound_margin <= kMarginPass;
  return r;
}

namespace detail {

inline ForceModel init_force_model(const DriveConfig& d,
                                   const CrystalModes& modes) {
  ForceModel f;
  f.n_ions = modes.n_ions;
  f.n_modes = modes.n_ions;
  f.sideband_index = d.sideband_index;
  f.q = d.q;
  f.rf_freq = d.rf_freq;
  f.effective_detuning = d.detuning;
  f.strengths.assign(f.n_ions, std::vector<double>(f.n_modes, 0.0));
  f.coupling.assign(f.n_ions, std::vector<double>(f.n_modes, 0.0));
  f.c_y.resize(f.n_ions);
  f.c_x.resize(f.n_ions);
  return f;
}

}  // namespace detail

/// Secular (l*=0) state-dependent dipole force:
///   F_im = Omega_i M_im k_L / (1 - q/2) sqrt(J0^2 + (q/4 J1)^2),
///   s_i  = (J0 sigma~^y + q/4 J1 sigma~^x) / sqrt(J0^2 + (q/4 J1)^2),
/// with the residual carrier Omega_i J0 sigma~^x cos(delta t).
inline ForceModel secular_force_model(const DriveConfig& d,
                                      const CrystalModes& modes) {
  if (d.sideband_index != 0)
    throw validation_error("secular_force_model requires sideband_index 0");
  const RegimeReport reg = regime_check(d, modes);
  if (reg.resolved_micromotion_margin > kMarginFail) {
    std::ostringstream msg;
    msg << "secular_force_model: micromotion sidebands unresolved, "
           "|Omega|/Omega_rf = "
        << reg.resolved_micromotion_margin;
    throw regime_error(msg.str(), reg.resolved_micromotion_margin);
  }
  ForceModel f = detail::init_force_model(d, modes);
  CarrierTerm carr;
  carr.freq = d.detuning;
  carr.spin_axis = 'x';
  carr.amp.resize(f.n_ions);
  for (int i = 0; i < f.n_ions; ++i) {
    const double j0 = bessel_j(0, d.beta_tilde[i]);
    const double j1q = 0.25 * d.q * bessel_j(1, d.beta_tilde[i]);
    const double norm = std::hypot(j0, j1q);
    const double dress = norm / (1.0 - 0.5 * d.q);
    for (int m = 0; m < f.n_modes; ++m) {
      f.strengths[i][m] = d.rabi[i] * modes.mode_matrix(i, m) * d.k_l * dress;
      f.coupling[i][m] = f.strengths[i][m] * modes.mode_width(m);
    }
    f.c_y[i] = j0 / norm;
    f.c_x[i] = j1q / norm;
    carr.amp[i] = d.rabi[i] * j0;
  }
  f.carriers.push_back(std::move(carr));
  return f;
}

/// First-micromotion-sideband (l*=1) force:
///   F~_im = Omega_i M_im k_L / (1 - q/2) sqrt(J1^2 + (q/4 J0)^2),
///   s~_i  = (-J1 sigma~^x + q/4 J0 sigma~^y) / sqrt(J1^2 + (q/4 J0)^2),
/// with carriers Omega_i J0 sigma~^x cos(Omega_rf t) and
/// -Omega_i J1 sigma~^y cos(delta~ t).
inline ForceModel micromotion_force_model(const DriveConfig& d,
                                          const CrystalModes& modes) {
  if (d.sideband_index != 1)
    throw validation_error(
        "micromotion_force_model requires sideband_index 1");
  if (d.q <= 0.0)
    throw validation_error(
        "micromotion_force_model needs q > 0 on the driven axis");
  const RegimeReport reg = regime_check(d, modes);
  if (reg.resolved_micromotion_margin > kMarginFail) {
    std::ostringstream msg;
    msg << "micromotion_force_model: |Omega|/Omega_rf = "
        << reg.resolved_micromotion_margin;
    throw regime_error(msg.str(), reg.resolved_micromotion_margin);
  }
  if (reg.compensation_margin >= 1.0) {
    std::ostringstream msg;
    msg << "micromotion_force_model: beta~ >= q/4 (ratio "
        << reg.compensation_margin
        << "); near-resonant carrier would not be suppressed";
    throw regime_error(msg.str(), reg.compensation_margin);
  }
  ForceModel f = detail::init_force_model(d, modes);
  CarrierTerm at_rf, at_det;
  at_rf.freq = d.rf_freq;
  at_rf.spin_axis = 'x';
  at_rf.amp.resize(f.n_ions);
  at_det.freq = d.detuning;
  at_det.spin_axis = 'y';
  at_det.amp.resize(f.n_ions);
  for (int i = 0; i < f.n_ions; ++i) {
    const double j0 = bessel_j(0, d.beta_tilde[i]);
    const double j1 = bessel_j(1, d.beta_tilde[i]);
    const double j0q = 0.25 * d.q * j0;
    const double norm = std::hypot(j1, j0q);
    const double dress = norm / (1.0 - 0.5 * d.q);
    for (int m = 0; m < f.n_modes; ++m) {
      f.strengths[i][m] = d.rabi[i] * modes.mode_matrix(i, m) * d.k_l * dress;
      f.coupling[i][m] = f.strengths[i][m] * modes.mode_width(m);
    }
    f.c_y[i] = j0q / norm;
    f.c_x[i] = -j1 / norm;
    at_rf.amp[i] = d.rabi[i] * j0;
    at_det.amp[i] = -d.rabi[i] * j1;
  }
  f.carriers.push_back(std::move(at_rf));
  f.carriers.push_back(std::move(at_det));
  return f;
}

inline ForceModel force_model(const DriveConfig& d, const CrystalModes& m) {
  return d.sideband_index == 0 ? secular_force_model(d, m)
                               : micromotion_force_model(d, m);
}

}  // namespace iongate
