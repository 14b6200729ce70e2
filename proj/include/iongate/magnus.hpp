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
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "iongate/common.hpp"
#include "iongate/crystal.hpp"
#include "iongate/lightmatter.hpp"

namespace iongate {

// Magnus-expansion gate engine.  The interaction-picture propagator of a
// state-dependent force factorizes exactly at second order into mode
// displacements gamma_{i,m}(t) and a spin-spin phase g12(t); a gate closes
// every constrained phase-space trajectory (gamma = 0) while accumulating
// g12 = -i pi/8 per ordered ion pair, which turns |dd> into a Bell state.

/// Relative detuning below which (1 - e^{i x})/x forms switch to their
/// analytic limit.
inline constexpr double kResonanceGuard = 1e-6;

/// Circle function C^tau_omega = (1 - e^{i omega tau}) / omega, with the
/// limit -i tau as omega -> 0.
inline complexd circle_function(double omega, double tau) {
  if (std::abs(omega * tau) < kResonanceGuard)
    return complexd{0.0, -tau} * (1.0 + kImag * (0.5 * omega * tau));
  return (1.0 - std::exp(kImag * omega * tau)) / omega;
}

/// State-dependent displacement of one ion-mode pair under a single CW
/// pulse, rotating-wave form:
///   gamma(t) = (f x / 2) (1 - e^{i (delta - omega) t}) / (delta - omega).
inline complexd gamma_single_pulse(double coupling, double mode_freq,
                                   double delta, double t) {
  const double du = delta - mode_freq;
  if (std::abs(du) < kResonanceGuard * mode_freq)
    return -kImag * coupling * t / 2.0;
  return 0.5 * coupling * (1.0 - std::exp(kImag * du * t)) / du;
}

inline complexd gamma_single_pulse(const ForceModel& force,
                                   const CrystalModes& modes, int ion,
                                   int mode, double t) {
  return gamma_single_pulse(force.coupling[ion][mode],
                            modes.mode_freqs[mode],
                            force.effective_detuning, t);
}

/// Phonon-mediated spin-spin phase accumulated by ions 1 and 2 under a CW
/// pulse.  Slow part of the ordered double integral, summed over modes:
///   g12(t) = i sum_m (f1 f2 x^2 / 4) sum_{k = w+d, w-d} (t/k - sin(k t)/k^2)
/// At loop-closing times this reduces to -i J12 t / 2; near t = 0 it
/// vanishes cubically.  Fast terms oscillating at 2 delta are dropped, as
/// in the displacement formula.
inline complexd g12_single_pulse(const ForceModel& force,
                                 const CrystalModes& modes, double t) {
  if (force.n_ions < 2)
    throw validation_error("g12_single_pulse needs two ions");
  const double delta = force.effective_detuning;
  const auto kterm = [&](double k) {
    if (std::abs(k * t) < kResonanceGuard) return k * t * t * t / 6.0;
    return t / k - std::sin(k * t) / (k * k);
  };
  double acc = 0.0;
  for (int m = 0; m < force.n_modes; ++m) {
    const double w = modes.mode_freqs[m];
    const double p = force.coupling[0][m] * force.coupling[1][m];
    acc += 0.25 * p * (kterm(w + delta) + kterm(w - delta));
  }
  return kImag * acc;
}

/// Spin-spin coupling strength J12 = sum_m f1 f2 x^2 w / (d^2 - w^2).
inline double j_coupling(const ForceModel& force, const CrystalModes& modes,
                         double delta) {
  if (force.n_ions < 2) throw validation_error("j_coupling needs two ions");
  double j = 0.0;
  for (int m = 0; m < force.n_modes; ++m) {
    const double w = modes.mode_freqs[m];
    if (std::abs(delta - w) < kResonanceGuard * w)
      throw numerical_error("j_coupling: drive resonant with a normal mode");
    j += force.coupling[0][m] * force.coupling[1][m] * w /
         (delta * delta - w * w);
  }
  return j;
}

struct Pulse {
  double t_start = 0.0;       // s
  double width = 0.0;         // s
  std::vector<double> rabi;   // raw per-ion Rabi frequency, rad/s (signed)
};

struct PulseSequence {
  std::vector<Pulse> pulses;
  double detuning = 0.0;    // rad/s
  double total_time = 0.0;  // s

  void validate() const {
    double prev_end = 0.0;
    for (std::size_t n = 0; n < pulses.size(); ++n) {
      if (pulses[n].width <= 0.0)
        throw validation_error("pulse widths must be positive");
      if (pulses[n].t_start < prev_end - 1e-15 * total_time)
        throw validation_error("pulses must be ordered and non-overlapping");
      prev_end = pulses[n].t_start + pulses[n].width;
    }
    if (prev_end > total_time * (1.0 + 1e-12))
      throw validation_error("pulses extend past total_time");
  }

  double mean_square_rabi() const {
    double s = 0.0;
    std::size_t cnt = 0;
    for (const auto& p : pulses)
      for (double r : p.rabi) {
        s += r * r;
        ++cnt;
      }
    return cnt ? s / static_cast<double>(cnt) : 0.0;
  }
};

inline PulseSequence equidistant_sequence(int n_pulses, double total_time,
                                          double detuning, int n_ions) {
  if (n_pulses < 1) throw validation_error("need at least one pulse");
  PulseSequence seq;
  seq.detuning = detuning;
  seq.total_time = total_time;
  const double tau = total_time / n_pulses;
  for (int n = 0; n < n_pulses; ++n)
    seq.pulses.push_back({n * tau, tau, std::vector<double>(n_ions, 0.0)});
  return seq;
}

namespace detail {

/// z_{m,n} = C^tau_{d-w} e^{i(d-w)t_n} + C^tau_{-d-w} e^{-i(d+w)t_n};
/// the full per-window displacement is gamma^n = (f x / 2) z.
inline complexd window_z(double mode_freq, double delta, double t0,
                         double tau) {
  const double u = delta - mode_freq;
  const double v = delta + mode_freq;
  return circle_function(u, tau) * std::exp(kImag * u * t0) +
         circle_function(-v, tau) * std::exp(-kImag * v * t0);
}

inline complexd exp_integral(double k, double t0, double tau) {
  // int_{t0}^{t0+tau} e^{i k t} dt
  if (std::abs(k * tau) < 1e-12) return complexd{tau, 0.0};
  return (std::exp(kImag * k * (t0 + tau)) - std::exp(kImag * k * t0)) /
         (kImag * k);
}

/// Same-window ordered double integral
///   E = int dt1 cos(d t1) e^{i w t1} int_{t0}^{t1} dt2 cos(d t2) e^{-i w t2}
/// as a sum of circle-function pieces; Im(E) is the window's own
/// contribution to the spin-spin phase.
inline complexd window_e(double mode_freq, double delta, double t0,
                         double tau) {
  const double u = delta - mode_freq;
  const double v = delta + mode_freq;
  const complexd i2d = exp_integral(2.0 * delta, t0, tau);
  const complexd iv = exp_integral(v, t0, tau);
  const complexd imu = exp_integral(-u, t0, tau);
  complexd first;
  if (std::abs(u) * tau < 1e-7) {
    // resonant branch: (1/(i u)) B1 -> T1 - t0 I(2d) + tau^2/2 with
    // T1 = int t e^{i 2 d t} dt
    const double k = 2.0 * delta;
    const auto prim = [&](double t) {
      return std::exp(kImag * k * t) * (t / (kImag * k) + 1.0 / (k * k));
    };
    const complexd t1 = prim(t0 + tau) - prim(t0);
    first = t1 - t0 * i2d + complexd{0.5 * tau * tau, 0.0};
  } else {
    const complexd e_iut0 = std::exp(kImag * u * t0);
    const complexd b1 = i2d - e_iut0 * iv + complexd{tau, 0.0} - e_iut0 * imu;
    first = b1 / (kImag * u);
  }
  const complexd e_mivt0 = std::exp(-kImag * v * t0);
  const complexd b2 = complexd{tau, 0.0} - e_mivt0 * iv +
                      exp_integral(-2.0 * delta, t0, tau) - e_mivt0 * imu;
  return 0.25 * (first - b2 / (kImag * v));
}

}  // namespace detail

struct MultipulseResult {
  // gamma(i, m) at total_time; exact, counter-rotating terms included
  std::vector<std::vector<complexd>> gamma;
  complexd g12;  // per ordered pair (1,2); -i pi/8 is maximally entangling
};

/// Exact second-order Magnus coefficients of a square-pulse train.  The
/// couplings argument holds f_{i,m} x_m per pulse (rad/s), signed.
inline MultipulseResult multipulse_coefficients(
    const std::vector<std::vector<std::vector<double>>>& couplings,
    const PulseSequence& seq, const CrystalModes& modes) {
  seq.validate();
  const int np = static_cast<int>(seq.pulses.size());
  if (static_cast<int>(couplings.size()) != np)
    throw validation_error("one coupling block per pulse required");
  const int n_ions = modes.n_ions;
  const int n_modes = modes.n_ions;
  const double delta = seq.detuning;

  MultipulseResult out;
  out.gamma.assign(n_ions, std::vector<complexd>(n_modes, complexd{}));
  // per-window displacement increments gamma^n_{i,m}
  std::vector<std::vector<std::vector<complexd>>> inc(
      np, std::vector<std::vector<complexd>>(
              n_ions, std::vector<complexd>(n_modes)));
  for (int n = 0; n < np; ++n) {
    const double t0 = seq.pulses[n].t_start;
    const double tau = seq.pulses[n].width;
    for (int m = 0; m < n_modes; ++m) {
      const complexd z = detail::window_z(modes.mode_freqs[m], delta, t0, tau);
      for (int i = 0; i < n_ions; ++i) {
        inc[n][i][m] = 0.5 * couplings[n][i][m] * z;
        out.gamma[i][m] += inc[n][i][m];
      }
    }
  }

  if (n_ions >= 2) {
    double acc = 0.0;  // Im(g12)
    for (int n = 0; n < np; ++n) {
      const double t0 = seq.pulses[n].t_start;
      const double tau = seq.pulses[n].width;
      for (int m = 0; m < n_modes; ++m) {
        acc += couplings[n][0][m] * couplings[n][1][m] *
               detail::window_e(modes.mode_freqs[m], delta, t0, tau).imag();
        for (int k = 0; k < n; ++k)
          acc += 0.5 * (std::conj(inc[n][0][m]) * inc[k][1][m] +
                        std::conj(inc[n][1][m]) * inc[k][0][m])
                           .imag();
      }
    }
    out.g12 = kImag * acc;
  }
  return out;
}

/// Per-pulse coupling blocks f_{i,m} x_m for a train of uniform-illumination
/// pulses described by raw Rabi frequencies.
inline std::vector<std::vector<std::vector<double>>> train_couplings(
    const PulseSequence& seq, const CrystalModes& modes, double q = 0.0,
    double beta_tilde_index = 0.0, double rf_freq = 0.0) {
  std::vector<std::vector<std::vector<double>>> coup;
  coup.reserve(seq.pulses.size());
  // per-unit-Rabi force, scaled below by the signed pulse amplitudes
  const DriveConfig d = make_drive(modes, 1.0, seq.detuning, 0,
                                   beta_tilde_index, q, rf_freq);
  const ForceModel f = secular_force_model(d, modes);
  for (const auto& p : seq.pulses) {
    std::vector<std::vector<double>> block(
        modes.n_ions, std::vector<double>(modes.n_ions, 0.0));
    for (int i = 0; i < modes.n_ions; ++i)
      for (int m = 0; m < modes.n_ions; ++m)
        block[i][m] = f.coupling[i][m] * p.rabi[i];
    coup.push_back(std::move(block));
  }
  return coup;
}

struct GateSolution {
  std::vector<std::vector<complexd>> gamma;  // gamma(i, m) at gate time
  complexd g12;                              // -i pi/8 for accepted designs
  double j12 = 0.0;                          // rad/s
  double gate_time = 0.0;                    // s
  double detuning = 0.0;                     // rad/s
  double rabi = 0.0;              // closed-form raw Rabi frequency, rad/s
  double rabi_scaled = 0.0;       // raw Rabi fine-tuned so g12 = -i pi/8
  int r1 = 0, r2 = 0;
  double closure_residual = 0.0;  // max |gamma| over constrained modes,
                                  // relative to the peak excursion
  double spectator_residual = 0.0;  // same measure, unconstrained modes
  std::optional<PulseSequence> pulses;
  double mean_square_rabi = 0.0;  // rad^2/s^2, raw
  double nullspace_residual = 0.0;
};

inline constexpr double kClosureTolerance = 1e-8;

namespace detail {

inline double peak_excursion(double coupling, double mode_freq,
                             double delta) {
  return std::abs(coupling) / std::max(std::abs(delta - mode_freq),
                                       kResonanceGuard * mode_freq);
}

// Fills gamma, closure and g12 fields from the RWA single-pulse formulas at
// the scaled Rabi frequency.
inline void finish_single_pulse_solution(GateSolution& sol,
                                         const CrystalModes& modes,
                                         const DriveConfig& drive,
                                         const std::vector<int>& constrained) {
  DriveConfig d = drive;
  for (auto& r : d.rabi) r *= sol.rabi_scaled / sol.rabi;
  for (auto& r : d.rabi_raw) r *= sol.rabi_scaled / sol.rabi;
  d.detuning = sol.detuning;
  const ForceModel f = secular_force_model(d, modes);
  sol.gamma.assign(f.n_ions, std::vector<complexd>(f.n_modes));
  sol.closure_residual = 0.0;
  sol.spectator_residual = 0.0;
  for (int i = 0; i < f.n_ions; ++i)
    for (int m = 0; m < f.n_modes; ++m) {
      sol.gamma[i][m] = gamma_single_pulse(f, modes, i, m, sol.gate_time);
      const double rel =
          std::abs(sol.gamma[i][m]) /
          peak_excursion(f.coupling[i][m], modes.mode_freqs[m], sol.detuning);
      const bool is_constrained =
          std::find(constrained.begin(), constrained.end(), m) !=
          constrained.end();
      (is_constrained ? sol.closure_residual : sol.spectator_residual) =
          std::max(is_constrained ? sol.closure_residual
                                  : sol.spectator_residual,
                   rel);
    }
  sol.g12 = g12_single_pulse(f, modes, sol.gate_time);
  sol.j12 = j_coupling(f, modes, sol.detuning);
  sol.mean_square_rabi = sol.rabi_scaled * sol.rabi_scaled;
}

}  // namespace detail

/// Single-pulse MS gate on the CoM bus mode: detuning
/// delta = w_1 + sqrt(2 r1) Omega eta_1 and gate time
/// t_g = 2 pi r1 / (delta - w_1) close the bus trajectory while
/// J12 t_g = pi/4.  The spectator modes are reported, not constrained.
inline GateSolution design_single_mode_gate(const CrystalModes& modes,
                                            const DriveConfig& drive,
                                            int r1) {
  if (r1 < 1) throw validation_error("r1 must be >= 1");
  if (drive.rabi.empty() || drive.rabi[0] <= 0.0)
    throw validation_error("single-mode design needs a positive Rabi "
                           "frequency");
  if (drive.sideband_index != 0)
    throw validation_error(
        "gate design operates on secular inputs; use micromotion_transform "
        "for l*=1 gates");
  GateSolution sol;
  sol.r1 = r1;
  const double eta1 = modes.lamb_dicke[0];
  const double kappa = drive.rabi[0] * eta1;  // dressed coupling
  const double gap = std::sqrt(2.0 * r1) * kappa;
  sol.detuning = modes.mode_freqs[0] + gap;
  sol.gate_time = kTwoPi * r1 / gap;
  sol.rabi = drive.rabi_raw[0];

  // fine-tune the overall Rabi scale so the full two-mode g12 lands exactly
  // on -i pi/8
  DriveConfig d = drive;
  d.detuning = sol.detuning;
  const ForceModel f = secular_force_model(d, modes);
  const complexd g = g12_single_pulse(f, modes, sol.gate_time);
  sol.rabi_scaled = sol.rabi * std::sqrt(kPi / 8.0 / std::abs(g.imag()));
  detail::finish_single_pulse_solution(sol, modes, d, {0});
  return sol;
}

/// Two-mode MS gate on both transverse modes: commensurate loops
/// delta - w_2 = r2 (delta - w_1) fix the detuning and the gate time,
/// and the closed form
///   Omega eta_1 = (w_1 - w_2)/|r2 - 1| sqrt(|r2| / (2 r1 |r2 - 1|))
/// gives the required Rabi frequency.
inline GateSolution design_two_mode_gate(const CrystalModes& modes,
                                         const DriveConfig& drive_template,
                                         int r1, int r2) {
  if (modes.axis == Axis::z)
    throw validation_error(
        "two-mode commensurate gates need transverse modes; the axial "
        "splitting (sqrt(3)-1) w_z is irrational");
  if (r1 < 1) throw validation_error("r1 must be >= 1");
  if (r2 > -1 && r2 < 2)
    throw validation_error("r2 must be >= 2 or <= -1");
  if (modes.n_ions != 2)
    throw validation_error("two-mode design implemented for N = 2");

  GateSolution sol;
  sol.r1 = r1;
  sol.r2 = r2;
  const double w1 = modes.mode_freqs[0];
  const double w2 = modes.mode_freqs[1];
  const double split = w1 - w2;
  const double ar2m1 = std::abs(r2 - 1.0);
  sol.detuning = (r2 * w1 - w2) / (r2 - 1.0);
  sol.gate_time = kTwoPi * r1 * ar2m1 / split;
  const double kappa =
      split / ar2m1 * std::sqrt(std::abs(r2) / (2.0 * r1 * ar2m1));
  const double eta1 = modes.lamb_dicke[0];
  DriveConfig d = drive_template;
  const double dw = debye_waller(modes, 0);
  sol.rabi = kappa / eta1 / dw;
  d.rabi_raw.assign(modes.n_ions, sol.rabi);
  d.rabi.assign(modes.n_ions, sol.rabi * dw);
  d.detuning = sol.detuning;
  const ForceModel f = secular_force_model(d, modes);
  const complexd g = g12_single_pulse(f, modes, sol.gate_time);
  sol.rabi_scaled = sol.rabi * std::sqrt(kPi / 8.0 / std::abs(g.imag()));
  detail::finish_single_pulse_solution(sol, modes, d, {0, 1});
  return sol;
}

/// Equidistant pulse train closing the constrained-mode trajectories at an
/// off-grid gate time.  The closure conditions form a homogeneous linear
/// system in the pulse Rabi frequencies; its SVD nullspace supplies the
/// pulse pattern, and a global amplitude rescale pins g12 to -i pi/8.
inline GateSolution solve_pulse_train(const CrystalModes& modes,
                                      double detuning, double t_g,
                                      int n_pulses,
                                      const std::vector<int>& constrained,
                                      double q = 0.0,
                                      double beta_tilde_index = 0.0,
                                      double rf_freq = 0.0) {
  const int k = static_cast<int>(constrained.size());
  if (k < 1) throw validation_error("need at least one constrained mode");
  if (n_pulses < 2 * k + 1)
    throw validation_error("need n_pulses >= 2 * n_constrained + 1");
  if (modes.n_ions != 2)
    throw validation_error("pulse-train design implemented for N = 2");

  PulseSequence seq =
      equidistant_sequence(n_pulses, t_g, detuning, modes.n_ions);
  const double tau = t_g / n_pulses;

  Eigen::MatrixXd sys(2 * k, n_pulses);
  for (int c = 0; c < k; ++c) {
    const double w = modes.mode_freqs[constrained[c]];
    for (int n = 0; n < n_pulses; ++n) {
      const complexd z = detail::window_z(w, detuning, n * tau, tau);
      sys(2 * c, n) = z.real();
      sys(2 * c + 1, n) = z.imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      sys, Eigen::ComputeFullV | Eigen::ComputeThinU);
  const double sv_max = svd.singularValues()[0];
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * sv_max) ++rank;
  const int nullity = n_pulses - rank;
  if (nullity < 1)
    throw numerical_error(
        "solve_pulse_train: closure system has an empty nullspace at "
        "numerical rank tolerance");

  // quadratic form of Im(g12) in the pulse amplitudes, for scaling and for
  // the minimum-mean-square-Rabi tie-break
  const auto g12_form = [&](const Eigen::VectorXd& v) {
    PulseSequence s = seq;
    for (int n = 0; n < n_pulses; ++n)
      s.pulses[n].rabi.assign(modes.n_ions, v[n]);
    const auto coup = train_couplings(s, modes, q, beta_tilde_index, rf_freq);
    return multipulse_coefficients(coup, s, modes).g12.imag();
  };

  Eigen::VectorXd pulse_vec;
  if (nullity == 1) {
    pulse_vec = svd.matrixV().col(n_pulses - 1);
  } else {
    // project the quadratic form onto the nullspace basis and take the
    // eigenvector of largest |eigenvalue|: it maximizes |g12| per unit
    // mean-square Rabi
    Eigen::MatrixXd basis = svd.matrixV().rightCols(nullity);
    Eigen::MatrixXd form(nullity, nullity);
    std::vector<double> diag(nullity);
    for (int a = 0; a < nullity; ++a) diag[a] = g12_form(basis.col(a));
    for (int a = 0; a < nullity; ++a) {
      form(a, a) = diag[a];
      for (int b = a + 1; b < nullity; ++b) {
        const double cross =
            g12_form(basis.col(a) + basis.col(b)) - diag[a] - diag[b];
        form(a, b) = form(b, a) = 0.5 * cross;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(form);
    int best = 0;
    for (int a = 1; a < nullity; ++a) {
      const double mag = std::abs(eig.eigenvalues()[a]);
      const double best_mag = std::abs(eig.eigenvalues()[best]);
      if (mag > best_mag * (1.0 + 1e-12) ||
          (mag > best_mag * (1.0 - 1e-12) &&
           eig.eigenvalues()[a] < eig.eigenvalues()[best]))
        best = a;
    }
    pulse_vec = basis * eig.eigenvectors().col(best);
    pulse_vec.normalize();
  }
  if (pulse_vec[0] < 0.0) pulse_vec = -pulse_vec;

  const double g_unit = g12_form(pulse_vec);
  if (std::abs(g_unit) < 1e-300)
    throw numerical_error("solve_pulse_train: degenerate g12 form");
  const double scale = std::sqrt(kPi / 8.0 / std::abs(g_unit));
  for (int n = 0; n < n_pulses; ++n)
    seq.pulses[n].rabi.assign(modes.n_ions, scale * pulse_vec[n]);

  GateSolution sol;
  sol.detuning = detuning;
  sol.gate_time = t_g;
  sol.pulses = seq;
  sol.mean_square_rabi = seq.mean_square_rabi();
  sol.rabi = sol.rabi_scaled = scale * pulse_vec.cwiseAbs().maxCoeff();
  sol.nullspace_residual = (sys * (scale * pulse_vec)).norm();

  const auto coup = train_couplings(seq, modes, q, beta_tilde_index, rf_freq);
  const MultipulseResult mp = multipulse_coefficients(coup, seq, modes);
  sol.gamma = mp.gamma;
  sol.g12 = mp.g12;
  double peak = 0.0;
  for (int n = 0; n < n_pulses; ++n)
    for (int m = 0; m < modes.n_ions; ++m)
      peak = std::max(peak, 0.5 * std::abs(coup[n][0][m]) *
                                std::abs(detail::window_z(
                                    modes.mode_freqs[m], detuning,
                                    seq.pulses[n].t_start, tau)));
  sol.closure_residual = 0.0;
  sol.spectator_residual = 0.0;
  for (int i = 0; i < modes.n_ions; ++i)
    for (int m = 0; m < modes.n_ions; ++m) {
      const bool is_constrained =
          std::find(constrained.begin(), constrained.end(), m) !=
          constrained.end();
      double& slot =
          is_constrained ? sol.closure_residual : sol.spectator_residual;
      slot = std::max(slot, std::abs(mp.gamma[i][m]) / peak);
    }
  return sol;
}

/// Substitution rules mapping a secular MS design onto the first
/// micromotion sideband: delta -> delta~, Omega -> Omega q/4, and the
/// carrier error ratio (4 delta / q Omega_rf)^2.
struct MicromotionTransform {
  double raw_rabi_factor = 0.0;     // 4/q: laser Rabi per unit secular Rabi
  double carrier_error_ratio = 0.0;  // eps~_carr / eps_carr at equal force
  double gate_time_ratio = 0.0;      // t~_g / t_g at equal carrier error
};

inline MicromotionTransform micromotion_transform(double detuning, double q,
                                                  double rf_freq,
                                                  double com_freq,
                                                  double beta_tilde_index) {
  if (q <= 0.0 || rf_freq <= 0.0)
    throw validation_error("micromotion_transform needs q > 0, rf_freq > 0");
  const double bound = 0.25 * q * com_freq / rf_freq;
  if (std::abs(beta_tilde_index) > kMarginFail * bound) {
    std::ostringstream msg;
    msg << "micromotion_transform: compensation bound violated, beta~ = "
        << beta_tilde_index << " vs q omega / (4 Omega_rf) = " << bound;
    throw regime_error(msg.str(), std::abs(beta_tilde_index) / bound);
  }
  MicromotionTransform t;
  t.raw_rabi_factor = 4.0 / q;
  const double r = 4.0 * detuning / (q * rf_freq);
  t.carrier_error_ratio = r * r;
  t.gate_time_ratio = r;
  return t;
}

/// (|dd> + i e^{i(phi1 + phi2)} |uu>) / sqrt(2), the state an ideal MS gate
/// prepares from |dd>; basis order (dd, du, ud, uu).
inline Eigen::Vector4cd ideal_bell_state(double phi1, double phi2) {
  Eigen::Vector4cd b = Eigen::Vector4cd::Zero();
  b[0] = 1.0 / std::sqrt(2.0);
  b[3] = kImag * std::exp(kImag * (phi1 + phi2)) / std::sqrt(2.0);
  return b;
}

}  // namespace iongate
