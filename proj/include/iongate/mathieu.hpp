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
#include <vector>

#include "iongate/common.hpp"

namespace iongate {

// Floquet analysis of the Mathieu equation
//   d^2 r / d tau^2 + (a - 2 q cos 2 tau) r = 0,   tau = (Omega_rf/2) t,
// in the leading-order regime |a|, q^2 << 1.  Characteristic exponents,
// Floquet coefficients and mode functions are the closed-form leading-order
// expressions; they are the building blocks for the micromotion dressing of
// every normal mode.

struct MathieuParams {
  double a = 0.0;        // d.c. confinement parameter
  double q = 0.0;        // a.c. confinement parameter
  double rf_freq = 0.0;  // Omega_rf, rad/s
  int l_max = 3;         // series truncation order

  void validate() const {
    if (std::abs(a) >= 1.0 || q * q >= 1.0)
      throw validation_error(
          "MathieuParams outside validity regime |a| < 1, q^2 < 1");
    if (rf_freq <= 0.0) throw validation_error("rf_freq must be positive");
    if (l_max < 1) throw validation_error("l_max must be >= 1");
  }
};

struct FloquetSolution {
  double beta = 0.0;          // characteristic exponent
  double secular_freq = 0.0;  // omega = (Omega_rf/2) beta, rad/s
  double rf_freq = 0.0;
  std::vector<double> coeffs;  // coeffs[l-1] = C_{+-2l}/C_0, l = 1..l_max
  double xi = 1.0;             // 1 + sum_l 2 coeffs[l]
};

/// beta = sqrt(a + q^2/2), the lowest-order characteristic exponent.
inline double characteristic_exponent(const MathieuParams& p) {
  p.validate();
  const double b2 = p.a + 0.5 * p.q * p.q;
  if (b2 <= 0.0)
    throw validation_error(
        "a + q^2/2 <= 0: confinement unstable or degenerate along this axis");
  return std::sqrt(b2);
}

/// C_{+-2l}/C_0 = (-1)^l q^l / (4^l ((l-1)!)^2).
inline double floquet_coefficient(double q, int l) {
  double c = 1.0;
  for (int k = 1; k <= l; ++k) c *= -q / 4.0;
  double fact = 1.0;
  for (int k = 2; k < l; ++k) fact *= static_cast<double>(k);
  return c / (fact * fact);
}

inline FloquetSolution floquet_solution(const MathieuParams& p) {
  FloquetSolution s;
  s.beta = characteristic_exponent(p);
  s.rf_freq = p.rf_freq;
  s.secular_freq = 0.5 * p.rf_freq * s.beta;
  s.coeffs.resize(p.l_max);
  s.xi = 1.0;
  for (int l = 1; l <= p.l_max; ++l) {
    s.coeffs[l - 1] = floquet_coefficient(p.q, l);
    s.xi += 2.0 * s.coeffs[l - 1];
  }
  return s;
}

/// Periodic envelope 1 + sum_l 2 C_l cos(l Omega_rf t), before the 1/xi
/// normalization.
inline double micromotion_envelope(const FloquetSolution& s, double t) {
  double env = 1.0;
  for (std::size_t l = 0; l < s.coeffs.size(); ++l)
    env += 2.0 * s.coeffs[l] *
           std::cos(static_cast<double>(l + 1) * s.rf_freq * t);
  return env;
}

/// Mode function u(t) = e^{i omega t} / xi * (1 + sum_l 2 C_l cos(l Omega t)),
/// normalized so that u(0) = 1 and du/dt(0) = i omega + O(q^{l_max+1}).
inline complexd mode_function(const FloquetSolution& s, double t) {
  return std::exp(kImag * s.secular_freq * t) * micromotion_envelope(s, t) /
         s.xi;
}

// Excess micromotion drive of one ion along one axis.  The d.c. part comes
// from uncompensated stray fields, the a.c. part from phase asymmetries of
// the r.f. electrodes.
struct ExcessDrive {
  double e_dc = 0.0;         // stray d.c. field, V/m
  double phi_ac = 0.0;       // a.c. phase asymmetry, rad
  double r0 = 0.0;           // electrode distance, m
  double alpha_tilde = 0.0;  // geometric factor
  double driv_amp_dc = 0.0;  // Q E_dc / (M omega^2), m
  double driv_amp_ac = 0.0;  // q r0 phi_ac alpha~ / 4, m
};

inline ExcessDrive make_excess_drive(double charge, double mass,
                                     double secular_freq, double q,
                                     double e_dc, double phi_ac, double r0,
                                     double alpha_tilde) {
  ExcessDrive x;
  x.e_dc = e_dc;
  x.phi_ac = phi_ac;
  x.r0 = r0;
  x.alpha_tilde = alpha_tilde;
  x.driv_amp_dc = charge * e_dc / (mass * secular_freq * secular_freq);
  x.driv_amp_ac = q * r0 * phi_ac * alpha_tilde / 4.0;
  return x;
}

/// Driven amplitude r_driv(t) = dc + ac sin(Omega_rf t).
inline double driven_amplitude(const ExcessDrive& x, double rf_freq,
                               double t) {
  return x.driv_amp_dc + x.driv_amp_ac * std::sin(rf_freq * t);
}

struct TrajectorySample {
  double secular = 0.0;    // m
  double intrinsic = 0.0;  // m
  double excess = 0.0;     // m
  double total() const { return secular + intrinsic + excess; }
};

/// Classical single-ion trajectory split into secular motion, intrinsic
/// micromotion and excess micromotion.  Initial conditions r(0) = r0_init,
/// dr/dt(0) = 0 for the homogeneous part.
inline TrajectorySample classical_trajectory(const FloquetSolution& s,
                                             const ExcessDrive& x,
                                             double r0_init, double t) {
  TrajectorySample out;
  const double env = micromotion_envelope(s, t);
  out.secular = r0_init / s.xi * std::cos(s.secular_freq * t);
  out.intrinsic = out.secular * (env - 1.0);
  out.excess = driven_amplitude(x, s.rf_freq, t) * env;
  return out;
}

}  // namespace iongate
