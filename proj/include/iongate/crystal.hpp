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
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "iongate/common.hpp"
#include "iongate/constants.hpp"

namespace iongate {

enum class Axis { x, y, z };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    default: return "z";
  }
}

/// Characteristic length (Q~^2 / (M omega_z^2))^(1/3) of the axial chain.
inline double chain_length_scale(const IonSpecies& s, double omega_z) {
  return std::cbrt(coulomb_coupling(s) / (s.mass * omega_z * omega_z));
}

namespace detail {

// Force balance of the dimensionless chain: u_i - sum_{j != i}
// sgn(u_i - u_j) / (u_i - u_j)^2 = 0.
inline Eigen::VectorXd chain_residual(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd f = u;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = u[i] - u[j];
      f[i] -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
    }
  return f;
}

inline Eigen::MatrixXd chain_jacobian(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(u[i] - u[j]);
      const double c = 2.0 / (d * d * d);
      jac(i, i) += c;
      jac(i, j) -= c;
    }
  return jac;
}

}  // namespace detail

/// Equilibrium positions of a linear N-ion chain, sorted ascending and
/// symmetric about the trap center.  Newton iteration on the dimensionless
/// force balance, seeded by the uniform-spacing ansatz at the analytic N=2
/// spacing.
inline std::vector<double> equilibrium_positions(const IonSpecies& species,
                                                 double omega_z, int n_ions) {
  if (omega_z <= 0.0) throw validation_error("omega_z must be positive");
  if (n_ions < 1) throw validation_error("n_ions must be >= 1");
  const double scale = chain_length_scale(species, omega_z);
  if (n_ions == 1) return {0.0};

  const double z0_pair = std::cbrt(0.25);  // N=2 half-spacing, units of scale
  Eigen::VectorXd u(n_ions);
  for (int i = 0; i < n_ions; ++i)
    u[i] = (i - 0.5 * (n_ions - 1)) * 2.0 * z0_pair;

  double res = detail::chain_residual(u).norm();
  for (int iter = 0; iter < 100 && res > 1e-14; ++iter) {
    const Eigen::VectorXd step =
        detail::chain_jacobian(u).partialPivLu().solve(
            detail::chain_residual(u));
    double damping = 1.0;
    Eigen::VectorXd next = u - step;
    double next_res = detail::chain_residual(next).norm();
    while (next_res > res && damping > 1e-4) {
      damping *= 0.5;
      next = u - damping * step;
      next_res = detail::chain_residual(next).norm();
    }
    u = next;
    res = next_res;
  }
  if (res > 1e-12) {
    std::ostringstream msg;
    msg << "equilibrium_positions: Newton did not converge, residual " << res;
    throw numerical_error(msg.str());
  }

  std::vector<double> z(u.data(), u.data() + n_ions);
  std::sort(z.begin(), z.end());
  // symmetrize against roundoff so that z_i = -z_{N+1-i} exactly
  for (int i = 0; i < n_ions / 2; ++i) {
    const double half = 0.5 * (z[n_ions - 1 - i] - z[i]);
    z[i] = -half;
    z[n_ions - 1 - i] = half;
  }
  if (n_ions % 2 == 1) z[n_ions / 2] = 0.0;
  for (double& zi : z) zi *= scale;
  return z;
}

/// eta = k_L sqrt(hbar / (2 M omega)).
inline double lamb_dicke(const IonSpecies& species, double k_l,
                         double mode_freq) {
  if (mode_freq <= 0.0) throw validation_error("mode_freq must be positive");
  return k_l * std::sqrt(kHbar / (2.0 * species.mass * mode_freq));
}

struct CrystalModes {
  int n_ions = 0;
  Axis axis = Axis::z;
  double trap_freq = 0.0;            // bare secular frequency of this axis
  double k_l = 0.0;                  // laser wavevector used for eta, 1/m
  double mass = 0.0;                 // kg
  std::vector<double> eq_positions;  // m, ascending
  Eigen::MatrixXd mode_matrix;       // M(i, m), orthogonal; m=0 is CoM
  std::vector<double> mode_freqs;    // rad/s, branch order (m=0 is CoM)
  std::vector<double> lamb_dicke;    // per mode, 0 if k_l was not given

  /// Groundstate width x_m = sqrt(hbar / (2 M omega_m)) of mode m.
  double mode_width(int m) const {
    return std::sqrt(kHbar / (2.0 * mass * mode_freqs[m]));
  }
};

/// Transverse/axial normal modes of the linear chain.  Mode m=0 is the
/// center-of-mass mode (lowest axial frequency, highest transverse one);
/// eigenvector signs are fixed so the first ion's coefficient is positive.
inline CrystalModes normal_modes(const IonSpecies& species, double omega_axial,
                                 double omega_radial, Axis axis, int n_ions,
                                 double k_l = 0.0) {
  CrystalModes modes;
  modes.n_ions = n_ions;
  modes.axis = axis;
  modes.mass = species.mass;
  modes.k_l = k_l;
  modes.trap_freq = (axis == Axis::z) ? omega_axial : omega_radial;
  if (modes.trap_freq <= 0.0)
    throw validation_error("trap frequency must be positive");
  modes.eq_positions = equilibrium_positions(species, omega_axial, n_ions);

  // Coulomb coupling matrix in omega^2 units; axis factor +1 transverse,
  // -2 axial.
  const double axis_factor = (axis == Axis::z) ? -2.0 : 1.0;
  const double q2_over_m = coulomb_coupling(species) / species.mass;
  Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(n_ions, n_ions);
  for (int i = 0; i < n_ions; ++i)
    for (int j = 0; j < n_ions; ++j) {
      if (j == i) continue;
      const double d = std::abs(modes.eq_positions[i] - modes.eq_positions[j]);
      const double v = axis_factor * q2_over_m / (d * d * d);
      coupling(i, j) += v;
      coupling(i, i) -= v;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(coupling);
  const double w2 = modes.trap_freq * modes.trap_freq;

  std::vector<int> order(n_ions);
  std::iota(order.begin(), order.end(), 0);
  // branch convention: CoM (eigenvalue 0) first, then ascending axial /
  // descending transverse frequency
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return (axis == Axis::z) ? eig.eigenvalues()[a] < eig.eigenvalues()[b]
                             : eig.eigenvalues()[a] > eig.eigenvalues()[b];
  });

  modes.mode_matrix.resize(n_ions, n_ions);
  modes.mode_freqs.resize(n_ions);
  modes.lamb_dicke.assign(n_ions, 0.0);
  for (int m = 0; m < n_ions; ++m) {
    const double freq2 = w2 + eig.eigenvalues()[order[m]];
    if (freq2 <= 0.0) {
      std::ostringstream msg;
      msg << "normal_modes: mode " << m + 1 << " along " << axis_name(axis)
          << " has omega^2 <= 0; linear chain unstable at these frequencies";
      throw instability_error(msg.str());
    }
    modes.mode_freqs[m] = std::sqrt(freq2);
    Eigen::VectorXd v = eig.eigenvectors().col(order[m]);
    if (v[0] < 0.0) v = -v;
    modes.mode_matrix.col(m) = v;
    if (k_l > 0.0)
      modes.lamb_dicke[m] = iongate::lamb_dicke(species, k_l,
                                                modes.mode_freqs[m]);
  }
  return modes;
}

/// Wavevector that reproduces a reference Lamb-Dicke parameter at a
/// reference mode frequency.  Experiments usually quote eta rather than
/// the laser geometry, so this is the preferred configuration route.
inline double wavevector_from_eta(const IonSpecies& species, double eta_ref,
                                  double omega_ref) {
  return eta_ref / std::sqrt(kHbar / (2.0 * species.mass * omega_ref));
}

}  // namespace iongate
