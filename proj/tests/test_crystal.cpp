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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "iongate/crystal.hpp"
#include "support/test_oracles.hpp"

using namespace iongate;

namespace {
const double kOmegaZ = kTwoPi * 0.975e6;
const double kOmegaX = kTwoPi * 9.75e6;
const double kLaser729 = kTwoPi / 729e-9;
}  // namespace

TEST_CASE("equilibrium positions") {
  const IonSpecies ion = ca40();
  SECTION("single ion sits at the trap center") {
    const auto z = equilibrium_positions(ion, kOmegaZ, 1);
    REQUIRE(z.size() == 1);
    CHECK(z[0] == 0.0);
  }
  SECTION("two ions at the analytic half-spacing") {
    const auto z = equilibrium_positions(ion, kOmegaZ, 2);
    const double z0 = std::cbrt(coulomb_coupling(ion) /
                                (4.0 * ion.mass * kOmegaZ * kOmegaZ));
    CHECK(z[0] == Catch::Approx(-z0).epsilon(1e-12));
    CHECK(z[1] == Catch::Approx(z0).epsilon(1e-12));
  }
  SECTION("three ions match the brute-force minimizer") {
    const auto z = equilibrium_positions(ion, kOmegaZ, 3);
    const double scale = chain_length_scale(ion, kOmegaZ);
    const auto u = testing::gradient_descent_equilibrium(3);
    CHECK(z[1] == 0.0);
    CHECK(z[0] / scale == Catch::Approx(u[0]).epsilon(1e-6));
    CHECK(z[2] / scale == Catch::Approx(u[2]).epsilon(1e-6));
    CHECK(z[2] / scale ==
          Catch::Approx(std::cbrt(5.0 / 4.0)).epsilon(1e-10));
  }
  SECTION("force-balance residual and ordering for larger chains") {
    for (int n : {4, 5, 7}) {
      const auto z = equilibrium_positions(ion, kOmegaZ, n);
      const double scale = chain_length_scale(ion, kOmegaZ);
      for (int i = 0; i < n; ++i) {
        if (i) CHECK(z[i] > z[i - 1]);
        CHECK(z[i] == Catch::Approx(-z[n - 1 - i]).margin(1e-18));
        double f = z[i] / scale;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const double d = (z[i] - z[j]) / scale;
          f -= (d > 0 ? 1.0 : -1.0) / (d * d);
        }
        CHECK(std::abs(f) < 1e-12 * std::abs(z[i] / scale + 1.0));
      }
    }
  }
}

TEST_CASE("normal modes of two ions") {
  const IonSpecies ion = ca40();
  SECTION("axial branch: omega_z and sqrt(3) omega_z") {
    const CrystalModes m = normal_modes(ion, kOmegaZ, kOmegaX, Axis::z, 2);
    CHECK(m.mode_freqs[0] == Catch::Approx(kOmegaZ).epsilon(1e-12));
    CHECK(m.mode_freqs[1] ==
          Catch::Approx(std::sqrt(3.0) * kOmegaZ).epsilon(1e-10));
  }
  SECTION("transverse branch: omega_x and sqrt(omega_x^2 - omega_z^2)") {
    const CrystalModes m = normal_modes(ion, kOmegaZ, kOmegaX, Axis::x, 2);
    CHECK(m.mode_freqs[0] == Catch::Approx(kOmegaX).epsilon(1e-12));
    CHECK(m.mode_freqs[1] ==
          Catch::Approx(std::sqrt(kOmegaX * kOmegaX - kOmegaZ * kOmegaZ))
              .epsilon(1e-10));
    // two-mode splitting quoted with Fig. 3: 48.8 kHz
    CHECK((m.mode_freqs[0] - m.mode_freqs[1]) / kTwoPi ==
          Catch::Approx(48.8e3).epsilon(2e-3));
  }
  SECTION("CoM eigenvector is uniform with positive entries") {
    for (Axis ax : {Axis::z, Axis::x}) {
      const CrystalModes m = normal_modes(ion, kOmegaZ, kOmegaX, ax, 2);
      CHECK(m.mode_matrix(0, 0) == Catch::Approx(1.0 / std::sqrt(2.0)));
      CHECK(m.mode_matrix(1, 0) == Catch::Approx(1.0 / std::sqrt(2.0)));
    }
  }
  SECTION("zig-zag instability is rejected") {
    CHECK_THROWS_AS(
        normal_modes(ion, 1.0000001 * kOmegaX, kOmegaX, Axis::x, 2),
        instability_error);
    CHECK_THROWS_AS(
        normal_modes(ion, 1.2 * kOmegaX, kOmegaX, Axis::x, 2),
        instability_error);
  }
}

TEST_CASE("mode matrix orthogonality and Hessian cross-check") {
  const IonSpecies ion = ca40();
  for (int n : {2, 3, 4}) {
    for (Axis ax : {Axis::z, Axis::x}) {
      const CrystalModes m = normal_modes(ion, kOmegaZ, kOmegaX, ax, n);
      const Eigen::MatrixXd gram =
          m.mode_matrix.transpose() * m.mode_matrix -
          Eigen::MatrixXd::Identity(n, n);
      CHECK(gram.cwiseAbs().maxCoeff() < 1e-12);
      const Eigen::MatrixXd gram2 =
          m.mode_matrix * m.mode_matrix.transpose() -
          Eigen::MatrixXd::Identity(n, n);
      CHECK(gram2.cwiseAbs().maxCoeff() < 1e-12);

      auto fd = testing::fd_hessian_mode_freqs(
          m.eq_positions, chain_length_scale(ion, kOmegaZ), kOmegaZ,
          m.trap_freq, ax);
      std::vector<double> got = m.mode_freqs;
      std::sort(got.begin(), got.end());
      for (int k = 0; k < n; ++k)
        CHECK(got[k] == Catch::Approx(fd[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("lamb-dicke parameters") {
  const IonSpecies ion = ca40();
  SECTION("reference values for the 729 nm quadrupole transition") {
    CHECK(lamb_dicke(ion, kLaser729, kOmegaZ) ==
          Catch::Approx(0.098).epsilon(5e-3));
    CHECK(lamb_dicke(ion, kLaser729, kOmegaX) ==
          Catch::Approx(0.031).epsilon(2e-2));
  }
  SECTION("frequency scaling") {
    const double e1 = lamb_dicke(ion, kLaser729, kOmegaZ);
    const double e2 = lamb_dicke(ion, kLaser729, 2.0 * kOmegaZ);
    CHECK(e1 / e2 == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
  SECTION("axial-to-transverse ratio from a shared wavevector") {
    const double r = lamb_dicke(ion, kLaser729, kOmegaZ) /
                     lamb_dicke(ion, kLaser729, kOmegaX);
    CHECK(r == Catch::Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK(0.098 / 0.031 == Catch::Approx(std::sqrt(10.0)).epsilon(2e-2));
  }
  SECTION("wavevector recovered from a reference eta") {
    const double k = wavevector_from_eta(ion, 0.098, kOmegaZ);
    CHECK(lamb_dicke(ion, k, kOmegaZ) == Catch::Approx(0.098).epsilon(1e-14));
  }
  SECTION("mode table carries per-mode parameters") {
    const CrystalModes m =
        normal_modes(ion, kOmegaZ, kOmegaX, Axis::z, 2, kLaser729);
    CHECK(m.lamb_dicke[1] ==
          Catch::Approx(m.lamb_dicke[0] / std::pow(3.0, 0.25))
              .epsilon(1e-12));
  }
}
