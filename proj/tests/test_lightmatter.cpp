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
#include <Eigen/Dense>
#include <cmath>

#include "iongate/lightmatter.hpp"

using namespace iongate;

namespace {
const double kOmegaZ = kTwoPi * 0.975e6;
const double kOmegaX = kTwoPi * 9.75e6;
const double kLaser729 = kTwoPi / 729e-9;

CrystalModes axial_modes() {
  return normal_modes(ca40(), kOmegaZ, kOmegaX, Axis::z, 2, kLaser729);
}
}  // namespace

TEST_CASE("bessel series") {
  // reference values from standard tables
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(0, 0.5) == Catch::Approx(0.938469807240813).epsilon(1e-14));
  CHECK(bessel_j(1, 0.5) == Catch::Approx(0.242268457674874).epsilon(1e-14));
  CHECK(bessel_j(2, 0.5) == Catch::Approx(0.030604023458682).epsilon(1e-13));
  CHECK(bessel_j(0, -0.5) == Catch::Approx(0.938469807240813).epsilon(1e-14));
  for (double x : {0.01, 0.3, 0.9})
    for (int l : {0, 1, 2, 3}) CHECK(std::abs(bessel_j(l, x)) <= 1.0);
}

TEST_CASE("modulation index") {
  CHECK(beta_tilde(kLaser729, 0.0, 0.3) == 0.0);
  CHECK(beta_tilde(kLaser729, 10e-9, 0.3) ==
        Catch::Approx(-0.0129276).epsilon(1e-4));
  SECTION("sideband weights") {
    CHECK(sideband_weight(0.0, 0) == 1.0);
    CHECK(sideband_weight(0.0, 1) == 0.0);
    CHECK(sideband_weight(0.001, 1) == Catch::Approx(5.0e-4).epsilon(1e-5));
    CHECK_THROWS_AS(sideband_weight(1.5, 0), validation_error);
  }
}

TEST_CASE("debye-waller renormalization") {
  const CrystalModes m = axial_modes();
  const DriveConfig d = make_drive(m, kTwoPi * 0.1e6, kOmegaZ, 0);
  double s = 0.0;
  for (int mm = 0; mm < 2; ++mm) {
    const double c = m.mode_matrix(0, mm) * m.lamb_dicke[mm];
    s += c * c;
  }
  CHECK(d.rabi[0] == Catch::Approx(kTwoPi * 0.1e6 * std::exp(-0.5 * s)));
  CHECK(d.rabi_raw[0] == kTwoPi * 0.1e6);
}

TEST_CASE("secular force model") {
  const CrystalModes m = axial_modes();
  const double rabi = kTwoPi * 0.1e6;
  SECTION("compensated trap with q dressing") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 0, 0.0, 0.3,
                               kTwoPi * 30e6);
    const ForceModel f = secular_force_model(d, m);
    CHECK(f.strengths[0][0] ==
          Catch::Approx(d.rabi[0] * m.mode_matrix(0, 0) * kLaser729 / 0.85)
              .epsilon(1e-12));
    CHECK(f.c_y[0] == 1.0);
    CHECK(f.c_x[0] == 0.0);
    REQUIRE(f.carriers.size() == 1);
    CHECK(f.carriers[0].freq == d.detuning);
    CHECK(f.carriers[0].amp[0] == Catch::Approx(d.rabi[0]));
  }
  SECTION("small modulation index mixes in sigma~^x") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 0, 0.01, 0.3,
                               kTwoPi * 30e6);
    const ForceModel f = secular_force_model(d, m);
    CHECK(f.c_x[0] / f.c_y[0] ==
          Catch::Approx(0.075 * bessel_j(1, 0.01) / bessel_j(0, 0.01))
              .epsilon(1e-12));
    CHECK(f.c_x[0] / f.c_y[0] == Catch::Approx(3.75e-4).epsilon(1e-3));
  }
  SECTION("no micromotion dressing at q = 0") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 0, 0.02, 0.0,
                               kTwoPi * 30e6);
    const ForceModel f = secular_force_model(d, m);
    CHECK(f.strengths[0][0] ==
          Catch::Approx(d.rabi[0] * m.mode_matrix(0, 0) * kLaser729 *
                        bessel_j(0, 0.02))
              .epsilon(1e-12));
  }
  SECTION("unresolved micromotion sidebands are rejected") {
    DriveConfig d = make_drive(m, kTwoPi * 15e6, kOmegaZ * 1.01, 0, 0.0, 0.3,
                               kTwoPi * 30e6);
    CHECK_THROWS_AS(secular_force_model(d, m), regime_error);
  }
}

TEST_CASE("micromotion force model") {
  const CrystalModes m = axial_modes();
  const double rabi = kTwoPi * 1e6;
  const double rf = kTwoPi * 100e6;
  SECTION("strength ratio to the secular force is q/4") {
    DriveConfig d1 = make_drive(m, rabi, kOmegaZ * 1.01, 1, 0.0, 0.3, rf);
    DriveConfig d0 = make_drive(m, rabi, kOmegaZ * 1.01, 0, 0.0, 0.3, rf);
    const ForceModel f1 = micromotion_force_model(d1, m);
    const ForceModel f0 = secular_force_model(d0, m);
    CHECK(f1.strengths[0][0] / f0.strengths[0][0] ==
          Catch::Approx(0.075).epsilon(1e-12));
    CHECK(f1.c_y[0] == 1.0);
    CHECK(f1.c_x[0] == 0.0);
  }
  SECTION("carrier terms") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 1, 0.005, 0.3, rf);
    const ForceModel f = micromotion_force_model(d, m);
    REQUIRE(f.carriers.size() == 2);
    CHECK(f.carriers[0].freq == rf);
    CHECK(f.carriers[0].spin_axis == 'x');
    CHECK(f.carriers[1].freq == d.detuning);
    CHECK(f.carriers[1].spin_axis == 'y');
    CHECK(std::abs(f.carriers[1].amp[0]) ==
          Catch::Approx(d.rabi[0] * 0.0025).epsilon(1e-5));
  }
  SECTION("near-resonant carrier vanishes for perfect compensation") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 1, 0.0, 0.3, rf);
    const ForceModel f = micromotion_force_model(d, m);
    CHECK(f.carriers[1].amp[0] == 0.0);
  }
  SECTION("uncompensated trap is rejected") {
    DriveConfig d = make_drive(m, rabi, kOmegaZ * 1.01, 1, 0.075, 0.3, rf);
    CHECK_THROWS_AS(micromotion_force_model(d, m), regime_error);
  }
  SECTION("continuity in beta~ at zero") {
    DriveConfig a = make_drive(m, rabi, kOmegaZ * 1.01, 1, 0.0, 0.3, rf);
    DriveConfig b = make_drive(m, rabi, kOmegaZ * 1.01, 1, 1e-9, 0.3, rf);
    const ForceModel fa = micromotion_force_model(a, m);
    const ForceModel fb = micromotion_force_model(b, m);
    CHECK(std::abs(fa.strengths[0][0] - fb.strengths[0][0]) /
              fa.strengths[0][0] <
          1e-8);
    CHECK(std::abs(fa.c_y[0] - fb.c_y[0]) < 1e-8);
    CHECK(std::abs(fa.c_x[0] - fb.c_x[0]) < 1e-8);
  }
}

TEST_CASE("spin operator algebra") {
  const CrystalModes m = axial_modes();
  for (double beta : {0.0, 0.003, 0.01}) {
    for (int sb : {0, 1}) {
      DriveConfig d = make_drive(m, kTwoPi * 0.5e6, kOmegaZ * 1.02, sb, beta,
                                 0.3, kTwoPi * 100e6);
      const ForceModel f = force_model(d, m);
      for (int i = 0; i < 2; ++i) {
        CHECK(f.c_y[i] * f.c_y[i] + f.c_x[i] * f.c_x[i] ==
              Catch::Approx(1.0).epsilon(1e-12));
        // s = c_y sigma~^y + c_x sigma~^x in the rotated basis, phi = 0.2
        const double phi = 0.2;
        Eigen::Matrix2cd sx, sy;
        sx << 0.0, std::exp(-kImag * phi), std::exp(kImag * phi), 0.0;
        sy << 0.0, kImag * std::exp(-kImag * phi),
            -kImag * std::exp(kImag * phi), 0.0;
        const Eigen::Matrix2cd s = f.c_y[i] * sy + f.c_x[i] * sx;
        CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((s * s - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
      }
    }
  }
}

TEST_CASE("regime report") {
  const CrystalModes m = axial_modes();
  SECTION("borderline carrier margin at the fast end") {
    DriveConfig d = make_drive(m, kTwoPi * 0.12e6, kTwoPi * 0.99e6, 0, 0.0,
                               0.0, kTwoPi * 30e6);
    const RegimeReport r = regime_check(d, m);
    CHECK(r.carrier_margin == Catch::Approx(0.12 / 0.99).epsilon(2e-2));
    CHECK_FALSE(r.carrier_ok);              // above the 0.1 pass threshold
    CHECK(r.carrier_margin < kMarginFail);  // but not a hard failure
  }
  SECTION("micromotion-sideband margins") {
    DriveConfig d = make_drive(m, kTwoPi * 1e6, kTwoPi * 1e6, 1, 1e-3, 0.3,
                               kTwoPi * 100e6);
    const RegimeReport r = regime_check(d, m);
    CHECK(r.resolved_micromotion_margin == Catch::Approx(0.01).epsilon(1e-2));
    CHECK(r.carrier_margin == Catch::Approx(0.01).epsilon(1e-2));
    CHECK(r.resolved_micromotion);
    CHECK(r.carrier_ok);
  }
  SECTION("compensation boundary") {
    DriveConfig d = make_drive(m, kTwoPi * 0.1e6, kOmegaZ, 0, 0.075, 0.3,
                               kTwoPi * 30e6);
    const RegimeReport r = regime_check(d, m);
    CHECK(r.compensation_margin == Catch::Approx(1.0));
    CHECK_FALSE(r.compensation_ok);
  }
}
