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

#include "iongate/errors.hpp"

using namespace iongate;

namespace {
const double kOmegaZ = kTwoPi * 0.975e6;
const double kOmegaX = kTwoPi * 9.75e6;

CrystalModes axial_modes() {
  const IonSpecies ion = ca40();
  return normal_modes(ion, kOmegaZ, kOmegaX, Axis::z, 2,
                      wavevector_from_eta(ion, 0.098, kOmegaZ));
}
}  // namespace

TEST_CASE("carrier error") {
  CHECK(carrier_error(SidebandScheme::secular, 2, 0.0, kOmegaZ) == 0.0);
  SECTION("fast axial design point") {
    const double rabi = kTwoPi * 0.12e6;
    const double delta = kTwoPi * 0.9916e6;
    CHECK(carrier_error(SidebandScheme::secular, 2, rabi * rabi, delta) ==
          Catch::Approx(1.46e-2).epsilon(5e-3));
  }
  SECTION("micromotion-to-secular ratio") {
    const double rabi = kTwoPi * 0.3e6;
    const double delta = kOmegaX;  // delta ~ omega
    const double rf = 46.0 * kOmegaX;
    const double sec =
        carrier_error(SidebandScheme::secular, 2, rabi * rabi, delta);
    const double mic = carrier_error(SidebandScheme::micromotion, 2,
                                     rabi * rabi, delta, 0.3, rf);
    CHECK(mic / sec ==
          Catch::Approx(std::pow(4.0 / (0.3 * 46.0), 2)).epsilon(1e-12));
    CHECK(mic / sec == Catch::Approx(0.084).epsilon(2e-3));
  }
  SECTION("micromotion scheme needs trap parameters") {
    CHECK_THROWS_AS(
        carrier_error(SidebandScheme::micromotion, 2, 1.0, kOmegaZ),
        validation_error);
  }
}

TEST_CASE("motional error") {
  NoiseConfig noise;
  noise.t2 = 0.8;
  noise.n_ions = 2;
  SECTION("two-mode error vanishes in the ground state") {
    noise.nbar = 0.0;
    MotionalParams p;
    p.eta1 = 0.031;
    CHECK(motional_error(GateTopology::transverse_two_mode, p, noise) == 0.0);
  }
  SECTION("axial second term, hand-evaluated") {
    noise.nbar = 0.1;
    MotionalParams p;
    p.detuning = kOmegaZ + kTwoPi * 16.6e3;
    p.com_freq = kOmegaZ;
    p.gate_time = 60.1e-6;
    p.eta1 = 0.098;
    const double e = motional_error(GateTopology::axial_single_mode, p, noise);
    const double second =
        kPi * kPi * 2.0 * std::pow(0.098, 4) * (1.2 * 0.01 + 1.4 * 0.1) / 32.0;
    CHECK(second == Catch::Approx(8.6e-6).epsilon(1e-2));
    const double first = 0.8 * kPi * 2.0 * (kTwoPi * 16.6e3) * 1.1 /
                         (2.0 * kOmegaZ * kOmegaZ * 60.1e-6);
    CHECK(e == Catch::Approx(first + second).epsilon(1e-12));
  }
  SECTION("transverse single-mode far-detuned simplification") {
    noise.nbar = 0.05;
    MotionalParams p;
    p.rabi = kTwoPi * 0.05e6;
    p.eta2 = 0.031;
    p.spectator_freq = std::sqrt(kOmegaX * kOmegaX - kOmegaZ * kOmegaZ);
    p.detuning = kOmegaX + kTwoPi * 2.3e3;
    const double e =
        motional_error(GateTopology::transverse_single_mode, p, noise);
    const double gap = p.detuning - p.spectator_freq;
    // for Omega eta2 << |delta - w2|, eps ~ (Omega eta2)^2 (2n+1) / (2 gap^2)
    const double approx = std::pow(p.rabi * p.eta2, 2) * 1.1 *
                          (2.0 * p.detuning * p.detuning) /
                          std::pow(2.0 * p.detuning * gap, 2);
    CHECK(e == Catch::Approx(approx).epsilon(0.02));
  }
}

TEST_CASE("dephasing error") {
  NoiseConfig noise;
  noise.t2 = 0.8;
  noise.nbar = 0.1;
  CHECK(dephasing_error(noise, 0.0) == 0.0);
  CHECK(dephasing_error(noise, 60e-6) == Catch::Approx(6.0e-4));
  NoiseConfig big = noise;
  big.n_ions = 4;
  CHECK(dephasing_error(big, 60e-6) ==
        Catch::Approx(4.0 * dephasing_error(noise, 60e-6)));
}

TEST_CASE("budget additivity") {
  const ErrorBudget b = make_budget(1e-3, 2e-5, 5e-4, 1e-4, {});
  CHECK(b.eps_total == Catch::Approx(1e-3 + 2e-5 + 5e-4));
  CHECK(b.eps_carr >= 0.0);
  CHECK(b.eps_mot >= 0.0);
  CHECK(b.eps_deph >= 0.0);
}

TEST_CASE("crossover r.f. frequency") {
  CHECK(crossover_rf(kOmegaX, 0.3) / kOmegaX == Catch::Approx(13.3333).epsilon(1e-4));
  CHECK(crossover_rf(kOmegaZ, 0.03) / kOmegaZ ==
        Catch::Approx(133.333).epsilon(1e-4));
  CHECK(46.0 > crossover_rf(kOmegaX, 0.3) / kOmegaX);
  CHECK_THROWS_AS(crossover_rf(kOmegaX, 0.0), validation_error);
}

TEST_CASE("single-mode sweep: reference endpoints and convexity") {
  SingleModeSweepConfig cfg;
  cfg.modes = axial_modes();
  cfg.noise.t2 = 0.8;
  cfg.noise.nbar = 0.1;
  cfg.noise.n_ions = 2;
  const SweepPoint lo = single_mode_point(cfg, kTwoPi * 0.02e6);
  const SweepPoint hi = single_mode_point(cfg, kTwoPi * 0.12e6);
  // upper reference endpoint matches to quoted rounding; the lower one
  // is quoted as 2.9 kHz where the design equations give 2.77 kHz
  CHECK((hi.detuning - kOmegaZ) / kTwoPi ==
        Catch::Approx(16.6e3).epsilon(0.02));
  CHECK((lo.detuning - kOmegaZ) / kTwoPi ==
        Catch::Approx(2.9e3).epsilon(0.06));

  SECTION("carrier + dephasing trade-off is convex with one minimum") {
    SingleModeSweepConfig pure = cfg;
    pure.noise.nbar = 0.0;  // motional term ~ 1/t^2 keeps convexity
    const SweepResult res = sweep_and_optimize(
        linspace(kTwoPi * 0.02e6, kTwoPi * 0.12e6, 61),
        [&](double v) { return single_mode_point(pure, v); });
    // convexity: every interior point lies below the chord of its
    // neighbours (grid is non-uniform in gate time)
    for (std::size_t i = 2; i < res.points.size(); ++i) {
      const auto& p0 = res.points[i - 2];
      const auto& p1 = res.points[i - 1];
      const auto& p2 = res.points[i];
      const double chord =
          p0.budget.eps_total + (p2.budget.eps_total - p0.budget.eps_total) *
                                    (p1.gate_time - p0.gate_time) /
                                    (p2.gate_time - p0.gate_time);
      CHECK(p1.budget.eps_total <= chord * (1.0 + 1e-12));
    }
    CHECK(res.optimum.budget.eps_total <=
          res.points.front().budget.eps_total);
    CHECK(res.optimum.budget.eps_total <= res.points.back().budget.eps_total);
    CHECK(res.optimum.gate_time > res.points.front().gate_time);
    CHECK(res.optimum.gate_time < res.points.back().gate_time);
  }
}

TEST_CASE("transverse single-mode sweep: reference endpoints") {
  const IonSpecies ion = ca40();
  SingleModeSweepConfig cfg;
  cfg.modes = normal_modes(ion, kOmegaZ, kOmegaX, Axis::x, 2,
                           wavevector_from_eta(ion, 0.031, kOmegaX));
  cfg.noise.t2 = 0.8;
  cfg.noise.nbar = 0.05;
  cfg.noise.n_ions = 2;
  const SweepPoint lo = single_mode_point(cfg, kTwoPi * 0.05e6);
  const SweepPoint hi = single_mode_point(cfg, kTwoPi * 1.29e6);
  CHECK((hi.detuning - kOmegaX) / kTwoPi ==
        Catch::Approx(56.6e3).epsilon(0.02));
  CHECK((lo.detuning - kOmegaX) / kTwoPi ==
        Catch::Approx(2.3e3).epsilon(0.06));
  // the spectator-mode error dominates the fast end of this topology
  CHECK(hi.budget.eps_mot > hi.budget.eps_carr);
}

TEST_CASE("two-mode sweep: reference endpoints") {
  TwoModeSweepConfig cfg;
  cfg.species = ca40();
  cfg.omega_x = kOmegaX;
  cfg.eta_ref = 0.031;
  cfg.noise.t2 = 0.8;
  cfg.noise.nbar = 0.05;
  cfg.noise.n_ions = 2;
  const SweepPoint hi = two_mode_point(cfg, kTwoPi * 0.975e6);
  const SweepPoint lo = two_mode_point(cfg, kTwoPi * 0.2e6);
  CHECK(hi.rabi / kTwoPi == Catch::Approx(1.58e6).epsilon(0.02));
  CHECK((hi.detuning - kOmegaX) / kTwoPi ==
        Catch::Approx(48.9e3).epsilon(0.02));
  CHECK(lo.rabi / kTwoPi == Catch::Approx(0.07e6).epsilon(0.08));
  CHECK((lo.detuning - kOmegaX) / kTwoPi ==
        Catch::Approx(2.2e3).epsilon(0.08));
  CHECK(hi.gate_time == Catch::Approx(20.5e-6).epsilon(0.01));
}

TEST_CASE("crossover continuity of full budgets") {
  TwoModeSweepConfig sec;
  sec.species = ca40();
  sec.omega_x = kOmegaX;
  sec.eta_ref = 0.031;
  sec.noise.t2 = 0.8;
  sec.noise.nbar = 0.05;
  sec.noise.n_ions = 2;
  TwoModeSweepConfig mic = sec;
  mic.sideband = SidebandScheme::micromotion;
  mic.q = 0.3;
  mic.rf_track_crossover = true;
  for (double wz_mhz : {0.3, 0.55, 0.8, 0.975}) {
    const SweepPoint a = two_mode_point(sec, kTwoPi * wz_mhz * 1e6);
    const SweepPoint b = two_mode_point(mic, kTwoPi * wz_mhz * 1e6);
    CHECK(std::abs(b.budget.eps_total - a.budget.eps_total) <=
          1e-12 * a.budget.eps_total);
    CHECK(b.budget.eps_mot == a.budget.eps_mot);
    CHECK(b.budget.eps_deph == a.budget.eps_deph);
  }
}

TEST_CASE("axial error-vs-time curve has the expected regime structure") {
  SingleModeSweepConfig cfg;
  cfg.modes = axial_modes();
  cfg.noise.t2 = 0.8;
  cfg.noise.nbar = 0.1;
  cfg.noise.n_ions = 2;
  const SweepResult res = sweep_and_optimize(
      linspace(kTwoPi * 0.02e6, kTwoPi * 0.12e6, 51),
      [&](double v) { return single_mode_point(cfg, v); });
  // dephasing dominates the slow end, the carrier the fast end, and the
  // optimum sits in between, well below 1e-2 yet slower than the trap
  // period
  const SweepPoint& slow = res.points.back();
  const SweepPoint& fast = res.points.front();
  CHECK(slow.budget.eps_deph > slow.budget.eps_carr);
  CHECK(fast.budget.eps_carr > fast.budget.eps_deph);
  CHECK(res.optimum.budget.eps_total < 1e-2);
  CHECK(res.optimum.gate_time > kTwoPi / kOmegaZ);
}

TEST_CASE("empty sweep range is rejected") {
  CHECK_THROWS_AS(
      sweep_and_optimize({}, [](double) { return SweepPoint{}; }),
      validation_error);
  CHECK_THROWS_AS(linspace(1.0, 2.0, 1), validation_error);
}
