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

#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "iongate/csv.hpp"
#include "iongate/errors.hpp"
#include "iongate/oracle.hpp"
#include "iongate/scenario.hpp"
#include "iongate/svg.hpp"

namespace iongate {

// Scenario execution: one function per task, all writing deterministic CSV
// (and SVG for figures) into the output directory.

inline const std::vector<std::string> kResultHeader = {
    "t_g_us",   "eps_total", "eps_carr",          "eps_mot",
    "eps_deph", "rabi_over_2pi_MHz", "detuning_over_2pi_kHz"};

inline IonSpecies species_from_name(const std::string& name) {
  if (name == "Ca40") return ca40();
  throw validation_error("scenario: unknown crystal.species '" + name +
                         "' (supported: Ca40, or set mass/charge in code)");
}

inline void require(bool ok, const std::string& key,
                    const std::string& why) {
  if (!ok)
    throw validation_error("scenario: missing or invalid " + key + " (" +
                           why + ")");
}

inline Axis axis_from_name(const std::string& a) {
  if (a == "x") return Axis::x;
  if (a == "y") return Axis::y;
  if (a == "z") return Axis::z;
  throw validation_error("scenario: drive.axis must be x, y or z");
}

struct ScenarioSetup {
  IonSpecies species;
  Axis axis = Axis::z;
  CrystalModes modes;
  double k_l = 0.0;
  double q_axis = 0.0;
  double rf_freq = 0.0;  // rad/s, 0 if unset
  NoiseConfig noise;
};

inline ScenarioSetup setup_from_scenario(const Scenario& sc,
                                         bool need_noise) {
  ScenarioSetup st;
  st.species = species_from_name(sc.species);
  st.axis = axis_from_name(sc.axis);
  require(sc.omega_z_hz > 0.0, "crystal.omega_z_hz", "axial trap frequency");
  if (st.axis != Axis::z)
    require(sc.omega_x_hz > 0.0, "crystal.omega_x_hz",
            "radial trap frequency");
  const double wz = kTwoPi * sc.omega_z_hz;
  const double wx = kTwoPi * sc.omega_x_hz;
  const double axis_freq = st.axis == Axis::z ? wz : wx;
  if (sc.k_l_per_m > 0.0)
    st.k_l = sc.k_l_per_m;
  else if (sc.eta_ref > 0.0)
    st.k_l = wavevector_from_eta(st.species, sc.eta_ref, axis_freq);
  else
    throw validation_error(
        "scenario: missing drive.eta_ref or drive.k_l_per_m (laser "
        "wavevector)");
  st.modes = normal_modes(st.species, wz, wx > 0.0 ? wx : wz, st.axis,
                          sc.n_ions, st.k_l);
  st.q_axis = st.axis == Axis::z ? sc.q_z : sc.q_x;
  if (sc.rf_freq_hz > 0.0)
    st.rf_freq = kTwoPi * sc.rf_freq_hz;
  else if (sc.rf_over_trap > 0.0)
    st.rf_freq = sc.rf_over_trap * axis_freq;
  st.noise.n_ions = sc.n_ions;
  st.noise.nbar = sc.nbar;
  st.noise.t2 = sc.t2_s;
  if (need_noise)
    require(sc.t2_s > 0.0, "noise.t2_s", "dephasing time for error budgets");
  return st;
}

inline std::vector<double> fixed_row(const SweepPoint& p, double com_freq) {
  return {p.gate_time * 1e6,
          p.budget.eps_total,
          p.budget.eps_carr,
          p.budget.eps_mot,
          p.budget.eps_deph,
          p.rabi / kTwoPi / 1e6,
          (p.detuning - com_freq) / kTwoPi / 1e3};
}

/// Evaluates fn over 0..n-1 with a bounded worker count; results land in
/// index order, so the output is independent of the scheduling.
template <typename Fn>
inline void parallel_for(int n, int jobs, Fn&& fn) {
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += jobs) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- task: modes -----------------------------------------------------------

inline void run_modes(const Scenario& sc, const std::string& out_dir) {
  const ScenarioSetup st = setup_from_scenario(sc, false);
  CsvTable t;
  t.header = {"mode", "freq_over_2pi_MHz", "lamb_dicke"};
  for (int i = 0; i < st.modes.n_ions; ++i)
    t.header.push_back("mvec_" + std::to_string(i + 1));
  for (int m = 0; m < st.modes.n_ions; ++m) {
    std::vector<double> row = {static_cast<double>(m + 1),
                               st.modes.mode_freqs[m] / kTwoPi / 1e6,
                               st.modes.lamb_dicke[m]};
    for (int i = 0; i < st.modes.n_ions; ++i)
      row.push_back(st.modes.mode_matrix(i, m));
    t.rows.push_back(std::move(row));
  }
  t.write(out_dir + "/result.csv");
}

// ---- task: design ----------------------------------------------------------

// Designs and budgets run in the pseudopotential convention (see
// single_mode_point); the trap q reaches the carrier model, the regime
// checks and the oracle, not the design force.
inline GateSolution design_from_scenario(const Scenario& sc,
                                         const ScenarioSetup& st) {
  DriveConfig drv =
      make_drive(st.modes, kTwoPi * sc.rabi_hz, st.modes.mode_freqs[0], 0,
                 sc.beta_tilde, 0.0, st.rf_freq, sc.phase_rad);
  if (sc.r2 != 0) return design_two_mode_gate(st.modes, drv, sc.r1, sc.r2);
  require(sc.rabi_hz > 0.0, "drive.rabi_hz", "single-mode design Rabi");
  return design_single_mode_gate(st.modes, drv, sc.r1);
}

inline SweepPoint budget_for_gate(const Scenario& sc, const ScenarioSetup& st,
                                  const GateSolution& gate,
                                  double mean_sq_rabi) {
  SweepPoint pt;
  pt.gate_time = gate.gate_time;
  pt.rabi = gate.rabi_scaled;
  pt.detuning = gate.detuning;
  const SidebandScheme scheme =
      sc.sideband == 1 ? SidebandScheme::micromotion : SidebandScheme::secular;
  if (scheme == SidebandScheme::micromotion) {
    require(st.q_axis > 0.0, "trap.q_x or trap.q_z",
            "micromotion scheme needs the axis Mathieu q");
    require(st.rf_freq > 0.0, "trap.rf_freq_hz or trap.rf_over_trap",
            "micromotion scheme needs the r.f. frequency");
  }
  const double carr =
      carrier_error(scheme, sc.n_ions, mean_sq_rabi, gate.detuning, st.q_axis,
                    st.rf_freq);
  MotionalParams mp;
  mp.detuning = gate.detuning;
  mp.gate_time = gate.gate_time;
  mp.rabi = gate.rabi_scaled;
  mp.com_freq = st.modes.mode_freqs[0];
  mp.eta1 = st.modes.lamb_dicke[0];
  GateTopology topo;
  if (st.axis == Axis::z) {
    topo = GateTopology::axial_single_mode;
  } else if (gate.r2 != 0 || sc.r2 != 0) {
    topo = GateTopology::transverse_two_mode;
    mp.eta2 = st.modes.lamb_dicke[1];
  } else {
    topo = GateTopology::transverse_single_mode;
    mp.spectator_freq = st.modes.mode_freqs[1];
    mp.eta2 = st.modes.lamb_dicke[1];
  }
  const double mot = motional_error(topo, mp, st.noise);
  const double deph = dephasing_error(st.noise, gate.gate_time);
  const PulseMode pm = gate.pulses && gate.pulses->pulses.size() > 1
                           ? PulseMode::multi_pulse
                           : PulseMode::single_pulse;
  pt.budget = make_budget(carr, mot, deph, gate.gate_time,
                          {topo, pm, scheme});
  return pt;
}

inline void write_gate_csv(const GateSolution& gate, double com_freq,
                           const std::string& path) {
  CsvTable t;
  t.header = {"r1",
              "r2",
              "t_g_us",
              "detuning_over_2pi_kHz",
              "rabi_over_2pi_MHz",
              "rabi_scaled_over_2pi_MHz",
              "g12_imag",
              "j12_over_2pi_kHz",
              "closure_residual",
              "spectator_residual",
              "nullspace_residual"};
  t.rows.push_back({static_cast<double>(gate.r1), static_cast<double>(gate.r2),
                    gate.gate_time * 1e6,
                    (gate.detuning - com_freq) / kTwoPi / 1e3,
                    gate.rabi / kTwoPi / 1e6, gate.rabi_scaled / kTwoPi / 1e6,
                    gate.g12.imag(), gate.j12 / kTwoPi / 1e3,
                    gate.closure_residual, gate.spectator_residual,
                    gate.nullspace_residual});
  t.write(path);
}

inline void run_design(const Scenario& sc, const std::string& out_dir) {
  const ScenarioSetup st = setup_from_scenario(sc, true);
  const GateSolution gate = design_from_scenario(sc, st);
  const SweepPoint pt = budget_for_gate(
      sc, st, gate, gate.rabi_scaled * gate.rabi_scaled);
  CsvTable t;
  t.header = kResultHeader;
  t.rows.push_back(fixed_row(pt, st.modes.mode_freqs[0]));
  t.write(out_dir + "/result.csv");
  write_gate_csv(gate, st.modes.mode_freqs[0], out_dir + "/gate.csv");
}

// ---- task: sweep -----------------------------------------------------------

struct SweepOutput {
  SweepResult result;
  double com_freq = 0.0;
  std::string swept_label = "swept_value";
  double swept_scale = 1.0;  // multiplies the raw SI swept value for output
};

inline SweepOutput sweep_from_scenario(const Scenario& sc, int jobs) {
  const ScenarioSetup st = setup_from_scenario(sc, true);
  const SidebandScheme scheme =
      sc.sideband == 1 ? SidebandScheme::micromotion : SidebandScheme::secular;
  if (scheme == SidebandScheme::micromotion) {
    require(st.q_axis > 0.0, "trap.q_x or trap.q_z",
            "micromotion sweep needs the axis Mathieu q");
    require(st.rf_freq > 0.0, "trap.rf_freq_hz or trap.rf_over_trap",
            "micromotion sweep needs the r.f. frequency");
  }
  SweepOutput out;
  std::vector<double> grid;
  std::function<SweepPoint(double)> eval;
  if (sc.r2 != 0) {
    require(sc.omega_z_min_hz > 0.0 && sc.omega_z_max_hz > 0.0,
            "drive.omega_z_min_hz/omega_z_max_hz",
            "two-mode sweeps scan the axial frequency");
    require(sc.eta_ref > 0.0, "drive.eta_ref",
            "two-mode sweeps rebuild the crystal per grid point");
    TwoModeSweepConfig cfg;
    cfg.species = st.species;
    cfg.omega_x = kTwoPi * sc.omega_x_hz;
    cfg.eta_ref = sc.eta_ref;
    cfg.noise = st.noise;
    cfg.r1 = sc.r1;
    cfg.r2 = sc.r2;
    cfg.sideband = scheme;
    cfg.q = st.q_axis;
    cfg.rf_freq = st.rf_freq;
    grid = linspace(kTwoPi * sc.omega_z_min_hz, kTwoPi * sc.omega_z_max_hz,
                    sc.n_points);
    eval = [cfg](double v) { return two_mode_point(cfg, v); };
    out.com_freq = cfg.omega_x;
    out.swept_label = "swept_omega_z_over_2pi_MHz";
    out.swept_scale = 1.0 / kTwoPi / 1e6;
  } else {
    require(sc.rabi_min_hz > 0.0 && sc.rabi_max_hz > 0.0,
            "drive.rabi_min_hz/rabi_max_hz",
            "single-mode sweeps scan the Rabi frequency");
    SingleModeSweepConfig cfg;
    cfg.modes = st.modes;
    cfg.noise = st.noise;
    cfg.r1 = sc.r1;
    cfg.sideband = scheme;
    cfg.q = st.q_axis;
    cfg.rf_freq = st.rf_freq;
    grid = linspace(kTwoPi * sc.rabi_min_hz, kTwoPi * sc.rabi_max_hz,
                    sc.n_points);
    eval = [cfg](double v) { return single_mode_point(cfg, v); };
    out.com_freq = st.modes.mode_freqs[0];
    out.swept_label = "swept_rabi_over_2pi_MHz";
    out.swept_scale = 1.0 / kTwoPi / 1e6;
  }

  // grid points are independent; evaluate in parallel, assemble in order
  std::vector<SweepPoint> pts(grid.size());
  parallel_for(static_cast<int>(grid.size()), jobs,
               [&](int i) { pts[i] = eval(grid[i]); });
  SweepResult& res = out.result;
  res.points = pts;
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].budget.eps_total < pts[best].budget.eps_total) best = i;
  const double lo = grid[best > 0 ? best - 1 : best];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  if (lo != hi) {
    const double refined = detail::golden_minimize(
        [&](double v) { return eval(v).budget.eps_total; }, std::min(lo, hi),
        std::max(lo, hi), 1e-3);
    res.optimum = eval(refined);
    if (res.optimum.budget.eps_total > pts[best].budget.eps_total)
      res.optimum = pts[best];
  } else {
    res.optimum = pts[best];
  }
  std::sort(res.points.begin(), res.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) {
              return a.gate_time < b.gate_time;
            });
  return out;
}

inline void write_sweep_csvs(const SweepOutput& out,
                             const std::string& out_dir) {
  CsvTable t;
  t.header = kResultHeader;
  for (const auto& p : out.result.points)
    t.rows.push_back(fixed_row(p, out.com_freq));
  t.write(out_dir + "/result.csv");
  CsvTable opt;
  opt.header = kResultHeader;
  opt.header.push_back(out.swept_label);
  auto row = fixed_row(out.result.optimum, out.com_freq);
  row.push_back(out.result.optimum.swept_value * out.swept_scale);
  opt.rows.push_back(row);
  opt.write(out_dir + "/optimum.csv");
}

inline void run_sweep(const Scenario& sc, const std::string& out_dir,
                      int jobs) {
  write_sweep_csvs(sweep_from_scenario(sc, jobs), out_dir);
}

// ---- task: pulse-train -----------------------------------------------------

inline GateSolution pulse_train_from_scenario(const Scenario& sc,
                                              const ScenarioSetup& st) {
  require(sc.n_pulses >= 3, "drive.n_pulses", "pulse-train size");
  const GateSolution cw = design_from_scenario(sc, st);
  double t_target = sc.target_t_g_us * 1e-6;
  if (t_target <= 0.0 && sc.target_t_g_fraction > 0.0)
    t_target = sc.target_t_g_fraction * cw.gate_time;
  require(t_target > 0.0, "drive.target_t_g_us or drive.target_t_g_fraction",
          "pulse trains need a target gate time");
  std::vector<int> constrained = {0};
  if (sc.r2 != 0) constrained.push_back(1);
  return solve_pulse_train(st.modes, cw.detuning, t_target, sc.n_pulses,
                           constrained, 0.0, sc.beta_tilde, st.rf_freq);
}

inline void run_pulse_train(const Scenario& sc, const std::string& out_dir) {
  const ScenarioSetup st = setup_from_scenario(sc, true);
  const GateSolution train = pulse_train_from_scenario(sc, st);
  const SweepPoint pt =
      budget_for_gate(sc, st, train, train.mean_square_rabi);
  CsvTable t;
  t.header = kResultHeader;
  t.rows.push_back(fixed_row(pt, st.modes.mode_freqs[0]));
  t.write(out_dir + "/result.csv");
  write_gate_csv(train, st.modes.mode_freqs[0], out_dir + "/gate.csv");
  CsvTable p;
  p.header = {"pulse", "t_start_us", "width_us", "rabi_over_2pi_MHz"};
  for (std::size_t n = 0; n < train.pulses->pulses.size(); ++n) {
    const Pulse& pl = train.pulses->pulses[n];
    p.rows.push_back({static_cast<double>(n + 1), pl.t_start * 1e6,
                      pl.width * 1e6, pl.rabi[0] / kTwoPi / 1e6});
  }
  p.write(out_dir + "/pulses.csv");
}

// ---- task: oracle ----------------------------------------------------------

inline void run_oracle(const Scenario& sc, const std::string& out_dir) {
  const ScenarioSetup st = setup_from_scenario(sc, true);
  const GateSolution gate = design_from_scenario(sc, st);
  HilbertSpec spec;
  spec.n_ions = sc.n_ions;
  spec.n_modes = st.modes.n_ions;
  spec.fock_cutoff = sc.fock_cutoff;
  spec.nbar = sc.thermal ? sc.nbar : 0.0;
  OracleDrive drv = oracle_drive_from_design(
      st.modes, gate, sc.sideband, st.q_axis, st.rf_freq, sc.beta_tilde);
  drv.include_carrier = sc.include_carrier;
  const SimResult sim = sc.thermal
                            ? thermal_average(spec, drv, gate.gate_time)
                            : evolve(spec, drv, gate.gate_time);
  const SweepPoint pt = budget_for_gate(
      sc, st, gate, gate.rabi_scaled * gate.rabi_scaled);

  CsvTable t;
  t.header = kResultHeader;
  std::vector<double> row = fixed_row(pt, st.modes.mode_freqs[0]);
  row[1] = 1.0 - sim.bell_fidelity;  // eps_total: measured infidelity
  row[3] = 0.0;
  row[4] = 0.0;
  t.rows.push_back(row);
  t.write(out_dir + "/result.csv");

  CsvTable o;
  o.header = {"t_g_us",     "bell_fidelity", "infidelity",
              "norm_drift", "max_top_leak",  "steps",
              "retained_weight"};
  std::vector<double> orow = {gate.gate_time * 1e6,
                              sim.bell_fidelity,
                              1.0 - sim.bell_fidelity,
                              sim.norm_drift,
                              sim.max_top_leak,
                              static_cast<double>(sim.steps),
                              sim.retained_weight};
  for (std::size_t m = 0; m < sim.gamma_measured.size(); ++m) {
    o.header.push_back("gamma_abs_" + std::to_string(m + 1));
    orow.push_back(std::abs(sim.gamma_measured[m]));
  }
  o.rows.push_back(orow);
  o.write(out_dir + "/oracle.csv");
}

}  // namespace iongate
