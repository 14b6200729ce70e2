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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "iongate/runner.hpp"

namespace iongate {

// Built-in figure recipes: error-versus-gate-time curves for the standard
// single-pulse gates (1: axial bus, 2: transverse bus, 3: both transverse
// modes) and their equidistant multi-pulse variants (4: axial N_p=3,
// 5: transverse N_p=5).  Scenario values override the defaults when set.

struct FigureDefaults {
  double omega_z_hz = 0.0, omega_x_hz = 0.0;
  double eta_ref = 0.0;
  double nbar = 0.0;
  double lo = 0.0, hi = 0.0;  // swept range, Hz (rabi or omega_z)
  int r1 = 1, r2 = 0, n_pulses = 0;
  std::string axis = "z";
};

inline FigureDefaults figure_defaults(int id) {
  FigureDefaults d;
  switch (id) {
    case 1:
    case 4:
      d.omega_z_hz = 0.975e6;
      d.eta_ref = 0.098;
      d.nbar = 0.1;
      d.lo = 0.02e6;
      d.hi = 0.12e6;
      d.axis = "z";
      d.n_pulses = id == 4 ? 3 : 0;
      break;
    case 2:
      d.omega_z_hz = 0.975e6;
      d.omega_x_hz = 9.75e6;
      d.eta_ref = 0.031;
      d.nbar = 0.05;
      d.lo = 0.05e6;
      d.hi = 1.29e6;
      d.axis = "x";
      break;
    case 3:
    case 5:
      d.omega_x_hz = 9.75e6;
      d.eta_ref = 0.031;
      d.nbar = 0.05;
      d.lo = 0.2e6;
      d.hi = 0.975e6;
      d.axis = "x";
      d.r2 = 2;
      d.n_pulses = id == 5 ? 5 : 0;
      if (id == 5) d.omega_z_hz = 0.975e6;
      break;
    default:
      throw validation_error("figure id must be 1..5");
  }
  return d;
}

inline Scenario figure_scenario(const Scenario& user, int id) {
  const FigureDefaults d = figure_defaults(id);
  Scenario sc = user;
  sc.task = TaskType::sweep;
  sc.axis = d.axis;
  sc.r1 = d.r1;
  sc.r2 = d.r2;
  sc.n_pulses = d.n_pulses;
  if (sc.omega_z_hz <= 0.0) sc.omega_z_hz = d.omega_z_hz;
  if (sc.omega_x_hz <= 0.0) sc.omega_x_hz = d.omega_x_hz;
  if (sc.eta_ref <= 0.0 && sc.k_l_per_m <= 0.0) sc.eta_ref = d.eta_ref;
  if (user.nbar == 0.0) sc.nbar = d.nbar;
  if (sc.t2_s <= 0.0) sc.t2_s = 0.8;
  if (id == 3 || id == 5) {
    if (sc.omega_z_min_hz <= 0.0) sc.omega_z_min_hz = d.lo;
    if (sc.omega_z_max_hz <= 0.0) sc.omega_z_max_hz = d.hi;
    if (id == 3) sc.omega_z_hz = sc.omega_z_max_hz;
  } else {
    if (sc.rabi_min_hz <= 0.0) sc.rabi_min_hz = d.lo;
    if (sc.rabi_max_hz <= 0.0) sc.rabi_max_hz = d.hi;
  }
  return sc;
}

namespace detail {

inline SvgCurve curve_of(const std::vector<SweepPoint>& pts,
                         const std::function<double(const SweepPoint&)>& y,
                         std::string label, std::string color,
                         bool dotted = false) {
  SvgCurve c;
  c.label = std::move(label);
  c.color = std::move(color);
  c.dotted = dotted;
  for (const auto& p : pts) {
    c.x.push_back(p.gate_time * 1e6);
    c.y.push_back(y(p));
  }
  return c;
}

inline const std::array<const char*, 4> kCurveColors = {
    "#1f6fb2", "#2a9d8f", "#e07b39", "#8153a8"};

}  // namespace detail

/// Single-pulse figures 1-3: total infidelity for T2 in {0.2,0.4,0.8,1.6} s
/// plus the component breakdown at the scenario T2.
inline void run_single_pulse_figure(const Scenario& base,
                                    const std::string& out_dir, int jobs) {
  const std::array<double, 4> t2_list = {0.2, 0.4, 0.8, 1.6};
  SvgPlot plot;
  plot.title = "single-pulse MS gate infidelity";
  plot.x_label = "gate time (us)";
  plot.y_label = "infidelity";
  SweepOutput main_out;
  for (std::size_t k = 0; k < t2_list.size(); ++k) {
    Scenario sc = base;
    sc.t2_s = t2_list[k];
    SweepOutput out = sweep_from_scenario(sc, jobs);
    plot.curves.push_back(detail::curve_of(
        out.result.points,
        [](const SweepPoint& p) { return p.budget.eps_total; },
        "T2 = " + format_value(t2_list[k]) + " s",
        detail::kCurveColors[k % 4]));
    if (t2_list[k] == base.t2_s) main_out = out;
  }
  if (main_out.result.points.empty())
    main_out = sweep_from_scenario(base, jobs);
  plot.curves.push_back(detail::curve_of(
      main_out.result.points,
      [](const SweepPoint& p) { return p.budget.eps_carr; }, "carrier",
      "#777777", true));
  plot.curves.push_back(detail::curve_of(
      main_out.result.points,
      [](const SweepPoint& p) { return p.budget.eps_mot; }, "motional",
      "#aa5555", true));
  plot.curves.push_back(detail::curve_of(
      main_out.result.points,
      [](const SweepPoint& p) { return p.budget.eps_deph; }, "dephasing",
      "#55aa55", true));
  plot.write(out_dir + "/panel_1.svg");
  write_sweep_csvs(main_out, out_dir);
}

struct MultiPulseFigureOutput {
  SweepOutput sweep;             // multi-pulse infidelity vs gate time
  GateSolution train_at_cw;      // train at the single-pulse optimum time
  GateSolution train_at_optimum; // train at the multi-pulse optimum
  std::vector<SweepPoint> cw_reference;
};

/// Multi-pulse figures 4-5: fix the detuning at the single-pulse optimum,
/// then shorten the target gate time and re-solve the pulse train at each
/// grid point.
inline MultiPulseFigureOutput multi_pulse_figure(const Scenario& base,
                                                 int jobs) {
  MultiPulseFigureOutput out;

  // single-pulse optimum for this T2 fixes the detuning
  Scenario sp = base;
  sp.n_pulses = 0;
  SweepOutput cw = sweep_from_scenario(sp, jobs);
  out.cw_reference = cw.result.points;
  const SweepPoint& star = cw.result.optimum;

  Scenario at_star = base;
  if (base.r2 != 0) {
    // two-mode: the optimum fixes the axial frequency (and hence detuning)
    at_star.omega_z_hz = star.swept_value / kTwoPi;
  } else {
    at_star.rabi_hz = star.swept_value / kTwoPi;
  }
  const ScenarioSetup st = setup_from_scenario(at_star, true);
  const GateSolution cw_gate = design_from_scenario(at_star, st);
  std::vector<int> constrained = {0};
  if (base.r2 != 0) constrained.push_back(1);

  const auto eval = [&](double t_target) {
    const GateSolution train =
        solve_pulse_train(st.modes, cw_gate.detuning, t_target, base.n_pulses,
                          constrained, 0.0, at_star.beta_tilde, st.rf_freq);
    SweepPoint pt =
        budget_for_gate(at_star, st, train, train.mean_square_rabi);
    pt.swept_value = t_target;
    return pt;
  };
  const std::vector<double> grid =
      linspace(0.45 * cw_gate.gate_time, 1.05 * cw_gate.gate_time,
               base.n_points);
  std::vector<SweepPoint> pts(grid.size());
  parallel_for(static_cast<int>(grid.size()), jobs,
               [&](int i) { pts[i] = eval(grid[i]); });
  out.sweep.com_freq = st.modes.mode_freqs[0];
  out.sweep.swept_label = "swept_target_t_g_us";
  out.sweep.swept_scale = 1e6;
  out.sweep.result.points = pts;
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].budget.eps_total < pts[best].budget.eps_total) best = i;
  const double lo = grid[best > 0 ? best - 1 : best];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  out.sweep.result.optimum =
      lo != hi ? eval(detail::golden_minimize(
                     [&](double v) { return eval(v).budget.eps_total; }, lo,
                     hi, 1e-3))
               : pts[best];
  std::sort(out.sweep.result.points.begin(), out.sweep.result.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) {
              return a.gate_time < b.gate_time;
            });

  out.train_at_cw =
      solve_pulse_train(st.modes, cw_gate.detuning, cw_gate.gate_time,
                        base.n_pulses, constrained, 0.0,
                        at_star.beta_tilde, st.rf_freq);
  out.train_at_optimum = solve_pulse_train(
      st.modes, cw_gate.detuning, out.sweep.result.optimum.gate_time,
      base.n_pulses, constrained, 0.0, at_star.beta_tilde, st.rf_freq);
  return out;
}

inline void run_multi_pulse_figure(const Scenario& base,
                                   const std::string& out_dir, int jobs) {
  SvgPlot plot;
  plot.title = "multi-pulse MS gate infidelity";
  plot.x_label = "gate time (us)";
  plot.y_label = "infidelity";
  MultiPulseFigureOutput main_out;
  const std::array<double, 2> t2_list = {0.2, 0.8};
  for (std::size_t k = 0; k < t2_list.size(); ++k) {
    Scenario sc = base;
    sc.t2_s = t2_list[k];
    MultiPulseFigureOutput out = multi_pulse_figure(sc, jobs);
    plot.curves.push_back(detail::curve_of(
        out.sweep.result.points,
        [](const SweepPoint& p) { return p.budget.eps_total; },
        "pulsed, T2 = " + format_value(t2_list[k]) + " s",
        detail::kCurveColors[k % 4]));
    plot.curves.push_back(detail::curve_of(
        out.cw_reference,
        [](const SweepPoint& p) { return p.budget.eps_total; },
        "CW, T2 = " + format_value(t2_list[k]) + " s",
        detail::kCurveColors[k % 4], true));
    if (t2_list[k] == base.t2_s) main_out = out;
  }
  if (main_out.sweep.result.points.empty())
    main_out = multi_pulse_figure(base, jobs);
  plot.write(out_dir + "/panel_1.svg");

  const auto pulse_plot = [&](const GateSolution& train,
                              const std::string& title,
                              const std::string& path) {
    SvgPlot p;
    p.title = title;
    p.x_label = "pulse start time (us)";
    p.y_label = "Rabi frequency (MHz)";
    p.log_y = false;
    SvgCurve c;
    c.label = "pulse amplitudes";
    for (const auto& pl : train.pulses->pulses) {
      // draw square pulses as flat segments
      c.x.push_back(pl.t_start * 1e6);
      c.y.push_back(pl.rabi[0] / kTwoPi / 1e6);
      c.x.push_back((pl.t_start + pl.width) * 1e6);
      c.y.push_back(pl.rabi[0] / kTwoPi / 1e6);
    }
    p.curves.push_back(c);
    p.write(path);
  };
  pulse_plot(main_out.train_at_cw, "pulse train at the single-pulse optimum",
             out_dir + "/panel_2.svg");
  pulse_plot(main_out.train_at_optimum,
             "pulse train at the multi-pulse optimum",
             out_dir + "/panel_3.svg");
  write_sweep_csvs(main_out.sweep, out_dir);
}

inline void run_figure(const Scenario& user, const std::string& out_dir,
                       int jobs) {
  const int id = user.figure_id;
  if (id < 1 || id > 5)
    throw validation_error("scenario: task.figure must be 1..5");
  const Scenario sc = figure_scenario(user, id);
  if (id == 4 || id == 5)
    run_multi_pulse_figure(sc, out_dir, jobs);
  else
    run_single_pulse_figure(sc, out_dir, jobs);
}

/// Entry point shared by the CLI and the tests.
inline void run_task(const Scenario& sc, const std::string& out_dir,
                     int jobs) {
  std::filesystem::create_directories(out_dir);
  switch (sc.task) {
    case TaskType::modes: run_modes(sc, out_dir); break;
    case TaskType::design: run_design(sc, out_dir); break;
    case TaskType::sweep: run_sweep(sc, out_dir, jobs); break;
    case TaskType::pulse_train: run_pulse_train(sc, out_dir); break;
    case TaskType::oracle: run_oracle(sc, out_dir); break;
    case TaskType::figure: run_figure(sc, out_dir, jobs); break;
  }
}

}  // namespace iongate
