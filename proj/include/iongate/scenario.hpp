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

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iongate/common.hpp"

namespace iongate {

// Scenario files are flat INI text: [section] headers, key = value lines,
// '#' or ';' comments.  All frequencies are ordinary (Hz) values of
// omega / 2 pi; conversion to angular frequencies happens here, at the
// boundary.

enum class TaskType { modes, design, sweep, pulse_train, oracle, figure };

struct Scenario {
  // [trap]
  double rf_freq_hz = 0.0;
  double q_x = 0.0;
  double q_z = 0.0;
  double rf_over_trap = 0.0;  // alternative to rf_freq_hz: Omega_rf / omega
  // [crystal]
  std::string species = "Ca40";
  int n_ions = 2;
  double omega_z_hz = 0.0;
  double omega_x_hz = 0.0;
  // [drive]
  std::string axis = "z";
  int sideband = 0;
  double eta_ref = 0.0;       // Lamb-Dicke at the axis CoM frequency
  double k_l_per_m = 0.0;     // alternative to eta_ref
  double rabi_hz = 0.0;
  double rabi_min_hz = 0.0, rabi_max_hz = 0.0;
  double omega_z_min_hz = 0.0, omega_z_max_hz = 0.0;
  double beta_tilde = 0.0;
  double phase_rad = 0.0;
  int r1 = 1;
  int r2 = 0;  // 0: single-mode design
  int n_pulses = 0;
  double target_t_g_us = 0.0;           // pulse-train target gate time
  double target_t_g_fraction = 0.0;     // alternative, relative to CW time
  // [noise]
  double t2_s = 0.0;
  double nbar = 0.0;
  // [oracle]
  int fock_cutoff = 12;
  bool include_carrier = true;
  bool thermal = false;
  // [task]
  TaskType task = TaskType::modes;
  int figure_id = 0;
  int n_points = 101;
};

namespace ini {

struct Document {
  // section -> key -> value, plus orderings for lossless round-trips
  std::map<std::string, std::map<std::string, std::string>> values;
  std::vector<std::pair<std::string, std::vector<std::string>>> order;

  void set(const std::string& sec, const std::string& key,
           const std::string& val) {
    if (values[sec].emplace(key, val).second) {
      for (auto& s : order)
        if (s.first == sec) {
          s.second.push_back(key);
          return;
        }
      order.push_back({sec, {key}});
    } else {
      values[sec][key] = val;
    }
  }

  const std::string* find(const std::string& sec,
                          const std::string& key) const {
    auto s = values.find(sec);
    if (s == values.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline Document parse(std::istream& in) {
  Document doc;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        std::ostringstream msg;
        msg << "scenario line " << line_no << ": unterminated section header";
        throw validation_error(msg.str());
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "scenario line " << line_no << ": expected key = value";
      throw validation_error(msg.str());
    }
    doc.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return doc;
}

inline std::string serialize(const Document& doc) {
  std::string out;
  for (const auto& [sec, keys] : doc.order) {
    out += "[" + sec + "]\n";
    for (const auto& k : keys) out += k + " = " + doc.values.at(sec).at(k) + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace ini

namespace detail {

inline double to_double(const std::string& sec, const std::string& key,
                        const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw validation_error("scenario: " + sec + "." + key +
                           " is not a number: '" + v + "'");
  }
}

inline int to_int(const std::string& sec, const std::string& key,
                  const std::string& v) {
  const double x = to_double(sec, key, v);
  const int i = static_cast<int>(x);
  if (x != i)
    throw validation_error("scenario: " + sec + "." + key +
                           " must be an integer");
  return i;
}

inline bool to_bool(const std::string& sec, const std::string& key,
                    const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw validation_error("scenario: " + sec + "." + key +
                         " must be true or false");
}

}  // namespace detail

inline TaskType task_from_name(const std::string& name) {
  if (name == "modes") return TaskType::modes;
  if (name == "design") return TaskType::design;
  if (name == "sweep") return TaskType::sweep;
  if (name == "pulse-train") return TaskType::pulse_train;
  if (name == "oracle") return TaskType::oracle;
  if (name == "figure") return TaskType::figure;
  throw validation_error("scenario: unknown task '" + name + "'");
}

inline const char* task_name(TaskType t) {
  switch (t) {
    case TaskType::modes: return "modes";
    case TaskType::design: return "design";
    case TaskType::sweep: return "sweep";
    case TaskType::pulse_train: return "pulse-train";
    case TaskType::oracle: return "oracle";
    case TaskType::figure: return "figure";
  }
  return "?";
}

inline Scenario scenario_from_document(const ini::Document& doc) {
  Scenario sc;
  const auto num = [&](const char* sec, const char* key, double& slot) {
    if (const auto* v = doc.find(sec, key))
      slot = detail::to_double(sec, key, *v);
  };
  const auto integer = [&](const char* sec, const char* key, int& slot) {
    if (const auto* v = doc.find(sec, key)) slot = detail::to_int(sec, key, *v);
  };
  num("trap", "rf_freq_hz", sc.rf_freq_hz);
  num("trap", "q_x", sc.q_x);
  num("trap", "q_z", sc.q_z);
  num("trap", "rf_over_trap", sc.rf_over_trap);
  if (const auto* v = doc.find("crystal", "species")) sc.species = *v;
  integer("crystal", "n_ions", sc.n_ions);
  num("crystal", "omega_z_hz", sc.omega_z_hz);
  num("crystal", "omega_x_hz", sc.omega_x_hz);
  if (const auto* v = doc.find("drive", "axis")) sc.axis = *v;
  integer("drive", "sideband", sc.sideband);
  num("drive", "eta_ref", sc.eta_ref);
  num("drive", "k_l_per_m", sc.k_l_per_m);
  num("drive", "rabi_hz", sc.rabi_hz);
  num("drive", "rabi_min_hz", sc.rabi_min_hz);
  num("drive", "rabi_max_hz", sc.rabi_max_hz);
  num("drive", "omega_z_min_hz", sc.omega_z_min_hz);
  num("drive", "omega_z_max_hz", sc.omega_z_max_hz);
  num("drive", "beta_tilde", sc.beta_tilde);
  num("drive", "phase_rad", sc.phase_rad);
  integer("drive", "r1", sc.r1);
  integer("drive", "r2", sc.r2);
  integer("drive", "n_pulses", sc.n_pulses);
  num("drive", "target_t_g_us", sc.target_t_g_us);
  num("drive", "target_t_g_fraction", sc.target_t_g_fraction);
  num("noise", "t2_s", sc.t2_s);
  num("noise", "nbar", sc.nbar);
  integer("oracle", "fock_cutoff", sc.fock_cutoff);
  if (const auto* v = doc.find("oracle", "include_carrier"))
    sc.include_carrier = detail::to_bool("oracle", "include_carrier", *v);
  if (const auto* v = doc.find("oracle", "thermal"))
    sc.thermal = detail::to_bool("oracle", "thermal", *v);
  if (const auto* v = doc.find("task", "type")) sc.task = task_from_name(*v);
  integer("task", "figure", sc.figure_id);
  integer("task", "n_points", sc.n_points);
  return sc;
}

inline Scenario parse_scenario(std::istream& in) {
  return scenario_from_document(ini::parse(in));
}

inline std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline ini::Document scenario_to_document(const Scenario& sc) {
  ini::Document doc;
  const auto num = [&](const char* sec, const char* key, double v) {
    doc.set(sec, key, format_value(v));
  };
  num("trap", "rf_freq_hz", sc.rf_freq_hz);
  num("trap", "q_x", sc.q_x);
  num("trap", "q_z", sc.q_z);
  num("trap", "rf_over_trap", sc.rf_over_trap);
  doc.set("crystal", "species", sc.species);
  doc.set("crystal", "n_ions", std::to_string(sc.n_ions));
  num("crystal", "omega_z_hz", sc.omega_z_hz);
  num("crystal", "omega_x_hz", sc.omega_x_hz);
  doc.set("drive", "axis", sc.axis);
  doc.set("drive", "sideband", std::to_string(sc.sideband));
  num("drive", "eta_ref", sc.eta_ref);
  num("drive", "k_l_per_m", sc.k_l_per_m);
  num("drive", "rabi_hz", sc.rabi_hz);
  num("drive", "rabi_min_hz", sc.rabi_min_hz);
  num("drive", "rabi_max_hz", sc.rabi_max_hz);
  num("drive", "omega_z_min_hz", sc.omega_z_min_hz);
  num("drive", "omega_z_max_hz", sc.omega_z_max_hz);
  num("drive", "beta_tilde", sc.beta_tilde);
  num("drive", "phase_rad", sc.phase_rad);
  doc.set("drive", "r1", std::to_string(sc.r1));
  doc.set("drive", "r2", std::to_string(sc.r2));
  doc.set("drive", "n_pulses", std::to_string(sc.n_pulses));
  num("drive", "target_t_g_us", sc.target_t_g_us);
  num("drive", "target_t_g_fraction", sc.target_t_g_fraction);
  num("noise", "t2_s", sc.t2_s);
  num("noise", "nbar", sc.nbar);
  doc.set("oracle", "fock_cutoff", std::to_string(sc.fock_cutoff));
  doc.set("oracle", "include_carrier", sc.include_carrier ? "true" : "false");
  doc.set("oracle", "thermal", sc.thermal ? "true" : "false");
  doc.set("task", "type", task_name(sc.task));
  doc.set("task", "figure", std::to_string(sc.figure_id));
  doc.set("task", "n_points", std::to_string(sc.n_points));
  return doc;
}

inline std::string serialize_scenario(const Scenario& sc) {
  return ini::serialize(scenario_to_document(sc));
}

}  // namespace iongate
