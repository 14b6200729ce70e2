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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iongate/common.hpp"

namespace iongate {

// Deterministic CSV: fixed column order, every float printed with 12
// significant digits, so identical inputs give byte-identical files.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c) out += ',';
      out += header[c];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        std::snprintf(buf, sizeof buf, "%.12g", row[c]);
        out += buf;
      }
      out += '\n';
    }
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw numerical_error("cannot open " + path + " for writing");
    f << to_string();
  }
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line))
    throw validation_error("csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        std::ostringstream msg;
        msg << "csv line " << line_no << ": bad number '" << cell << "'";
        throw validation_error(msg.str());
      }
    }
    if (row.size() != t.header.size()) {
      std::ostringstream msg;
      msg << "csv line " << line_no << ": expected " << t.header.size()
          << " columns, got " << row.size();
      throw validation_error(msg.str());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open " + path);
  return read_csv(f);
}

inline int column_index(const CsvTable& t, const std::string& name) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == name) return static_cast<int>(c);
  throw validation_error("csv: missing column " + name);
}

/// Per-row eps_total and t_g ratios of two result tables with identical
/// schemas, plus a final optimum-to-optimum summary row.
inline CsvTable compare_results(const CsvTable& a, const CsvTable& b) {
  if (a.header != b.header)
    throw validation_error("compare: csv schemas do not match");
  if (a.rows.size() != b.rows.size())
    throw validation_error("compare: row counts differ");
  const int ct = column_index(a, "t_g_us");
  const int ce = column_index(a, "eps_total");
  CsvTable out;
  out.header = {"row",        "t_g_us_a",  "t_g_us_b",  "t_g_ratio",
                "eps_total_a", "eps_total_b", "eps_ratio"};
  std::size_t opt_a = 0, opt_b = 0;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    out.rows.push_back({static_cast<double>(r + 1), a.rows[r][ct],
                        b.rows[r][ct], b.rows[r][ct] / a.rows[r][ct],
                        a.rows[r][ce], b.rows[r][ce],
                        b.rows[r][ce] / a.rows[r][ce]});
    if (a.rows[r][ce] < a.rows[opt_a][ce]) opt_a = r;
    if (b.rows[r][ce] < b.rows[opt_b][ce]) opt_b = r;
  }
  out.rows.push_back({0.0, a.rows[opt_a][ct], b.rows[opt_b][ct],
                      b.rows[opt_b][ct] / a.rows[opt_a][ct],
                      a.rows[opt_a][ce], b.rows[opt_b][ce],
                      b.rows[opt_b][ce] / a.rows[opt_a][ce]});
  return out;
}

}  // namespace iongate
