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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "iongate/common.hpp"

namespace iongate {

// Static SVG line plots: linear x (gate time), log y (infidelity), enough
// for eyeballing error budgets against reference data.  No external plotting
// dependency.

struct SvgCurve {
  std::string label;
  std::string color = "#1f6fb2";
  bool dotted = false;
  std::vector<double> x, y;
};

struct SvgPlot {
  std::string title, x_label, y_label;
  bool log_y = true;
  std::vector<SvgCurve> curves;

  std::string render(int width = 640, int height = 440) const {
    const double ml = 70, mr = 20, mt = 34, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves)
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        const double yv = log_y ? (c.y[i] > 0 ? std::log10(c.y[i]) : 1e300)
                                : c.y[i];
        if (yv == 1e300) continue;
        xmin = std::min(xmin, c.x[i]);
        xmax = std::max(xmax, c.x[i]);
        ymin = std::min(ymin, yv);
        ymax = std::max(ymax, yv);
      }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const auto px = [&](double x) {
      return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    const auto py = [&](double y) {
      const double v = log_y ? std::log10(std::max(y, 1e-300)) : y;
      return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    char buf[256];
    std::string s;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                  "height=\"%d\">\n",
                  width, height);
    s += buf;
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"20\" font-size=\"14\" "
                  "font-family=\"sans-serif\">%s</text>\n",
                  ml, title.c_str());
    s += buf;

    // axes box
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                  "fill=\"none\" stroke=\"black\"/>\n",
                  ml, mt, width - ml - mr, height - mt - mb);
    s += buf;

    // y ticks (decades when log)
    if (log_y) {
      for (int d = static_cast<int>(std::floor(ymin));
           d <= static_cast<int>(std::ceil(ymax)); ++d) {
        if (d < ymin - 1e-9 || d > ymax + 1e-9) continue;
        const double yy = py(std::pow(10.0, d));
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                      "stroke=\"#cccccc\"/>\n",
                      ml, yy, static_cast<double>(width) - mr, yy);
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                      "font-family=\"sans-serif\" text-anchor=\"end\">1e%d"
                      "</text>\n",
                      ml - 6, yy + 4, d);
        s += buf;
      }
    }
    // x ticks: 5 evenly spaced
    for (int k = 0; k <= 4; ++k) {
      const double xv = xmin + (xmax - xmin) * k / 4.0;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                    "font-family=\"sans-serif\" text-anchor=\"middle\">%g"
                    "</text>\n",
                    px(xv), height - mb + 16.0, xv);
      s += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-size=\"12\" "
                  "font-family=\"sans-serif\" text-anchor=\"middle\">%s"
                  "</text>\n",
                  ml + (width - ml - mr) / 2.0, height - 12.0,
                  x_label.c_str());
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"16\" y=\"%g\" font-size=\"12\" "
                  "font-family=\"sans-serif\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 16 %g)\">%s</text>\n",
                  mt + (height - mt - mb) / 2.0, mt + (height - mt - mb) / 2.0,
                  y_label.c_str());
    s += buf;

    int legend_row = 0;
    for (const auto& c : curves) {
      if (c.x.empty()) continue;
      std::string pts;
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        if (log_y && c.y[i] <= 0) continue;
        std::snprintf(buf, sizeof buf, "%.3f,%.3f ", px(c.x[i]), py(c.y[i]));
        pts += buf;
      }
      std::snprintf(buf, sizeof buf,
                    "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
                    "stroke-width=\"1.5\"%s/>\n",
                    pts.c_str(), c.color.c_str(),
                    c.dotted ? " stroke-dasharray=\"4 3\"" : "");
      s += buf;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                    "font-family=\"sans-serif\" fill=\"%s\">%s</text>\n",
                    static_cast<double>(width) - mr - 160.0,
                    mt + 16.0 + 14.0 * legend_row, c.color.c_str(),
                    c.label.c_str());
      s += buf;
      ++legend_row;
    }
    s += "</svg>\n";
    return s;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw numerical_error("cannot open " + path + " for writing");
    f << render();
  }
};

}  // namespace iongate
