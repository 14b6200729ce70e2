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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <thread>

#include "iongate/figures.hpp"
#include "iongate/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

iongate::Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw iongate::validation_error("cannot open scenario " + path);
  return iongate::parse_scenario(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iongate: Molmer-Sorensen gate design on secular and "
               "micromotion sidebands"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".";
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  int figure_id = 0;

  const auto add_common = [&](CLI::App* cmd, bool figure_flag) {
    cmd->add_option("--scenario", scenario_path, "scenario file")
        ->required();
    cmd->add_option("--out", out_dir, "output directory")->required();
    cmd->add_option("--jobs", jobs, "parallel workers for sweeps");
    if (figure_flag)
      cmd->add_option("--figure", figure_id, "figure id 1..5");
  };

  add_common(app.add_subcommand("modes", "normal-mode table"), false);
  add_common(app.add_subcommand("design", "single gate design"), false);
  add_common(app.add_subcommand("sweep", "error budget vs gate time"), false);
  add_common(app.add_subcommand("pulse-train",
                                "equidistant pulse-train solver"),
             false);
  add_common(app.add_subcommand("oracle", "brute-force gate validation"),
             false);
  add_common(app.add_subcommand("figure", "built-in figure recipes"), true);

  auto* cmp = app.add_subcommand("compare", "ratio table of two result CSVs");
  std::string csv_a, csv_b;
  cmp->add_option("csv_a", csv_a, "first result.csv")->required();
  cmp->add_option("csv_b", csv_b, "second result.csv")->required();
  cmp->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmp->parsed()) {
      std::filesystem::create_directories(out_dir);
      const iongate::CsvTable table = iongate::compare_results(
          iongate::read_csv_file(csv_a), iongate::read_csv_file(csv_b));
      table.write(out_dir + "/comparison.csv");
      return 0;
    }
    iongate::Scenario sc = load_scenario(scenario_path);
    const std::string task = app.get_subcommands().front()->get_name();
    sc.task = iongate::task_from_name(task);
    if (sc.task == iongate::TaskType::figure && figure_id > 0)
      sc.figure_id = figure_id;
    iongate::run_task(sc, out_dir, jobs);
    return 0;
  } catch (const iongate::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
