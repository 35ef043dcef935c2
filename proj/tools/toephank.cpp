/*
   Copyright 2026 The toephank authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// toephank <experiment> --config path.json --out dir [--p ...] [--sizes ...]
//                      [--seed ...] [--name ...]
//
// Flags provide defaults; values from the config file override them. Every
// run writes report.json, report.csv and plot_*.dat into --out and exits
// nonzero iff any assertion failed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "toephank/toephank.hpp"

namespace {

int run_experiment(const std::string& experiment, const std::string& config_path,
                   const std::string& out_dir, const std::vector<double>& p_values,
                   const std::vector<long>& sizes, std::uint64_t seed, const std::string& name) {
  toephank::ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.name = name.empty() ? experiment : name;
  if (!p_values.empty()) cfg.p_values = p_values;
  cfg.sizes = sizes;
  cfg.seed = seed;

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << '\n';
      return 2;
    }
    toephank::Json j = toephank::Json::parse(in);
    if (!j.contains("experiment")) j["experiment"] = experiment;
    toephank::ExperimentConfig file_cfg = toephank::experiment_config_from_json(j);
    // config file overrides flags
    cfg.experiment = file_cfg.experiment;
    if (j.contains("name")) cfg.name = file_cfg.name;
    if (j.contains("p")) cfg.p_values = file_cfg.p_values;
    if (j.contains("sizes")) cfg.sizes = file_cfg.sizes;
    if (j.contains("seed")) cfg.seed = file_cfg.seed;
    cfg.tolerances = file_cfg.tolerances;
    cfg.symbols = file_cfg.symbols;
    cfg.params = file_cfg.params;
  }

  toephank::Report rep = toephank::run(cfg);
  toephank::emit_all(rep, out_dir);
  toephank::print_report(rep, std::cout);
  std::cout << "report written to " << out_dir << '\n';
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite sections of Toeplitz+Hankel operators: norm brackets, "
               "displacement decompositions, Hardy-form checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the experiment name

  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> p_values;
  std::vector<long> sizes;
  std::uint64_t seed = 1;
  std::string name;

  app.add_option("--config", config_path, "JSON config file (overrides flags)");
  app.add_option("--out", out_dir, "output directory for report files");
  app.add_option("--p", p_values, "exponents p to evaluate");
  app.add_option("--sizes", sizes, "section sizes");
  app.add_option("--seed", seed, "base seed for all pseudo-random choices");
  app.add_option("--name", name, "report name");

  for (const std::string& exp : toephank::experiment_names())
    app.add_subcommand(exp, "run the '" + exp + "' suite");

  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    return run_experiment(experiment, config_path, out_dir, p_values, sizes, seed, name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
