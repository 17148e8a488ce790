// Copyright 2026 The funcdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "funcdp/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw funcdp::ConfigError("cannot open output file " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
}

funcdp::BoxDomain parse_domain(const std::vector<std::string>& axes) {
  if (axes.empty()) throw funcdp::ConfigError("--domain is required");
  Eigen::VectorXd lo(axes.size()), hi(axes.size());
  for (size_t i = 0; i < axes.size(); ++i) {
    double a, b;
    if (std::sscanf(axes[i].c_str(), "%lf,%lf", &a, &b) != 2 || !(a < b)) {
      throw funcdp::ConfigError("bad --domain entry \"" + axes[i] +
                                "\", expected lo,hi with lo < hi");
    }
    lo[i] = a;
    hi[i] = b;
  }
  return funcdp::BoxDomain(lo, hi);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"functional-perturbation differential privacy toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    cmd->add_option("--output", output_override,
                    "override the config output path ('-' for stdout)");
  };

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "privacy-accuracy sweep");
  add_config(cmd_sweep);

  CLI::App* cmd_baseline =
      app.add_subcommand("baseline", "message-perturbing baseline sweep");
  add_config(cmd_baseline);

  CLI::App* cmd_demo = app.add_subcommand("demo", "demonstrations");
  cmd_demo->require_subcommand(1);
  CLI::App* cmd_imposs = cmd_demo->add_subcommand(
      "impossibility", "recovery of a noise-perturbed iteration");
  cmd_imposs->add_option("--config", config_path, "experiment config (JSON)")
      ->required();

  CLI::App* cmd_bounds = app.add_subcommand("bounds", "accuracy bounds");
  cmd_bounds->require_subcommand(1);
  CLI::App* cmd_curve =
      cmd_bounds->add_subcommand("curve", "trade-off bound vs epsilon as CSV");
  add_config(cmd_curve);

  CLI::App* cmd_basis = app.add_subcommand("basis", "orthonormal basis tools");
  cmd_basis->require_subcommand(1);
  CLI::App* cmd_build = cmd_basis->add_subcommand(
      "build", "orthonormalize and serialize a polynomial basis");
  int degree = 0;
  std::vector<std::string> domain_axes;
  std::string basis_out;
  cmd_build->add_option("--degree", degree, "maximum total degree")->required();
  cmd_build
      ->add_option("--domain", domain_axes,
                   "per-axis bounds as lo,hi (repeat per dimension)")
      ->required();
  cmd_build->add_option("--output", basis_out, "output JSON path, '-' = stdout");

  CLI::App* cmd_privacy = app.add_subcommand("privacy", "privacy calculus");
  cmd_privacy->require_subcommand(1);
  double arg_gamma = 0, arg_eps = 0, arg_p = 0, arg_q = 0;
  CLI::App* cmd_eps =
      cmd_privacy->add_subcommand("eps", "epsilon from a noise schedule");
  cmd_eps->add_option("--gamma", arg_gamma)->required();
  cmd_eps->add_option("--p", arg_p)->required();
  cmd_eps->add_option("--q", arg_q)->required();
  CLI::App* cmd_gamma =
      cmd_privacy->add_subcommand("gamma", "noise magnitude for an epsilon");
  cmd_gamma->add_option("--epsilon", arg_eps)->required();
  cmd_gamma->add_option("--p", arg_p)->required();
  cmd_gamma->add_option("--q", arg_q)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*cmd_sweep || *cmd_baseline) {
      funcdp::ExperimentConfig cfg =
          funcdp::ExperimentConfig::from_json_file(config_path);
      funcdp::PipelineContext ctx(cfg);
      funcdp::SweepResult result =
          *cmd_sweep ? funcdp::sweep(ctx) : funcdp::baseline_sweep(ctx);
      const std::string path =
          output_override.empty() ? cfg.output_path : output_override;
      write_or_print(result.to_csv(/*with_timestamp_header=*/false), path);
    } else if (*cmd_imposs) {
      funcdp::ExperimentConfig cfg =
          funcdp::ExperimentConfig::from_json_file(config_path);
      funcdp::ImpossibilityReport report = funcdp::demo_impossibility(cfg);
      std::cout << "runs=" << report.runs
                << " freq_true=" << report.freq_true
                << " freq_other=" << report.freq_other << "\n";
    } else if (*cmd_curve) {
      funcdp::ExperimentConfig cfg =
          funcdp::ExperimentConfig::from_json_file(config_path);
      const std::string path = output_override.empty() ? "-" : output_override;
      write_or_print(funcdp::bounds_curve_csv(cfg), path);
    } else if (*cmd_build) {
      funcdp::BoxDomain box = parse_domain(domain_axes);
      funcdp::Basis basis = funcdp::build_basis(box, degree);
      write_or_print(funcdp::basis_to_json(basis), basis_out);
    } else if (*cmd_eps) {
      std::printf("%.17g\n", funcdp::epsilon_of({arg_gamma, arg_p}, arg_q));
    } else if (*cmd_gamma) {
      funcdp::NoiseSchedule s = funcdp::gamma_for(arg_eps, arg_p, arg_q);
      std::printf("%.17g\n", s.gamma);
    }
  } catch (const funcdp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
