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

#ifndef FUNCDP_HARNESS_HPP
#define FUNCDP_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "funcdp/basis.hpp"
#include "funcdp/bounds.hpp"
#include "funcdp/optim.hpp"
#include "funcdp/privacy.hpp"
#include "funcdp/regularity.hpp"

namespace funcdp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  uint64_t master_seed = 1;
  int n_agents = 10;
  int samples_per_agent = 100;
  double lambda = 0.01;
  double r_D = 5.0;
  int reference_degree = 14;
  std::vector<int> degrees = {4, 6, 14};
  std::vector<double> epsilon_grid;  // defaults to log sweep of [1e-2, 1e3]
  int repetitions = 20;
  double q = 1.1;
  double p = 0.55;
  std::string topology = "ring";  // ring | complete | path
  std::string solver = "centralized";  // centralized | distributed
  StepSchedule steps{StepSchedule::Kind::kHarmonic, 1e-3, 0.1};
  int distributed_iters = 200000;
  // projection knobs
  int grid_points_per_axis = 15;
  double grid_margin = -1.0;  // < 0: use 1e-4 * alpha
  int projection_max_iters = 60000;
  double projection_primal_tol = 1e-6;
  double projection_dual_tol = 1e-6;
  double admm_rho = 1.0;
  // baseline (message-perturbing) knobs
  int baseline_runs = 50;
  int baseline_iters = 200;
  double baseline_step_c = 0.5;
  double baseline_step_q = 0.1;
  double baseline_noise_ratio = 0.095;
  // bounds-curve smoothing parameter per agent
  double bound_eps_smooth = 0.0;
  std::string output_path = "sweep.csv";

  void validate() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

std::vector<double> default_epsilon_grid();

/// a_i uniform on [0,1]^2, b_i uniform on {-1, +1}, deterministic per seed.
std::vector<std::vector<LabeledSample>> generate_dataset(int n, int n_d,
                                                         uint64_t seed);

/// Immutable per-config state shared by all sweep cells: reference basis,
/// datasets, analyzed objective coefficients, regularity class, geometry, and
/// the unperturbed optimizer.
class PipelineContext {
 public:
  explicit PipelineContext(const ExperimentConfig& config);

  const ExperimentConfig& config() const { return config_; }
  const Basis& basis() const { return *basis_; }
  const BoxDomain& domain() const { return domain_; }
  const RegularityClass& agent_class() const { return cls_; }
  RegularityClass scaled_class() const;  // class of the n-agent sum
  const DomainGeometry& geometry() const { return geom_; }
  const std::vector<CoeffVector>& agent_coeffs() const { return coeffs_; }
  const std::vector<LogisticObjective>& agent_objectives() const {
    return objectives_;
  }
  const Eigen::VectorXd& x_star() const { return x_star_; }
  GridSpec grid() const;
  ProjectionConfig projection_config() const;

 private:
  ExperimentConfig config_;
  BoxDomain domain_;
  std::unique_ptr<Basis> basis_;
  RegularityClass cls_;
  DomainGeometry geom_;
  std::vector<LogisticObjective> objectives_;
  std::vector<CoeffVector> coeffs_;
  Eigen::VectorXd x_star_;
};

struct PipelineResult {
  Eigen::VectorXd x_tilde;
  Eigen::VectorXd x_star;
  double error = 0.0;
  double bound = 0.0;  // trade-off bound with the realized smoothing radii
  std::vector<double> eps_smooth;
};

/// Full pipeline for one cell: perturb each agent's coefficients, truncate to
/// `degree`, restore regularity, then solve with the configured solver.
PipelineResult run_pipeline(const PipelineContext& ctx, double epsilon,
                            int degree, int rep);

struct SweepRow {
  double epsilon = 0.0;
  int degree = 0;
  int rep = 0;
  double error = 0.0;
  double bound = 0.0;
  double runtime_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  /// header epsilon,degree,rep,error,bound,runtime_ms; 17 significant digits
  std::string to_csv(bool with_timestamp_header = false) const;
};

SweepResult sweep(const PipelineContext& ctx);
SweepResult baseline_sweep(const PipelineContext& ctx);

ImpossibilityReport demo_impossibility(const ExperimentConfig& config);

/// (epsilon, trade-off bound) pairs over the config epsilon grid.
std::string bounds_curve_csv(const ExperimentConfig& config);

}  // namespace funcdp

#endif  // FUNCDP_HARNESS_HPP
