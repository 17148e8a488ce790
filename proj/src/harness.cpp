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

#include "funcdp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace funcdp {

using json = nlohmann::json;

void ExperimentConfig::validate() const {
  if (n_agents < 1 || samples_per_agent < 1) {
    throw ConfigError("config: n_agents and samples_per_agent must be >= 1");
  }
  if (!(lambda > 0) || !(r_D > 0)) {
    throw ConfigError("config: lambda and r_D must be positive");
  }
  if (reference_degree < 0) throw ConfigError("config: reference_degree < 0");
  for (int d : degrees) {
    if (d < 0 || d > reference_degree) {
      throw ConfigError("config: degrees must lie in [0, reference_degree]");
    }
  }
  if (repetitions < 1) throw ConfigError("config: repetitions >= 1");
  if (!(p > 0.5) || !(p < q - 0.5)) {
    throw ConfigError("config: requires p in (1/2, q - 1/2)");
  }
  if (topology != "ring" && topology != "complete" && topology != "path") {
    throw ConfigError("config: unknown topology " + topology);
  }
  if (solver != "centralized" && solver != "distributed") {
    throw ConfigError("config: unknown solver " + solver);
  }
  for (double e : epsilon_grid) {
    if (!(e > 0)) throw ConfigError("config: epsilon grid entries > 0");
  }
}

std::vector<double> default_epsilon_grid() {
  // log sweep of [1e-2, 1e3], half-decade spacing
  std::vector<double> grid;
  for (int j = 0; j <= 10; ++j) grid.push_back(std::pow(10.0, -2.0 + 0.5 * j));
  return grid;
}

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.contains("version") || j["version"] != 1) {
    throw ConfigError("config: missing or unsupported schema version");
  }
  static const std::vector<std::string> kKnown = {
      "version", "master_seed", "n_agents", "samples_per_agent", "lambda",
      "r_D", "reference_degree", "degrees", "epsilon_grid", "repetitions",
      "q", "p", "topology", "solver", "step_kind", "step_c", "step_q",
      "distributed_iters", "grid_points_per_axis", "grid_margin",
      "projection_max_iters", "projection_primal_tol", "projection_dual_tol",
      "admm_rho", "baseline_runs", "baseline_iters", "baseline_step_c",
      "baseline_step_q", "baseline_noise_ratio", "bound_eps_smooth",
      "output_path"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  ExperimentConfig c;
  c.epsilon_grid = default_epsilon_grid();
  read_key(j, "master_seed", c.master_seed);
  read_key(j, "n_agents", c.n_agents);
  read_key(j, "samples_per_agent", c.samples_per_agent);
  read_key(j, "lambda", c.lambda);
  read_key(j, "r_D", c.r_D);
  read_key(j, "reference_degree", c.reference_degree);
  read_key(j, "degrees", c.degrees);
  read_key(j, "epsilon_grid", c.epsilon_grid);
  read_key(j, "repetitions", c.repetitions);
  read_key(j, "q", c.q);
  read_key(j, "p", c.p);
  read_key(j, "topology", c.topology);
  read_key(j, "solver", c.solver);
  std::string step_kind = "harmonic";
  read_key(j, "step_kind", step_kind);
  if (step_kind == "harmonic") {
    c.steps.kind = StepSchedule::Kind::kHarmonic;
  } else if (step_kind == "geometric") {
    c.steps.kind = StepSchedule::Kind::kGeometric;
  } else {
    throw ConfigError("config: unknown step_kind " + step_kind);
  }
  read_key(j, "step_c", c.steps.c);
  read_key(j, "step_q", c.steps.q);
  read_key(j, "distributed_iters", c.distributed_iters);
  read_key(j, "grid_points_per_axis", c.grid_points_per_axis);
  read_key(j, "grid_margin", c.grid_margin);
  read_key(j, "projection_max_iters", c.projection_max_iters);
  read_key(j, "projection_primal_tol", c.projection_primal_tol);
  read_key(j, "projection_dual_tol", c.projection_dual_tol);
  read_key(j, "admm_rho", c.admm_rho);
  read_key(j, "baseline_runs", c.baseline_runs);
  read_key(j, "baseline_iters", c.baseline_iters);
  read_key(j, "baseline_step_c", c.baseline_step_c);
  read_key(j, "baseline_step_q", c.baseline_step_q);
  read_key(j, "baseline_noise_ratio", c.baseline_noise_ratio);
  read_key(j, "bound_eps_smooth", c.bound_eps_smooth);
  read_key(j, "output_path", c.output_path);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::vector<std::vector<LabeledSample>> generate_dataset(int n, int n_d,
                                                         uint64_t seed) {
  std::vector<std::vector<LabeledSample>> data(n);
  for (int i = 0; i < n; ++i) {
    LaplaceSampler rng(derive_seed(seed, i, 0x64617461));  // "data" stream
    data[i].resize(n_d);
    for (int s = 0; s < n_d; ++s) {
      data[i][s].a = Eigen::Vector2d(rng.uniform01(), rng.uniform01());
      data[i][s].b = rng.uniform01() < 0.5 ? -1 : 1;
    }
  }
  return data;
}

PipelineContext::PipelineContext(const ExperimentConfig& config)
    : config_(config) {
  if (config_.epsilon_grid.empty()) {
    config_.epsilon_grid = default_epsilon_grid();
  }
  config_.validate();
  Eigen::VectorXd lo(2), hi(2);
  lo << -config_.r_D, -config_.r_D;
  hi << config_.r_D, config_.r_D;
  domain_ = BoxDomain(lo, hi);
  basis_ = std::make_unique<Basis>(build_basis(domain_, config_.reference_degree));
  cls_ = class_params_for_logistic(config_.samples_per_agent, config_.lambda,
                                   config_.r_D);
  geom_ = box_geometry(domain_);

  auto data = generate_dataset(config_.n_agents, config_.samples_per_agent,
                               config_.master_seed);
  objectives_.reserve(config_.n_agents);
  coeffs_.reserve(config_.n_agents);
  LogisticObjective total;
  total.lambda = config_.lambda;
  for (int i = 0; i < config_.n_agents; ++i) {
    LogisticObjective obj{data[i], config_.lambda};
    coeffs_.push_back(analyze(
        *basis_, [&obj](const Eigen::VectorXd& x) { return obj.value(x); }));
    total.samples.insert(total.samples.end(), data[i].begin(), data[i].end());
    objectives_.push_back(std::move(obj));
  }
  x_star_ = centralized_minimize(make_objective(total), domain_, 1e-10);
}

RegularityClass PipelineContext::scaled_class() const {
  RegularityClass s = cls_;
  const double n = config_.n_agents;
  s.alpha *= n;
  s.beta *= n;
  s.u_bar *= n;
  return s;
}

GridSpec PipelineContext::grid() const {
  GridSpec g;
  g.points_per_axis = config_.grid_points_per_axis;
  g.margin = config_.grid_margin >= 0 ? config_.grid_margin
                                      : 1e-4 * cls_.alpha;
  return g;
}

ProjectionConfig PipelineContext::projection_config() const {
  ProjectionConfig p;
  p.max_iters = config_.projection_max_iters;
  p.primal_tol = config_.projection_primal_tol;
  p.dual_tol = config_.projection_dual_tol;
  p.admm_rho = config_.admm_rho;
  return p;
}

PipelineResult run_pipeline(const PipelineContext& ctx, double epsilon,
                            int degree, int rep) {
  const ExperimentConfig& cfg = ctx.config();
  const Basis& basis = ctx.basis();
  const int active_dim = basis.dim_at_degree(degree);
  const GridSpec grid = ctx.grid();
  const ProjectionConfig pcfg = ctx.projection_config();

  const bool noiseless = !std::isfinite(epsilon);
  NoiseSchedule schedule{0.0, cfg.p};
  if (!noiseless) schedule = gamma_for(epsilon, cfg.p, cfg.q);

  PipelineResult out;
  out.eps_smooth.reserve(cfg.n_agents);
  Eigen::VectorXd sum_coeffs = Eigen::VectorXd::Zero(basis.dim);
  std::vector<CoeffVector> tilde;
  tilde.reserve(cfg.n_agents);
  for (int i = 0; i < cfg.n_agents; ++i) {
    const uint64_t seed = derive_seed(cfg.master_seed, i, rep);
    PerturbedFunction pf = perturb(ctx.agent_coeffs()[i], schedule, seed);
    TruncationResult tr = smoothen_truncate(pf.perturbed, degree);
    out.eps_smooth.push_back(tr.dropped_norm);
    MembershipReport rep_m =
        check_membership(tr.truncated, ctx.agent_class(), grid);
    CoeffVector t = rep_m.pass
                        ? tr.truncated
                        : project_to_S(tr.truncated, ctx.agent_class(), grid,
                                       pcfg, active_dim);
    sum_coeffs += t.values;
    tilde.push_back(std::move(t));
  }

  if (cfg.solver == "centralized") {
    BasisFunction total(basis, sum_coeffs);
    out.x_tilde = centralized_minimize(make_objective(total), ctx.domain(),
                                       1e-9, ctx.x_star());
  } else {
    std::vector<Objective> funcs;
    funcs.reserve(cfg.n_agents);
    for (const CoeffVector& t : tilde) {
      funcs.push_back(make_objective(BasisFunction(basis, t.values)));
    }
    std::vector<std::pair<int, int>> edges =
        cfg.topology == "ring"       ? ring_edges(cfg.n_agents)
        : cfg.topology == "complete" ? complete_edges(cfg.n_agents)
                                     : path_edges(cfg.n_agents);
    Network net = metropolis_weights(cfg.n_agents, edges);
    TrajectoryRecord tr = distributed_solve(funcs, net, ctx.domain(), cfg.steps,
                                            cfg.distributed_iters);
    out.x_tilde = tr.consensus;
  }
  out.x_star = ctx.x_star();
  out.error = (out.x_tilde - out.x_star).norm();

  std::vector<double> eps_vec(cfg.n_agents, noiseless ? 1e308 : epsilon);
  std::vector<double> q_vec(cfg.n_agents, cfg.q);
  out.bound = tradeoff_bound(eps_vec, q_vec, out.eps_smooth,
                             ctx.scaled_class(), ctx.geometry());
  return out;
}

std::string SweepResult::to_csv(bool with_timestamp_header) const {
  std::ostringstream os;
  if (with_timestamp_header) {
    const auto now = std::chrono::system_clock::now();
    os << "# generated "
       << std::chrono::duration_cast<std::chrono::seconds>(
              now.time_since_epoch())
              .count()
       << "\n";
  }
  os << "epsilon,degree,rep,error,bound,runtime_ms\n";
  char buf[256];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%d,%.17g,%.17g,%.17g\n",
                  r.epsilon, r.degree, r.rep, r.error, r.bound, r.runtime_ms);
    os << buf;
  }
  return os.str();
}

SweepResult sweep(const PipelineContext& ctx) {
  const ExperimentConfig& cfg = ctx.config();
  SweepResult result;
  for (double eps : cfg.epsilon_grid) {
    for (int degree : cfg.degrees) {
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        SweepRow row;
        row.epsilon = eps;
        row.degree = degree;
        row.rep = rep;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          PipelineResult pr = run_pipeline(ctx, eps, degree, rep);
          row.error = pr.error;
          row.bound = pr.bound;
        } catch (const std::exception& e) {
          // partial failure: record and continue
          row.error = std::nan("");
          row.bound = std::nan("");
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        result.rows.push_back(row);
      }
    }
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const SweepRow& a, const SweepRow& b) {
              return std::tie(a.epsilon, a.degree, a.rep) <
                     std::tie(b.epsilon, b.degree, b.rep);
            });
  return result;
}

SweepResult baseline_sweep(const PipelineContext& ctx) {
  const ExperimentConfig& cfg = ctx.config();
  std::vector<std::pair<int, int>> edges =
      cfg.topology == "ring"       ? ring_edges(cfg.n_agents)
      : cfg.topology == "complete" ? complete_edges(cfg.n_agents)
                                   : path_edges(cfg.n_agents);
  Network net = metropolis_weights(cfg.n_agents, edges);
  std::vector<Objective> funcs;
  funcs.reserve(cfg.n_agents);
  for (const LogisticObjective& obj : ctx.agent_objectives()) {
    funcs.push_back(make_objective(obj));
  }
  StepSchedule steps{StepSchedule::Kind::kGeometric, cfg.baseline_step_c,
                     cfg.baseline_step_q};
  const double diam = (ctx.domain().upper - ctx.domain().lower).norm();
  const double ratio = cfg.baseline_step_q / cfg.baseline_noise_ratio;
  double geom_sum = 0.0;
  for (int k = 0; k < cfg.baseline_iters; ++k) geom_sum += std::pow(ratio, k);

  SweepResult result;
  for (double eps : cfg.epsilon_grid) {
    const double theta = 2.0 * diam / eps * geom_sum;
    for (int run = 0; run < cfg.baseline_runs; ++run) {
      SweepRow row;
      row.epsilon = eps;
      row.degree = 0;
      row.rep = run;
      const auto t0 = std::chrono::steady_clock::now();
      const uint64_t seed = derive_seed(cfg.master_seed, 0x62617365, run);
      // initial estimates drawn uniformly from X; a fixed start would make
      // the bias a single constant
      std::vector<Eigen::VectorXd> x0(cfg.n_agents);
      LaplaceSampler init_rng(derive_seed(seed, 1, 0));
      for (int i = 0; i < cfg.n_agents; ++i) {
        Eigen::VectorXd x(ctx.domain().dim());
        for (int c = 0; c < x.size(); ++c) {
          x[c] = ctx.domain().lower[c] +
                 (ctx.domain().upper[c] - ctx.domain().lower[c]) *
                     init_rng.uniform01();
        }
        x0[i] = x;
      }
      TrajectoryRecord tr = message_perturbing_baseline(
          funcs, net, ctx.domain(), steps, theta, cfg.baseline_noise_ratio,
          cfg.baseline_iters, seed, std::move(x0));
      row.error = (tr.consensus - ctx.x_star()).norm();
      row.bound = 0.0;
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      result.rows.push_back(row);
    }
  }
  return result;
}

ImpossibilityReport demo_impossibility(const ExperimentConfig& config) {
  Eigen::VectorXd lo(2), hi(2);
  lo << -config.r_D, -config.r_D;
  hi << config.r_D, config.r_D;
  BoxDomain X(lo, hi);
  auto quadratic = [](const Eigen::VectorXd& z) {
    return Objective{
        [z](const Eigen::VectorXd& x) { return 0.5 * (x - z).squaredNorm(); },
        [z](const Eigen::VectorXd& x) { return Eigen::VectorXd(x - z); },
        {}};
  };
  Eigen::VectorXd z_true(2), z_other(2);
  z_true << 0.0, 0.0;
  z_other << 1.0, 0.0;
  InfoSet truth{quadratic(z_true), z_true};
  InfoSet other{quadratic(z_other), z_other};
  return impossibility_demo(truth, other, X, /*noise_scale=*/0.2,
                            /*noise_decay_p=*/1.0, /*radius=*/0.2,
                            /*iters=*/1000, /*runs=*/1000,
                            config.master_seed);
}

std::string bounds_curve_csv(const ExperimentConfig& config) {
  config.validate();
  RegularityClass cls = class_params_for_logistic(config.samples_per_agent,
                                                  config.lambda, config.r_D);
  RegularityClass scaled = cls;
  scaled.alpha *= config.n_agents;
  scaled.beta *= config.n_agents;
  scaled.u_bar *= config.n_agents;
  DomainGeometry geom = box_geometry(cls.domain);
  std::ostringstream os;
  os << "epsilon,bound\n";
  char buf[128];
  std::vector<double> q_vec(config.n_agents, config.q);
  std::vector<double> es(config.n_agents, config.bound_eps_smooth);
  for (double eps : config.epsilon_grid) {
    std::vector<double> eps_vec(config.n_agents, eps);
    const double b = tradeoff_bound(eps_vec, q_vec, es, scaled, geom);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", eps, b);
    os << buf;
  }
  return os.str();
}

}  // namespace funcdp
