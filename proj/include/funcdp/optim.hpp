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

#ifndef FUNCDP_OPTIM_HPP
#define FUNCDP_OPTIM_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "funcdp/basis.hpp"

namespace funcdp {

struct LabeledSample {
  Eigen::Vector2d a;
  int b = 1;  // +1 or -1
};

/// Regularized logistic classification objective
///   sum_i [ ln(1 + e^{-b_i a_i^T x}) + (lambda/2)|x|^2 ].
/// The regularizer is summed per sample.
struct LogisticObjective {
  std::vector<LabeledSample> samples;
  double lambda = 0.0;

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
};

/// Weighted communication graph with doubly stochastic weights.
struct Network {
  int n = 0;
  Eigen::MatrixXd weights;
  std::vector<std::pair<int, int>> edges;  // undirected, i < j
};

std::vector<std::pair<int, int>> ring_edges(int n);
std::vector<std::pair<int, int>> complete_edges(int n);
std::vector<std::pair<int, int>> path_edges(int n);

/// Metropolis weights a_ij = 1/(1 + max(deg_i, deg_j)) on edges, diagonal
/// absorbing the remainder. Throws on disconnected graphs.
Network metropolis_weights(int n, const std::vector<std::pair<int, int>>& edges);

struct StepSchedule {
  enum class Kind { kHarmonic, kGeometric } kind = Kind::kHarmonic;
  double c = 1e-3;
  double q = 0.1;  // geometric ratio, in (0,1)

  double alpha(int k) const;  // k >= 1
};

struct TrajectoryRecord {
  int iterations = 0;
  int record_every = 1;
  // snapshots[s][i] is agent i's estimate at iteration s * record_every
  std::vector<std::vector<Eigen::VectorXd>> snapshots;
  std::vector<Eigen::VectorXd> final_states;
  Eigen::VectorXd consensus;  // mean of final agent states

  std::string to_csv() const;  // iteration,agent,x1,x2
};

/// Scalar objective with gradient, as consumed by the solvers.
struct Objective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  // optional; enables the Newton polishing phase of centralized_minimize
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
};

Objective make_objective(const LogisticObjective& obj);
Objective make_objective(const BasisFunction& fn);

/// Projected gradient descent with backtracking line search, followed by a
/// projected Newton polish when a Hessian is available; stops when
/// || x - proj_X(x - grad f(x)) || <= tol.
Eigen::VectorXd centralized_minimize(const Objective& f, const BoxDomain& X,
                                     double tol = 1e-10,
                                     Eigen::VectorXd x0 = Eigen::VectorXd());

/// Synchronous distributed projected gradient (consensus + local step),
///   z_i(k) = sum_j a_ij x_j(k),  x_i(k+1) = proj_X(z_i(k) - alpha_k grad
///   f_i(z_i(k))).
/// Noise-free.
TrajectoryRecord distributed_solve(const std::vector<Objective>& funcs,
                                   const Network& net, const BoxDomain& X,
                                   const StepSchedule& steps, int iters,
                                   std::vector<Eigen::VectorXd> x0 = {},
                                   int record_every = 0);

/// Message-perturbing baseline: neighbors receive xi_j(k) = x_j(k) +
/// eta_j(k), eta per coordinate Laplace with scale theta * noise_ratio^{k-1}.
TrajectoryRecord message_perturbing_baseline(
    const std::vector<Objective>& funcs, const Network& net, const BoxDomain& X,
    const StepSchedule& steps, double theta, double noise_ratio, int iters,
    uint64_t seed, std::vector<Eigen::VectorXd> x0 = {}, int record_every = 0);

struct InfoSet {
  Objective objective;
  Eigen::VectorXd optimizer;
};

struct ImpossibilityReport {
  double freq_true = 0.0;   // trajectories settling in B(x*_I, radius)
  double freq_other = 0.0;  // trajectories settling in B(x*_I', radius)
  int runs = 0;
};

/// Monte-Carlo demonstration: an asymptotically stable message-perturbed
/// update with decaying noise, initialized at the true optimizer, settles in
/// the true optimizer's ball with positive frequency and in the other
/// information set's ball with frequency ~0.
ImpossibilityReport impossibility_demo(const InfoSet& truth,
                                       const InfoSet& other,
                                       const BoxDomain& X, double noise_scale,
                                       double noise_decay_p, double radius,
                                       int iters, int runs, uint64_t seed);

}  // namespace funcdp

#endif  // FUNCDP_OPTIM_HPP
