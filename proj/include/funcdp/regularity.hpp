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

#ifndef FUNCDP_REGULARITY_HPP
#define FUNCDP_REGULARITY_HPP

#include <string>

#include "funcdp/basis.hpp"

namespace funcdp {

/// Function class S: |grad h| <= u_bar on D and alpha I <= hess h <= beta I
/// on the interior.
struct RegularityClass {
  double alpha = 0.0;
  double beta = 0.0;
  double u_bar = 0.0;
  BoxDomain domain;

  void validate() const;
};

/// Tensor grid used to discretize the continuum Hessian/gradient constraints,
/// with a symmetric tightening margin.
struct GridSpec {
  int points_per_axis = 15;
  double margin = 0.0;

  void validate(const RegularityClass& cls) const;
};

struct ProjectionConfig {
  int max_iters = 20000;
  double primal_tol = 1e-6;
  double dual_tol = 1e-6;
  // fallback: at max_iters the best iterate is returned as long as its
  // worst relative residual stays below accept_tol
  double accept_tol = 1e-3;
  double admm_rho = 1.0;
  double over_relaxation = 1.8;
};

struct TruncationResult {
  CoeffVector truncated;
  double dropped_norm = 0.0;  // l2 norm of the zeroed tail (= L2 distance)
};

/// Zero all coefficients with multi-index degree > target_degree.
TruncationResult smoothen_truncate(const CoeffVector& f, int target_degree);

struct MembershipReport {
  bool pass = false;
  double min_hessian_eig = 0.0;
  double max_hessian_eig = 0.0;
  double max_gradient_norm = 0.0;
  Eigen::VectorXd worst_convexity_point;
  Eigen::VectorXd worst_smoothness_point;
  Eigen::VectorXd worst_gradient_point;
  double margin = 0.0;

  std::string to_json() const;
};

/// Evaluate the tightened class constraints over the tensor grid.
MembershipReport check_membership(const CoeffVector& f,
                                  const RegularityClass& cls,
                                  const GridSpec& grid);

struct ProjectionFailure : std::runtime_error {
  double primal_residual;
  double dual_residual;
  ProjectionFailure(double pr, double dr);
};

/// L2-nearest coefficient vector satisfying, at every grid point,
///   (alpha+margin) I <= hess <= (beta-margin) I  and  |grad| <= u_bar-margin,
/// by ADMM with closed-form per-point projections (symmetric eigenvalue
/// clipping, radial scaling) and a single factored normal-equation solve.
/// When active_dim >= 0 only the first active_dim coefficients are free and
/// the tail stays fixed, i.e. projection onto S intersected with that slice.
CoeffVector project_to_S(const CoeffVector& f, const RegularityClass& cls,
                         const GridSpec& grid, const ProjectionConfig& cfg,
                         int active_dim = -1);

/// Class constants for the regularized logistic objective on [-r_D, r_D]^2:
/// alpha = N_d lambda, beta = N_d lambda + N_d r_D sqrt(2) + e^{2 r_D},
/// u_bar = sqrt(2) N_d (lambda r_D + e^{2 r_D}).
RegularityClass class_params_for_logistic(int n_samples, double lambda,
                                          double r_D);

}  // namespace funcdp

#endif  // FUNCDP_REGULARITY_HPP
