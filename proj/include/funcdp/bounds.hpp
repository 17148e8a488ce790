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

#ifndef FUNCDP_BOUNDS_HPP
#define FUNCDP_BOUNDS_HPP

#include <vector>

#include "funcdp/basis.hpp"
#include "funcdp/privacy.hpp"
#include "funcdp/regularity.hpp"

namespace funcdp {

/// Geometric constants of the domain entering the argmin-Lipschitz modulus.
struct DomainGeometry {
  int d = 0;
  double r_D = 0.0;      // inradius
  double R_D = 0.0;      // circumradius about the incenter
  double d_D = 0.0;      // diameter
  double lambda_D = 0.0; // min ball fraction inside the domain

  void validate() const;
};

/// Geometry of a box: r_D = half the smallest side, R_D / d_D from the
/// half-diagonal; lambda_D is filled in from the solid-angle formula.
DomainGeometry box_geometry(const BoxDomain& box);

/// Gamma function by a 9-term Lanczos approximation (g = 7).
double lanczos_gamma(double x);

/// Solid angle of a right circular cone with half angle theta in dimension d:
/// (2 pi^{(d-1)/2} / Gamma((d-1)/2)) * int_0^theta sin^{d-2}(phi) dphi.
double solid_angle(double theta, int d);

/// lambda_D = Omega_{atan(r_D / R_D)} / Omega_d.
double lambda_D(const DomainGeometry& geom);

/// mu_{alpha,beta}(r) = alpha r^2 / (2 sqrt(alpha beta r^2
///                      + 2(beta+alpha) u_bar r + 4 u_bar^2)).
double mu(double r, double alpha, double beta, double u_bar);

/// kappa^{-1}(r) = (alpha^2 pi^{d/2} / (d 2^{d+3} Gamma(d/2))) lambda_D
///                 (r_D/d_D)^d r^4 mu^d(r).
double kappa_inv(double r, double alpha, double beta, double u_bar,
                 const DomainGeometry& geom);

/// Numerical inverse of kappa_inv: the unique r >= 0 with kappa_inv(r) = s,
/// by bracket doubling plus 200 bisection steps (log-scaled below 1e-6).
double kappa(double s, double alpha, double beta, double u_bar,
             const DomainGeometry& geom);

/// Accuracy bound
///   sum_i [ kappa_n(gamma_i sqrt(zeta(2 p_i))) + kappa_n(eps_smooth_i) ],
/// with kappa_n built from the class already scaled by n (n alpha, n beta,
/// n u_bar). The noise term uses E||eta||^2 = sum b_k^2; set
/// corrected_variance to use 2 sum b_k^2 instead.
double accuracy_bound(const std::vector<NoiseSchedule>& schedules,
                      const std::vector<double>& eps_smooth,
                      const RegularityClass& cls_scaled,
                      const DomainGeometry& geom,
                      bool corrected_variance = false);

/// Trade-off form: sum_i [ kappa_n(zeta(q_i)/eps_i) + kappa_n(eps_smooth_i) ]
/// under the p_i = q_i/2 convention.
double tradeoff_bound(const std::vector<double>& eps,
                      const std::vector<double>& q,
                      const std::vector<double>& eps_smooth,
                      const RegularityClass& cls_scaled,
                      const DomainGeometry& geom);

/// L = d(d+2)(d+4)(beta-alpha)^{d+2} Gamma(d/2) / (4 (alpha beta)^{d/2+2}
/// pi^{d/2}); the large-domain argmin bound is L ||f-g||^{2/(d+4)}.
double large_domain_L(double alpha, double beta, int d);

/// Aggregate large-domain bound (L/n^2) sum_i [ (zeta(q_i)/eps_i)^{2/(d+4)}
/// + eps_smooth_i^{2/(d+4)} ].
double large_domain_bound(const std::vector<double>& eps,
                          const std::vector<double>& q,
                          const std::vector<double>& eps_smooth, double alpha,
                          double beta, int d, int n);

/// Interiority radius for the large-domain argmin bound:
/// (beta - alpha) / (alpha + beta + 2 sqrt(alpha beta)) * r_D.
double interior_radius(double alpha, double beta, double r_D);

}  // namespace funcdp

#endif  // FUNCDP_BOUNDS_HPP
