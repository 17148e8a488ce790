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

#include "funcdp/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace funcdp {

namespace {
constexpr double kPi = std::numbers::pi;
}

void DomainGeometry::validate() const {
  if (d < 1 || !(0 < r_D && r_D <= R_D && R_D <= d_D)) {
    throw std::invalid_argument("DomainGeometry: requires 0 < r_D <= R_D <= d_D");
  }
  if (!(lambda_D > 0 && lambda_D < 1)) {
    throw std::invalid_argument("DomainGeometry: lambda_D in (0,1)");
  }
}

double lanczos_gamma(double x) {
  // g = 7, 9 coefficients
  static const double kCoef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = kCoef[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double solid_angle(double theta, int d) {
  if (d < 2) throw std::domain_error("solid_angle: requires d >= 2");
  if (theta < 0 || theta > kPi) {
    throw std::domain_error("solid_angle: theta in [0, pi]");
  }
  if (d == 2) return 2.0 * theta;  // sin^0 = 1 and the prefactor is 2
  const double prefactor =
      2.0 * std::pow(kPi, 0.5 * (d - 1)) / lanczos_gamma(0.5 * (d - 1));
  auto integrand = [d](double phi) { return std::pow(std::sin(phi), d - 2); };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, 0.0, theta, 10, 1e-12);
  return prefactor * integral;
}

DomainGeometry box_geometry(const BoxDomain& box) {
  DomainGeometry g;
  g.d = box.dim();
  Eigen::VectorXd half = 0.5 * (box.upper - box.lower);
  g.r_D = half.minCoeff();
  g.R_D = half.norm();
  g.d_D = 2.0 * g.R_D;
  g.lambda_D = 0.0;
  g.lambda_D = lambda_D(g);
  return g;
}

double lambda_D(const DomainGeometry& geom) {
  if (geom.d < 2 || !(geom.r_D > 0) || !(geom.R_D >= geom.r_D)) {
    throw std::invalid_argument("lambda_D: invalid geometry");
  }
  const double theta = std::atan(geom.r_D / geom.R_D);
  // Omega_d = 2 pi^{d/2} / Gamma(d/2); for d = 2 this is the full angle 2 pi
  const double omega_d =
      2.0 * std::pow(kPi, 0.5 * geom.d) / lanczos_gamma(0.5 * geom.d);
  return solid_angle(theta, geom.d) / omega_d;
}

double mu(double r, double alpha, double beta, double u_bar) {
  if (r < 0) throw std::invalid_argument("mu: r >= 0");
  if (r == 0) return 0.0;
  return alpha * r * r /
         (2.0 * std::sqrt(alpha * beta * r * r +
                          2.0 * (beta + alpha) * u_bar * r +
                          4.0 * u_bar * u_bar));
}

double kappa_inv(double r, double alpha, double beta, double u_bar,
                 const DomainGeometry& geom) {
  if (r < 0) throw std::invalid_argument("kappa_inv: r >= 0");
  const int d = geom.d;
  const double prefactor =
      alpha * alpha * std::pow(kPi, 0.5 * d) /
      (d * std::pow(2.0, d + 3) * lanczos_gamma(0.5 * d));
  return prefactor * geom.lambda_D * std::pow(geom.r_D / geom.d_D, d) *
         std::pow(r, 4) * std::pow(mu(r, alpha, beta, u_bar), d);
}

double kappa(double s, double alpha, double beta, double u_bar,
             const DomainGeometry& geom) {
  if (s < 0) throw std::invalid_argument("kappa: s >= 0");
  if (s == 0) return 0.0;
  double hi = 1.0;
  while (kappa_inv(hi, alpha, beta, u_bar, geom) < s) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("kappa: bracket overflow");
  }
  double lo = 0.0;
  // bisect on r; switch to log scale once the bracket is tiny
  for (int it = 0; it < 200; ++it) {
    double mid;
    if (hi < 1e-6 && lo > 0) {
      mid = std::sqrt(lo * hi);  // geometric mean = bisection in log r
    } else {
      mid = 0.5 * (lo + hi);
    }
    if (kappa_inv(mid, alpha, beta, u_bar, geom) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double accuracy_bound(const std::vector<NoiseSchedule>& schedules,
                      const std::vector<double>& eps_smooth,
                      const RegularityClass& cls_scaled,
                      const DomainGeometry& geom, bool corrected_variance) {
  if (schedules.size() != eps_smooth.size()) {
    throw std::invalid_argument("accuracy_bound: size mismatch");
  }
  cls_scaled.validate();
  const double a = cls_scaled.alpha, b = cls_scaled.beta, u = cls_scaled.u_bar;
  double total = 0.0;
  for (size_t i = 0; i < schedules.size(); ++i) {
    double noise_arg = 0.0;
    if (!schedules[i].degenerate()) {
      if (!(schedules[i].p > 0.5)) {
        throw std::domain_error("accuracy_bound: requires p > 1/2");
      }
      noise_arg = schedules[i].gamma * std::sqrt(zeta(2.0 * schedules[i].p));
      if (corrected_variance) noise_arg *= std::sqrt(2.0);
    }
    total += kappa(noise_arg, a, b, u, geom) +
             kappa(eps_smooth[i], a, b, u, geom);
  }
  return total;
}

double tradeoff_bound(const std::vector<double>& eps,
                      const std::vector<double>& q,
                      const std::vector<double>& eps_smooth,
                      const RegularityClass& cls_scaled,
                      const DomainGeometry& geom) {
  if (eps.size() != q.size() || eps.size() != eps_smooth.size()) {
    throw std::invalid_argument("tradeoff_bound: size mismatch");
  }
  cls_scaled.validate();
  const double a = cls_scaled.alpha, b = cls_scaled.beta, u = cls_scaled.u_bar;
  double total = 0.0;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (!(q[i] > 1.0)) throw std::domain_error("tradeoff_bound: q > 1");
    if (!(eps[i] > 0)) throw std::domain_error("tradeoff_bound: eps > 0");
    total += kappa(zeta(q[i]) / eps[i], a, b, u, geom) +
             kappa(eps_smooth[i], a, b, u, geom);
  }
  return total;
}

double large_domain_L(double alpha, double beta, int d) {
  if (!(alpha < beta)) throw std::domain_error("large_domain_L: alpha < beta");
  return d * (d + 2.0) * (d + 4.0) * std::pow(beta - alpha, d + 2) *
         lanczos_gamma(0.5 * d) /
         (4.0 * std::pow(alpha * beta, 0.5 * d + 2.0) * std::pow(kPi, 0.5 * d));
}

double large_domain_bound(const std::vector<double>& eps,
                          const std::vector<double>& q,
                          const std::vector<double>& eps_smooth, double alpha,
                          double beta, int d, int n) {
  const double L = large_domain_L(alpha, beta, d);
  const double e = 2.0 / (d + 4.0);
  double sum = 0.0;
  for (size_t i = 0; i < eps.size(); ++i) {
    sum += std::pow(zeta(q[i]) / eps[i], e) + std::pow(eps_smooth[i], e);
  }
  return L / (static_cast<double>(n) * n) * sum;
}

double interior_radius(double alpha, double beta, double r_D) {
  return (beta - alpha) / (alpha + beta + 2.0 * std::sqrt(alpha * beta)) * r_D;
}

}  // namespace funcdp
