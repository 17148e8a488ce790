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

#include "funcdp/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace funcdp {

void RegularityClass::validate() const {
  if (!(0 < alpha && alpha < beta)) {
    throw std::invalid_argument("RegularityClass: requires 0 < alpha < beta");
  }
  if (!(u_bar > 0)) {
    throw std::invalid_argument("RegularityClass: requires u_bar > 0");
  }
}

void GridSpec::validate(const RegularityClass& cls) const {
  if (points_per_axis < 2) {
    throw std::invalid_argument("GridSpec: points_per_axis >= 2");
  }
  if (!(margin >= 0 && margin < 0.5 * (cls.beta - cls.alpha))) {
    throw std::invalid_argument("GridSpec: margin must be in [0, (beta-alpha)/2)");
  }
}

TruncationResult smoothen_truncate(const CoeffVector& f, int target_degree) {
  const Basis& basis = *f.basis;
  if (target_degree > basis.max_degree) {
    throw std::invalid_argument("smoothen_truncate: target degree above basis");
  }
  TruncationResult out;
  Eigen::VectorXd v = f.values;
  double dropped2 = 0.0;
  for (int k = 0; k < basis.dim; ++k) {
    if (degree_of(basis.index_map[k]) > target_degree) {
      dropped2 += v[k] * v[k];
      v[k] = 0.0;
    }
  }
  out.truncated = CoeffVector(basis, v);
  out.dropped_norm = std::sqrt(dropped2);
  return out;
}

namespace {

std::vector<Eigen::VectorXd> tensor_grid(const BoxDomain& domain, int per_axis) {
  const int d = domain.dim();
  int total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(total);
  std::vector<int> idx(d, 0);
  for (int p = 0; p < total; ++p) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) {
      x[i] = domain.lower[i] + (domain.upper[i] - domain.lower[i]) * idx[i] /
                                   (per_axis - 1);
    }
    pts.push_back(x);
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return pts;
}

// Rows over coefficient space mapping c to, per grid point, the scaled vech
// of the Hessian (off-diagonals weighted by sqrt 2, so the Euclidean norm is
// the Frobenius norm) followed by the gradient.
struct ConstraintMap {
  Eigen::MatrixXd M;  // (npts * rows_per_point) x dim
  int npts = 0;
  int vech = 0;  // d(d+1)/2
  int d = 0;
  int rows_per_point() const { return vech + d; }
};

ConstraintMap build_constraint_map(const Basis& basis,
                                   const std::vector<Eigen::VectorXd>& pts) {
  const int d = basis.domain.dim();
  const int vech = d * (d + 1) / 2;
  const int rpp = vech + d;
  const int dim = basis.dim;
  ConstraintMap cm;
  cm.npts = static_cast<int>(pts.size());
  cm.vech = vech;
  cm.d = d;
  Eigen::MatrixXd Gmono(cm.npts * rpp, dim);
  for (int p = 0; p < cm.npts; ++p) {
    const Eigen::VectorXd& x = pts[p];
    std::vector<std::vector<double>> pw(d, std::vector<double>(basis.max_degree + 1, 1.0));
    for (int i = 0; i < d; ++i) {
      for (int e = 1; e <= basis.max_degree; ++e) pw[i][e] = pw[i][e - 1] * x[i];
    }
    for (int k = 0; k < dim; ++k) {
      const MultiIndex& a = basis.index_map[k];
      int row = p * rpp;
      for (int j1 = 0; j1 < d; ++j1) {
        for (int j2 = j1; j2 < d; ++j2, ++row) {
          double fac, weight = (j1 == j2) ? 1.0 : std::sqrt(2.0);
          if (j1 == j2) {
            if (a[j1] < 2) { Gmono(row, k) = 0; continue; }
            fac = static_cast<double>(a[j1]) * (a[j1] - 1);
          } else {
            if (a[j1] == 0 || a[j2] == 0) { Gmono(row, k) = 0; continue; }
            fac = static_cast<double>(a[j1]) * a[j2];
          }
          double t = fac * weight;
          for (int i = 0; i < d; ++i) {
            int e = a[i];
            if (i == j1) --e;
            if (i == j2) --e;
            t *= pw[i][e];
          }
          Gmono(row, k) = t;
        }
      }
      for (int j = 0; j < d; ++j, ++row) {
        if (a[j] == 0) { Gmono(row, k) = 0; continue; }
        double t = static_cast<double>(a[j]);
        for (int i = 0; i < d; ++i) t *= pw[i][i == j ? a[i] - 1 : a[i]];
        Gmono(row, k) = t;
      }
    }
  }
  cm.M = Gmono * basis.ortho_matrix.transpose();
  return cm;
}

// Clip the eigenvalues of a symmetric matrix given in scaled-vech form into
// [lo, hi]; closed form for 2x2, Eigen solver otherwise.
void clip_hessian_block(Eigen::Ref<Eigen::VectorXd> v, int d, double lo,
                        double hi) {
  if (d == 1) {
    v[0] = std::clamp(v[0], lo, hi);
    return;
  }
  if (d == 2) {
    const double a = v[0], c = v[1] / std::sqrt(2.0), b = v[2];
    const double t = 0.5 * (a + b);
    const double delta = std::hypot(0.5 * (a - b), c);
    double l1 = std::clamp(t - delta, lo, hi);
    double l2 = std::clamp(t + delta, lo, hi);
    if (delta < 1e-14 * (std::fabs(t) + 1.0)) {
      v[0] = l2;
      v[1] = 0.0;
      v[2] = l2;
      return;
    }
    // unit eigenvector for l2 = t + delta
    double vx, vy;
    if (a - b >= 0) {
      vx = 0.5 * (a - b) + delta;
      vy = c;
    } else {
      vx = c;
      vy = delta - 0.5 * (a - b);
    }
    const double nrm = std::hypot(vx, vy);
    vx /= nrm;
    vy /= nrm;
    const double na = l2 * vx * vx + l1 * vy * vy;
    const double nb = l2 * vy * vy + l1 * vx * vx;
    const double nc = (l2 - l1) * vx * vy;
    v[0] = na;
    v[1] = nc * std::sqrt(2.0);
    v[2] = nb;
    return;
  }
  Eigen::MatrixXd H(d, d);
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j, ++idx) {
      H(i, j) = (i == j) ? v[idx] : v[idx] / std::sqrt(2.0);
      H(j, i) = H(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(lo).cwiseMin(hi);
  H = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j, ++idx) {
      v[idx] = (i == j) ? H(i, i) : H(i, j) * std::sqrt(2.0);
    }
  }
}

void project_point_block(Eigen::Ref<Eigen::VectorXd> blk, int d, int vech,
                         double lo, double hi, double grad_cap) {
  clip_hessian_block(blk.head(vech), d, lo, hi);
  double gn = blk.tail(d).norm();
  if (gn > grad_cap) blk.tail(d) *= grad_cap / gn;
}

}  // namespace

MembershipReport check_membership(const CoeffVector& f,
                                  const RegularityClass& cls,
                                  const GridSpec& grid) {
  cls.validate();
  grid.validate(cls);
  const Basis& basis = *f.basis;
  BasisFunction fn(basis, f.values);
  MembershipReport rep;
  rep.margin = grid.margin;
  rep.min_hessian_eig = std::numeric_limits<double>::infinity();
  rep.max_hessian_eig = -std::numeric_limits<double>::infinity();
  rep.max_gradient_norm = 0.0;
  for (const Eigen::VectorXd& x : tensor_grid(cls.domain, grid.points_per_axis)) {
    Eigen::MatrixXd H = fn.hessian(x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double gn = fn.gradient(x).norm();
    if (lo < rep.min_hessian_eig) {
      rep.min_hessian_eig = lo;
      rep.worst_convexity_point = x;
    }
    if (hi > rep.max_hessian_eig) {
      rep.max_hessian_eig = hi;
      rep.worst_smoothness_point = x;
    }
    if (gn > rep.max_gradient_norm) {
      rep.max_gradient_norm = gn;
      rep.worst_gradient_point = x;
    }
  }
  rep.pass = rep.min_hessian_eig >= cls.alpha + grid.margin &&
             rep.max_hessian_eig <= cls.beta - grid.margin &&
             rep.max_gradient_norm <= cls.u_bar - grid.margin;
  return rep;
}

std::string MembershipReport::to_json() const {
  nlohmann::json j;
  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["pass"] = pass;
  j["margin"] = margin;
  j["convexity"] = {{"min_hessian_eig", min_hessian_eig},
                    {"worst_point", vec(worst_convexity_point)}};
  j["smoothness"] = {{"max_hessian_eig", max_hessian_eig},
                     {"worst_point", vec(worst_smoothness_point)}};
  j["gradient"] = {{"max_norm", max_gradient_norm},
                   {"worst_point", vec(worst_gradient_point)}};
  return j.dump();
}

ProjectionFailure::ProjectionFailure(double pr, double dr)
    : std::runtime_error("project_to_S: ADMM did not converge (primal " +
                         std::to_string(pr) + ", dual " + std::to_string(dr) +
                         ")"),
      primal_residual(pr),
      dual_residual(dr) {}

CoeffVector project_to_S(const CoeffVector& f, const RegularityClass& cls,
                         const GridSpec& grid, const ProjectionConfig& cfg,
                         int active_dim) {
  cls.validate();
  grid.validate(cls);
  const Basis& basis = *f.basis;
  const double lo = cls.alpha + grid.margin;
  const double hi = cls.beta - grid.margin;
  const double grad_cap = cls.u_bar - grid.margin;

  const std::vector<Eigen::VectorXd> pts =
      tensor_grid(cls.domain, grid.points_per_axis);
  ConstraintMap cm = build_constraint_map(basis, pts);
  const int rpp = cm.rows_per_point();
  const long m = cm.M.rows();
  const int n = (active_dim < 0 || active_dim > basis.dim) ? basis.dim
                                                           : active_dim;
  // contribution of the frozen tail coefficients
  Eigen::VectorXd off = Eigen::VectorXd::Zero(m);
  if (n < basis.dim) {
    off = cm.M.rightCols(basis.dim - n) * f.values.tail(basis.dim - n);
    cm.M = cm.M.leftCols(n).eval();
  }

  const Eigen::VectorXd target = f.values.head(n);
  Eigen::VectorXd c = target;
  Eigen::VectorXd s = cm.M * c + off;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);

  // feasible input: the projection is the identity
  {
    Eigen::VectorXd s0 = s;
    for (int p = 0; p < cm.npts; ++p) {
      project_point_block(s0.segment(p * rpp, rpp), cm.d, cm.vech, lo, hi,
                          grad_cap);
    }
    if ((s0 - s).norm() <= cfg.primal_tol * (1.0 + s.norm())) return f;
    s = s0;
  }

  double rho = cfg.admm_rho;
  Eigen::MatrixXd MtM = cm.M.transpose() * cm.M;
  auto factor = [&](double r) {
    Eigen::MatrixXd A = r * MtM;
    A.diagonal().array() += 1.0;
    return Eigen::LLT<Eigen::MatrixXd>(A);
  };
  Eigen::LLT<Eigen::MatrixXd> llt = factor(rho);

  auto assemble = [&](const Eigen::VectorXd& head) {
    Eigen::VectorXd full = f.values;
    full.head(n) = head;
    return CoeffVector(basis, full);
  };

  double primal = 0, dual = 0;
  double best_rel = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_c = c;
  const double orx = cfg.over_relaxation;
  for (int it = 0; it < cfg.max_iters; ++it) {
    c = llt.solve(target + rho * (cm.M.transpose() * (s - u - off)));
    Eigen::VectorXd Mc = cm.M * c + off;
    Eigen::VectorXd s_prev = s;
    Eigen::VectorXd Mc_r = orx * Mc + (1.0 - orx) * s_prev;
    s = Mc_r + u;
    for (int p = 0; p < cm.npts; ++p) {
      project_point_block(s.segment(p * rpp, rpp), cm.d, cm.vech, lo, hi,
                          grad_cap);
    }
    u += Mc_r - s;
    primal = (Mc - s).norm();
    dual = rho * (cm.M.transpose() * (s - s_prev)).norm();
    const double pscale = 1.0 + std::max(Mc.norm(), s.norm());
    const double dscale = 1.0 + (cm.M.transpose() * (rho * u)).norm();
    if (std::getenv("FUNCDP_ADMM_DEBUG") && it % 1000 == 0) {
      std::fprintf(stderr, "it=%d rho=%.3g primal=%.4g/%.4g dual=%.4g/%.4g\n",
                   it, rho, primal, cfg.primal_tol * pscale, dual,
                   cfg.dual_tol * dscale);
    }
    if (primal <= cfg.primal_tol * pscale && dual <= cfg.dual_tol * dscale) {
      return assemble(c);
    }
    const double rel = std::max(primal / pscale, dual / dscale);
    if (rel < best_rel) {
      best_rel = rel;
      best_c = c;
    }
    // residual balancing, throttled so refactorization stays cheap
    if (it % 25 != 24) continue;
    if (primal > 10.0 * dual) {
      rho *= 2.0;
      u *= 0.5;
      llt = factor(rho);
    } else if (dual > 10.0 * primal) {
      rho *= 0.5;
      u *= 2.0;
      llt = factor(rho);
    }
  }
  if (best_rel <= cfg.accept_tol) return assemble(best_c);
  throw ProjectionFailure(primal, dual);
}

RegularityClass class_params_for_logistic(int n_samples, double lambda,
                                          double r_D) {
  if (n_samples <= 0 || !(lambda > 0) || !(r_D > 0)) {
    throw std::invalid_argument("class_params_for_logistic: positive inputs");
  }
  const double nd = static_cast<double>(n_samples);
  RegularityClass cls;
  cls.alpha = nd * lambda;
  cls.beta = nd * lambda + nd * r_D * std::sqrt(2.0) + std::exp(2.0 * r_D);
  cls.u_bar = std::sqrt(2.0) * nd * (lambda * r_D + std::exp(2.0 * r_D));
  Eigen::VectorXd lo(2), hi(2);
  lo << -r_D, -r_D;
  hi << r_D, r_D;
  cls.domain = BoxDomain(lo, hi);
  return cls;
}

}  // namespace funcdp
