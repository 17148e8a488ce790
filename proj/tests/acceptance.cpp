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
//
// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL]
// line; the exit status is the number of failed criteria. With no
// arguments all ten run; otherwise the arguments select criteria by
// number (the experiment sweeps behind 7 and 8 take a couple of hours).

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "funcdp/harness.hpp"

using namespace funcdp;

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  return buf;
}

BoxDomain make_box(double half, int d = 2) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, -half);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, half);
  return BoxDomain(lo, hi);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// criterion 1: orthonormality of the reference basis by independent quadrature

bool crit1(std::string& detail) {
  Basis basis = build_basis(make_box(5.0), 14);
  QuadratureRule quad = tensor_quadrature(basis.domain, 20);
  const int npts = static_cast<int>(quad.weights.size());
  Eigen::MatrixXd E(npts, basis.dim);
  for (int k = 0; k < basis.dim; ++k) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(basis.dim);
    unit(k) = 1.0;
    BasisFunction ek(basis, unit);
    for (int p = 0; p < npts; ++p) {
      const Eigen::VectorXd xp = quad.points.row(p).transpose();
      E(p, k) = ek.value(xp);
    }
  }
  Eigen::MatrixXd gram = E.transpose() * quad.weights.asDiagonal() * E;
  const double gram_err =
      (gram - Eigen::MatrixXd::Identity(basis.dim, basis.dim))
          .cwiseAbs()
          .maxCoeff();

  double parseval_err = 0.0;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd c(basis.dim);
    for (int k = 0; k < basis.dim; ++k) c(k) = gauss(rng);
    const double quad_norm = std::sqrt(c.dot(gram * c));
    parseval_err =
        std::max(parseval_err, std::abs(quad_norm - c.norm()) / c.norm());
  }
  detail = format("max |Gram - I| = %.2e (tol 1e-8), Parseval rel err = %.2e "
                  "(tol 1e-9)",
                  gram_err, parseval_err);
  return gram_err < 1e-8 && parseval_err < 1e-9;
}

// ---------------------------------------------------------------------------
// criterion 2: privacy calculus round trip, zeta spot values, Holder bound

bool crit2(std::string& detail) {
  const double pi = std::acos(-1.0);
  double round_err = 0.0;
  for (double eps : {0.01, 1.0, 50.0, 1000.0}) {
    for (double p : {0.51, 0.55, 0.59}) {
      NoiseSchedule s = gamma_for(eps, p, 1.1);
      round_err = std::max(round_err,
                           std::abs(epsilon_of(s, 1.1) - eps) / eps);
    }
  }
  const double z2 = std::abs(zeta(2.0) - pi * pi / 6.0);
  const double z4 = std::abs(zeta(4.0) - pi * pi * pi * pi / 90.0);

  // sum_k |delta_k| / b_k <= epsilon * vq_norm(delta)
  const double q = 1.1, p = 0.55;
  NoiseSchedule sch{0.7, p};
  const double eps = epsilon_of(sch, q);
  int violations = 0;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = 60;
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd delta(dim);
    for (int k = 0; k < dim; ++k) {
      delta(k) = gauss(rng) / std::pow(k + 1.0, 1.6);
    }
    double lhs = 0.0;
    for (int k = 0; k < dim; ++k) {
      lhs += std::abs(delta(k)) / sch.scale(k + 1);
    }
    if (lhs > eps * vq_norm(delta, q) * (1.0 + 1e-12)) ++violations;
  }
  detail = format("round trip %.1e (tol 1e-12), zeta(2) %.1e, zeta(4) %.1e "
                  "(tol 1e-10), Holder violations %d/1000",
                  round_err, z2, z4, violations);
  return round_err < 1e-12 && z2 < 1e-10 && z4 < 1e-10 && violations == 0;
}

// ---------------------------------------------------------------------------
// criterion 3: histogram likelihood-ratio test of the privacy guarantee

bool crit3(std::string& detail) {
  const double q = 1.1, p = 0.55;
  NoiseSchedule sch = gamma_for(2.0, p, q);
  const double eps = 2.0;
  const int draws = 100000, nbins = 40;
  // adjacent pairs: the shift lives on one coordinate, with total V_q norm t
  struct Pair {
    int k0;
    double t;
  };
  const Pair pairs[5] = {{1, 0.1}, {3, 0.1}, {2, 1.0}, {5, 1.0}, {1, 10.0}};
  int bad_bins = 0;
  double worst_ratio = 0.0;
  for (const Pair& pr : pairs) {
    const double delta_k = pr.t / std::pow(pr.k0, q);  // vq norm = t
    const double b = sch.scale(pr.k0);
    LaplaceSampler s1(derive_seed(301, pr.k0, 1));
    LaplaceSampler s2(derive_seed(301, pr.k0, 2));
    const double lo = -6.0 * b, hi = delta_k + 6.0 * b;
    std::vector<long> h1(nbins, 0), h2(nbins, 0);
    for (int i = 0; i < draws; ++i) {
      const double y1 = s1.draw(b);
      const double y2 = delta_k + s2.draw(b);
      const int b1 = std::clamp(
          static_cast<int>((y1 - lo) / (hi - lo) * nbins), 0, nbins - 1);
      const int b2 = std::clamp(
          static_cast<int>((y2 - lo) / (hi - lo) * nbins), 0, nbins - 1);
      ++h1[b1];
      ++h2[b2];
    }
    const double cap = std::exp(eps * pr.t);
    for (int i = 0; i < nbins; ++i) {
      if (h1[i] < 20 || h2[i] < 20) continue;  // too sparse for the slack
      const double slack =
          1.0 + 3.0 * std::sqrt(1.0 / h1[i] + 1.0 / h2[i]);
      const double r = static_cast<double>(std::max(h1[i], h2[i])) /
                       static_cast<double>(std::min(h1[i], h2[i]));
      worst_ratio = std::max(worst_ratio, r / (cap * slack));
      if (r > cap * slack) ++bad_bins;
    }
  }
  detail = format("5 pairs x %d draws, violating bins %d, worst ratio/cap "
                  "%.3f (must be <= 1)",
                  draws, bad_bins, worst_ratio);
  return bad_bins == 0;
}

// ---------------------------------------------------------------------------
// criterion 4: boundedness probability formula vs Monte-Carlo

bool crit4(std::string& detail) {
  const int K = 40, runs = 100000;
  struct Setting {
    double r;
    double c;
    double expo;
  };
  const Setting settings[2] = {{1.0, 0.5, 1.2}, {0.6, 0.35, 1.5}};
  double worst = 0.0;
  for (const Setting& st : settings) {
    auto b = [&](int k) { return st.c / std::pow(k, st.expo); };
    for (NoiseFamily fam : {NoiseFamily::kLaplace, NoiseFamily::kGaussian}) {
      const double formula = boundedness_probability(st.r, b, K, fam);
      std::mt19937_64 rng(fam == NoiseFamily::kLaplace ? 71 : 72);
      std::uniform_real_distribution<double> unif(-0.5, 0.5);
      std::normal_distribution<double> gauss(0.0, 1.0);
      long hits = 0;
      for (int run = 0; run < runs; ++run) {
        bool inside = true;
        for (int k = 1; k <= K && inside; ++k) {
          double x;
          if (fam == NoiseFamily::kLaplace) {
            const double u = unif(rng);
            x = -b(k) * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
          } else {
            x = std::sqrt(b(k)) * gauss(rng);  // b(k) is the variance
          }
          inside = std::abs(x) <= st.r;
        }
        if (inside) ++hits;
      }
      const double mc = static_cast<double>(hits) / runs;
      worst = std::max(worst, std::abs(mc - formula));
    }
  }
  detail = format("max |MC - formula| = %.4f over 2 settings x 2 families "
                  "(tol 0.01)",
                  worst);
  return worst < 0.01;
}

// ---------------------------------------------------------------------------
// criterion 5: projection onto S (feasible, idempotent, non-expansive, and
// matching an interior-point oracle on a dim-6 instance)

struct SmallProjSetting {
  Basis basis = build_basis(make_box(1.0), 2);
  RegularityClass cls{1.0, 10.0, 50.0, make_box(1.0)};
  GridSpec grid{7, 1e-3};
  ProjectionConfig cfg{200000, 1e-10, 1e-10, 1e-3, 1.0, 1.8};
};

// independent interior-point oracle for the projection: central path with
// self-concordant log-det barriers (H - lo I > 0, hi I - H > 0,
// cap^2 - |grad|^2 > 0) and damped Newton steps with exact derivatives.
// The barriers stay smooth even when the curvature bound is active with a
// repeated eigenvalue.
Eigen::VectorXd oracle_project(const SmallProjSetting& s,
                               const Eigen::VectorXd& target) {
  const int dim = s.basis.dim;
  std::vector<Eigen::VectorXd> pts;
  const int ppa = s.grid.points_per_axis;
  for (int i = 0; i < ppa; ++i) {
    for (int j = 0; j < ppa; ++j) {
      Eigen::VectorXd x(2);
      x << -1.0 + 2.0 * i / (ppa - 1), -1.0 + 2.0 * j / (ppa - 1);
      pts.push_back(x);
    }
  }
  std::vector<std::vector<Eigen::Matrix2d>> Hk(pts.size());
  std::vector<std::vector<Eigen::Vector2d>> gk(pts.size());
  for (size_t p = 0; p < pts.size(); ++p) {
    Hk[p].resize(dim);
    gk[p].resize(dim);
  }
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
    unit(k) = 1.0;
    BasisFunction fn(s.basis, unit);
    for (size_t p = 0; p < pts.size(); ++p) {
      Hk[p][k] = fn.hessian(pts[p]);
      gk[p][k] = fn.gradient(pts[p]);
    }
  }
  const double lo = s.cls.alpha + s.grid.margin;
  const double hi = s.cls.beta - s.grid.margin;
  const double cap = s.cls.u_bar - s.grid.margin;
  const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
  auto phi = [&](const Eigen::VectorXd& c) -> double {
    double total = 0.0;
    for (size_t p = 0; p < pts.size(); ++p) {
      Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
      Eigen::Vector2d gr = Eigen::Vector2d::Zero();
      for (int k = 0; k < dim; ++k) {
        H += c(k) * Hk[p][k];
        gr += c(k) * gk[p][k];
      }
      const Eigen::Matrix2d M1 = H - lo * I2;
      const Eigen::Matrix2d M2 = hi * I2 - H;
      const double d1 = M1.determinant();
      const double d2 = M2.determinant();
      const double u3 = cap * cap - gr.squaredNorm();
      if (M1(0, 0) <= 0 || d1 <= 0 || M2(0, 0) <= 0 || d2 <= 0 || u3 <= 0) {
        return std::numeric_limits<double>::infinity();
      }
      total -= std::log(d1) + std::log(d2) + std::log(u3);
    }
    return total;
  };
  // strictly feasible start: the mid-curvature bowl
  const double mid = 0.5 * (s.cls.alpha + s.cls.beta);
  auto bowl = [mid](const Eigen::VectorXd& x) {
    return 0.5 * mid * x.squaredNorm();
  };
  Eigen::VectorXd c = analyze(s.basis, bowl).values;
  for (double t = 1.0; t <= 1.01e11; t *= 10.0) {
    for (int step = 0; step < 100; ++step) {
      Eigen::VectorXd grad = 2.0 * t * (c - target);
      Eigen::MatrixXd hess = 2.0 * t * Eigen::MatrixXd::Identity(dim, dim);
      bool infeasible = false;
      for (size_t p = 0; p < pts.size(); ++p) {
        Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
        Eigen::Vector2d gr = Eigen::Vector2d::Zero();
        for (int k = 0; k < dim; ++k) {
          H += c(k) * Hk[p][k];
          gr += c(k) * gk[p][k];
        }
        const Eigen::Matrix2d M1 = H - lo * I2;
        const Eigen::Matrix2d M2 = hi * I2 - H;
        const double u3 = cap * cap - gr.squaredNorm();
        if (M1.determinant() <= 0 || M2.determinant() <= 0 || u3 <= 0) {
          infeasible = true;
          break;
        }
        const Eigen::Matrix2d M1i = M1.inverse();
        const Eigen::Matrix2d M2i = M2.inverse();
        std::vector<Eigen::Matrix2d> A1(dim), A2(dim);
        Eigen::VectorXd v(dim);
        for (int k = 0; k < dim; ++k) {
          A1[k] = M1i * Hk[p][k];
          A2[k] = M2i * Hk[p][k];
          v(k) = 2.0 * gr.dot(gk[p][k]);
          grad(k) += -A1[k].trace() + A2[k].trace() + v(k) / u3;
        }
        for (int j = 0; j < dim; ++j) {
          for (int k = j; k < dim; ++k) {
            const double hjk = (A1[j] * A1[k]).trace() +
                               (A2[j] * A2[k]).trace() +
                               v(j) * v(k) / (u3 * u3) +
                               2.0 * gk[p][j].dot(gk[p][k]) / u3;
            hess(j, k) += hjk;
            if (k > j) hess(k, j) += hjk;
          }
        }
      }
      if (infeasible) break;
      Eigen::VectorXd dx = hess.ldlt().solve(grad);
      const double f0 = t * (c - target).squaredNorm() + phi(c);
      double damp = 1.0;
      Eigen::VectorXd cn = c - dx;
      while (damp > 1e-14 &&
             !(t * (cn - target).squaredNorm() + phi(cn) < f0)) {
        damp *= 0.5;
        cn = c - damp * dx;
      }
      if (damp <= 1e-14) break;
      c = cn;
      if ((damp * dx).norm() < 1e-12) break;
    }
  }
  return c;
}

bool crit5(std::string& detail) {
  SmallProjSetting s;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_target = [&]() {
    // a quadratic bowl pushed outside S by noise
    auto bowl = [](const Eigen::VectorXd& x) {
      return 3.0 * x.squaredNorm();
    };
    CoeffVector cv = analyze(s.basis, bowl);
    for (int k = 0; k < s.basis.dim; ++k) cv.values(k) += 2.0 * gauss(rng);
    return cv;
  };

  double worst_feas = 0.0, worst_idem = 0.0, worst_oracle = 0.0;
  int expansive = 0;
  std::vector<CoeffVector> projected;
  for (int trial = 0; trial < 10; ++trial) {
    CoeffVector f = random_target();
    CoeffVector pf = project_to_S(f, s.cls, s.grid, s.cfg);
    MembershipReport rep = check_membership(pf, s.cls, s.grid);
    const double feas = std::max(
        {s.cls.alpha - rep.min_hessian_eig, rep.max_hessian_eig - s.cls.beta,
         rep.max_gradient_norm - s.cls.u_bar});
    worst_feas = std::max(worst_feas, feas);
    CoeffVector pf2 = project_to_S(pf, s.cls, s.grid, s.cfg);
    worst_idem = std::max(worst_idem, (pf2.values - pf.values).norm());
    projected.push_back(pf);
    if (trial < 3) {
      Eigen::VectorXd oc = oracle_project(s, f.values);
      worst_oracle = std::max(worst_oracle, (oc - pf.values).norm());
    }
  }
  // non-expansiveness on 100 random pairs
  for (int pair = 0; pair < 100; ++pair) {
    CoeffVector f = random_target();
    CoeffVector g = random_target();
    CoeffVector pf = project_to_S(f, s.cls, s.grid, s.cfg);
    CoeffVector pg = project_to_S(g, s.cls, s.grid, s.cfg);
    if ((pf.values - pg.values).norm() >
        (f.values - g.values).norm() + 1e-8) {
      ++expansive;
    }
  }
  detail = format("feasibility slack %.2e (<= 0 required), idempotence %.2e "
                  "(tol 1e-6), expansive pairs %d/100, oracle gap %.2e "
                  "(tol 1e-3)",
                  worst_feas, worst_idem, expansive, worst_oracle);
  return worst_feas <= 0.0 && worst_idem < 1e-6 && expansive == 0 &&
         worst_oracle < 1e-3;
}

// ---------------------------------------------------------------------------
// criterion 6: exact recovery with zero noise and polynomial objectives in S

bool crit6(std::string& detail) {
  BoxDomain X = make_box(1.0);
  Basis basis = build_basis(X, 4);
  RegularityClass cls{1.0, 10.0, 50.0, X};
  GridSpec grid{9, 1e-4};
  const int n = 5;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> curv(2.0, 8.0), center(-0.3, 0.3);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(basis.dim);
  double csum = 0.0;
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(2);
  for (int i = 0; i < n; ++i) {
    const double c = curv(rng);
    Eigen::VectorXd z(2);
    z << center(rng), center(rng);
    csum += c;
    weighted += c * z;
    auto quad = [&](const Eigen::VectorXd& x) {
      return 0.5 * c * (x - z).squaredNorm();
    };
    CoeffVector cv = analyze(basis, quad);
    NoiseSchedule degenerate{0.0, 0.55};
    PerturbedFunction pf = perturb(cv, degenerate, derive_seed(1, i, 0));
    TruncationResult tr = smoothen_truncate(pf.perturbed, 4);
    MembershipReport rep = check_membership(tr.truncated, cls, grid);
    if (!rep.pass) {
      detail = "a noiseless polynomial member of S failed the membership check";
      return false;
    }
    total += tr.truncated.values;
  }
  Eigen::VectorXd x_tilde = centralized_minimize(
      make_objective(BasisFunction(basis, total)), X, 1e-10);
  const Eigen::VectorXd x_star = weighted / csum;  // interior by construction
  const double err = (x_tilde - x_star).norm();
  detail = format("|x_tilde - x_star| = %.2e (tol 1e-5)", err);
  return err < 1e-5;
}

// ---------------------------------------------------------------------------
// criteria 7 and 8: the experiment sweeps

struct CellStats {
  std::vector<double> errors;
  double mean_bound = 0.0;
};

// per degree: epsilon -> stats
std::map<int, std::map<double, CellStats>> group_rows(const SweepResult& res) {
  std::map<int, std::map<double, CellStats>> by_degree;
  for (const SweepRow& row : res.rows) {
    CellStats& cs = by_degree[row.degree][row.epsilon];
    cs.errors.push_back(row.error);
    cs.mean_bound += row.bound;
  }
  for (auto& [deg, cells] : by_degree) {
    for (auto& [eps, cs] : cells) cs.mean_bound /= cs.errors.size();
  }
  return by_degree;
}

double bootstrap_upper(const std::vector<double>& sample, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, sample.size() - 1);
  std::vector<double> medians(2000);
  std::vector<double> resample(sample.size());
  for (double& m : medians) {
    for (double& x : resample) x = sample[pick(rng)];
    m = median(resample);
  }
  std::sort(medians.begin(), medians.end());
  return medians[static_cast<size_t>(0.975 * (medians.size() - 1))];
}

bool crit7(std::string& detail) {
  ExperimentConfig cfg;  // full default sweep
  cfg.epsilon_grid = default_epsilon_grid();
  PipelineContext ctx(cfg);
  SweepResult res = sweep(ctx);
  auto by_degree = group_rows(res);
  std::mt19937_64 rng(61);

  bool finite = true, mean_ok = true, mono_ok = true;
  std::map<int, double> plateau;
  for (auto& [deg, cells] : by_degree) {
    std::vector<double> eps_sorted, medians, uppers;
    std::vector<double> plateau_errors;
    for (auto& [eps, cs] : cells) {
      for (double e : cs.errors) finite = finite && std::isfinite(e);
      if (!finite) break;
      eps_sorted.push_back(eps);
      medians.push_back(median(cs.errors));
      uppers.push_back(bootstrap_upper(cs.errors, rng));
      double mean = 0.0;
      for (double e : cs.errors) mean += e;
      mean /= cs.errors.size();
      if (mean > cs.mean_bound) mean_ok = false;
      if (eps >= 100.0) {
        plateau_errors.insert(plateau_errors.end(), cs.errors.begin(),
                              cs.errors.end());
      }
    }
    if (!finite) break;
    plateau[deg] = median(plateau_errors);
    // monotone medians, within the bootstrap band, until the plateau level
    // is reached
    for (size_t j = 0; j + 1 < medians.size(); ++j) {
      if (medians[j] <= 1.05 * plateau[deg]) break;
      if (medians[j + 1] > uppers[j]) mono_ok = false;
    }
  }
  if (!finite) {
    detail = "sweep produced non-finite errors";
    return false;
  }
  const bool order_ok = plateau[14] < plateau[6] && plateau[6] < plateau[4];
  detail = format("plateaus deg14 %.2e < deg6 %.2e < deg4 %.2e: %s; medians "
                  "monotone within band: %s; per-eps mean <= bound: %s",
                  plateau[14], plateau[6], plateau[4],
                  order_ok ? "yes" : "NO", mono_ok ? "yes" : "NO",
                  mean_ok ? "yes" : "NO");
  return order_ok && mono_ok && mean_ok;
}

bool crit8(std::string& detail) {
  ExperimentConfig cfg;
  cfg.epsilon_grid = default_epsilon_grid();
  PipelineContext ctx(cfg);
  SweepResult res = baseline_sweep(ctx);
  auto by_degree = group_rows(res);
  if (by_degree.size() != 1) {
    detail = "unexpected baseline grouping";
    return false;
  }
  auto& cells = by_degree.begin()->second;
  // least squares of log(mean error) on log(eps)
  std::vector<double> lx, ly;
  double overall = 0.0;
  long count = 0;
  for (auto& [eps, cs] : cells) {
    double mean = 0.0;
    for (double e : cs.errors) mean += e;
    mean /= cs.errors.size();
    overall += mean * cs.errors.size();
    count += cs.errors.size();
    lx.push_back(std::log(eps));
    ly.push_back(std::log(mean));
  }
  overall /= count;
  const size_t m = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  detail = format("|slope| = %.4f (tol 0.1), mean error = %.3f (required "
                  "within [2.5, 10], i.e. 0.5-2x the half-width 5)",
                  std::abs(slope), overall);
  return std::abs(slope) < 0.1 && overall >= 2.5 && overall <= 10.0;
}

// ---------------------------------------------------------------------------
// criterion 9: kappa-Lipschitz argmin over random members of S

bool crit9(std::string& detail) {
  SmallProjSetting s;
  DomainGeometry geom = box_geometry(s.cls.domain);
  std::mt19937_64 rng(91);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_member = [&]() {
    auto bowl = [](const Eigen::VectorXd& x) {
      return 3.0 * x.squaredNorm();
    };
    CoeffVector cv = analyze(s.basis, bowl);
    for (int k = 0; k < s.basis.dim; ++k) cv.values(k) += 1.5 * gauss(rng);
    return project_to_S(cv, s.cls, s.grid, s.cfg);
  };

  const double L = large_domain_L(s.cls.alpha, s.cls.beta, 2);
  const double pi = std::acos(-1.0);
  const double spot = large_domain_L(1.0, 2.0, 2);
  const double spot_expect = 3.0 / (2.0 * pi);  // closed form at d=2
  const double r_int = interior_radius(s.cls.alpha, s.cls.beta, 1.0);

  int kappa_violations = 0, ld_checked = 0, ld_violations = 0, ld_tighter = 0;
  for (int pair = 0; pair < 100; ++pair) {
    CoeffVector f = random_member();
    CoeffVector g = random_member();
    Eigen::VectorXd xf = centralized_minimize(
        make_objective(BasisFunction(s.basis, f.values)), s.cls.domain, 1e-10);
    Eigen::VectorXd xg = centralized_minimize(
        make_objective(BasisFunction(s.basis, g.values)), s.cls.domain, 1e-10);
    const double dist = (f.values - g.values).norm();
    const double gap = (xf - xg).norm();
    const double kb = kappa(dist, s.cls.alpha, s.cls.beta, s.cls.u_bar, geom);
    if (gap > kb + 1e-6) ++kappa_violations;
    if (xf.norm() <= r_int && xg.norm() <= r_int) {
      ++ld_checked;
      const double lb = L * std::pow(dist, 2.0 / 6.0);
      if (gap > lb + 1e-6) ++ld_violations;
      if (lb < kb) ++ld_tighter;
    }
  }
  const double spot_err = std::abs(spot - spot_expect);
  detail = format("kappa violations %d/100, large-domain violations %d/%d "
                  "(tighter on %d), L spot |%.6f - 3/(2 pi)| = %.1e",
                  kappa_violations, ld_violations, ld_checked, ld_tighter,
                  spot, spot_err);
  return kappa_violations == 0 && ld_violations == 0 && spot_err < 1e-12;
}

// ---------------------------------------------------------------------------
// criterion 10: impossibility of distinguishing under vanishing noise

bool crit10(std::string& detail) {
  ExperimentConfig cfg;
  ImpossibilityReport rep = demo_impossibility(cfg);
  detail = format("runs %d, freq_true %.3f (> 0 required), freq_other %.4f "
                  "(= 0 required)",
                  rep.runs, rep.freq_true, rep.freq_other);
  return rep.runs == 1000 && rep.freq_true > 0.0 && rep.freq_other == 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  using CritFn = bool (*)(std::string&);
  const CritFn fns[10] = {crit1, crit2, crit3, crit4, crit5,
                          crit6, crit7, crit8, crit9, crit10};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 10) {
      fprintf(stderr, "usage: %s [criterion numbers 1..10]\n", argv[0]);
      return 64;
    }
    selected.insert(n);
  }
  if (selected.empty()) {
    for (int n = 1; n <= 10; ++n) selected.insert(n);
  }
  int failures = 0;
  for (int n : selected) {
    std::string detail;
    bool pass = false;
    try {
      pass = fns[n - 1](detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", n,
           detail.c_str());
    fflush(stdout);
    if (!pass) ++failures;
  }
  return failures;
}
