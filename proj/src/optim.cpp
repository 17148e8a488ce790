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

#include "funcdp/optim.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "funcdp/privacy.hpp"

namespace funcdp {

namespace {

// ln(1 + e^t), overflow safe
double softplus(double t) {
  if (t > 0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// logistic sigmoid 1/(1+e^{-t})
double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

double LogisticObjective::value(const Eigen::VectorXd& x) const {
  const double reg = 0.5 * lambda * x.squaredNorm();
  double s = 0.0;
  for (const auto& smp : samples) {
    s += softplus(-smp.b * smp.a.dot(x.head<2>())) + reg;
  }
  return s;
}

Eigen::VectorXd LogisticObjective::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = static_cast<double>(samples.size()) * lambda * x;
  for (const auto& smp : samples) {
    const double t = -smp.b * smp.a.dot(x.head<2>());
    g.head<2>() += -smp.b * sigmoid(t) * smp.a;
  }
  return g;
}

Eigen::MatrixXd LogisticObjective::hessian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd h = static_cast<double>(samples.size()) * lambda *
                      Eigen::MatrixXd::Identity(x.size(), x.size());
  for (const auto& smp : samples) {
    const double t = -smp.b * smp.a.dot(x.head<2>());
    const double w = sigmoid(t) * sigmoid(-t);
    h.topLeftCorner<2, 2>() += w * smp.a * smp.a.transpose();
  }
  return h;
}

std::vector<std::pair<int, int>> ring_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n > 2) e.emplace_back(0, n - 1);
  return e;
}

std::vector<std::pair<int, int>> complete_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

std::vector<std::pair<int, int>> path_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

Network metropolis_weights(int n,
                           const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw std::invalid_argument("metropolis_weights: n >= 1");
  std::vector<int> deg(n, 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw std::invalid_argument("metropolis_weights: bad edge");
    }
    ++deg[i];
    ++deg[j];
  }
  // connectivity check
  std::vector<int> comp(n, -1);
  std::vector<int> stack{0};
  comp[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [i, j] : edges) {
      int w = -1;
      if (i == v) w = j;
      if (j == v) w = i;
      if (w >= 0 && comp[w] < 0) {
        comp[w] = 0;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (comp[v] < 0) {
      throw std::invalid_argument("metropolis_weights: graph not connected");
    }
  }
  Network net;
  net.n = n;
  net.edges = edges;
  net.weights = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : edges) {
    const double w = 1.0 / (1.0 + std::max(deg[i], deg[j]));
    net.weights(i, j) = w;
    net.weights(j, i) = w;
  }
  for (int i = 0; i < n; ++i) {
    net.weights(i, i) = 1.0 - net.weights.row(i).sum();
  }
  return net;
}

double StepSchedule::alpha(int k) const {
  if (k < 1) throw std::invalid_argument("StepSchedule::alpha: k >= 1");
  if (kind == Kind::kHarmonic) return c / k;
  return c * std::pow(q, k - 1);
}

std::string TrajectoryRecord::to_csv() const {
  std::ostringstream os;
  os << "iteration,agent,x1,x2\n";
  char buf[128];
  for (size_t s = 0; s < snapshots.size(); ++s) {
    for (size_t i = 0; i < snapshots[s].size(); ++i) {
      const Eigen::VectorXd& x = snapshots[s][i];
      std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g\n",
                    s * record_every, i, x[0], x.size() > 1 ? x[1] : 0.0);
      os << buf;
    }
  }
  return os.str();
}

Objective make_objective(const LogisticObjective& obj) {
  return Objective{
      [obj](const Eigen::VectorXd& x) { return obj.value(x); },
      [obj](const Eigen::VectorXd& x) { return obj.gradient(x); },
      [obj](const Eigen::VectorXd& x) { return obj.hessian(x); }};
}

Objective make_objective(const BasisFunction& fn) {
  return Objective{
      [fn](const Eigen::VectorXd& x) { return fn.value(x); },
      [fn](const Eigen::VectorXd& x) { return fn.gradient(x); },
      [fn](const Eigen::VectorXd& x) { return fn.hessian(x); }};
}

Eigen::VectorXd centralized_minimize(const Objective& f, const BoxDomain& X,
                                     double tol, Eigen::VectorXd x0) {
  constexpr long kMaxIters = 1000000;
  Eigen::VectorXd x =
      x0.size() ? X.project(x0)
                : Eigen::VectorXd(0.5 * (X.lower + X.upper));
  auto residual = [&](const Eigen::VectorXd& at, const Eigen::VectorXd& g) {
    return (at - X.project(at - g)).norm();
  };
  // the gradient phase compares objective values and stalls near machine
  // precision of f; stop it at a coarse target and polish with Newton
  const double coarse_tol = f.hessian ? std::max(tol, 1e-3) : tol;
  const long coarse_iters = f.hessian ? 5000 : kMaxIters;
  double fx = f.value(x);
  double t = 1.0;
  bool coarse_done = false;
  for (long it = 0; it < coarse_iters && !coarse_done; ++it) {
    Eigen::VectorXd g = f.gradient(x);
    if (residual(x, g) <= coarse_tol) break;
    t *= 2.0;  // allow the accepted step to grow back
    bool moved = false;
    const double slack = 1e-12 * (std::abs(fx) + 1.0);
    while (t > 1e-18) {
      Eigen::VectorXd xn = X.project(x - t * g);
      Eigen::VectorXd dx = xn - x;
      if (dx.norm() == 0.0) break;  // step below representable resolution
      double fn = f.value(xn);
      if (fn <= fx + g.dot(dx) + 0.5 / t * dx.squaredNorm() + slack) {
        x = xn;
        fx = fn;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) coarse_done = true;
  }
  if (f.hessian) {
    for (int it = 0; it < 100; ++it) {
      Eigen::VectorXd g = f.gradient(x);
      if (residual(x, g) <= tol) return x;
      // active-set projected Newton: coordinates pinned to a face with the
      // gradient pointing outward keep a gradient step (clipped by the
      // projection); the rest get the reduced Newton step
      const double atol = 1e-10 * (1.0 + x.cwiseAbs().maxCoeff());
      std::vector<int> free_idx;
      for (int i = 0; i < x.size(); ++i) {
        const bool at_lo = x(i) - X.lower(i) <= atol && g(i) > 0;
        const bool at_hi = X.upper(i) - x(i) <= atol && g(i) < 0;
        if (!at_lo && !at_hi) free_idx.push_back(i);
      }
      Eigen::VectorXd step = g;
      if (!free_idx.empty()) {
        const int nf = static_cast<int>(free_idx.size());
        Eigen::MatrixXd H = f.hessian(x);
        Eigen::MatrixXd Hff(nf, nf);
        Eigen::VectorXd gf(nf);
        for (int a = 0; a < nf; ++a) {
          gf(a) = g(free_idx[a]);
          for (int b = 0; b < nf; ++b) {
            Hff(a, b) = H(free_idx[a], free_idx[b]);
          }
        }
        Eigen::VectorXd sf = Hff.ldlt().solve(gf);
        for (int a = 0; a < nf; ++a) step(free_idx[a]) = sf(a);
      }
      if (!step.allFinite()) break;
      double damp = 1.0;
      Eigen::VectorXd xn = X.project(x - step);
      for (int h = 0; h < 40 && residual(xn, f.gradient(xn)) > residual(x, g);
           ++h) {
        damp *= 0.5;
        xn = X.project(x - damp * step);
      }
      if ((xn - x).norm() == 0.0) break;
      x = xn;
    }
  }
  const double res = residual(x, f.gradient(x));
  if (res <= 100 * tol) return x;
  throw std::runtime_error(
      "centralized_minimize: stalled before reaching tolerance");
}

namespace {

TrajectoryRecord run_rounds(
    const std::vector<Objective>& funcs, const Network& net, const BoxDomain& X,
    const StepSchedule& steps, int iters, std::vector<Eigen::VectorXd> x0,
    int record_every, LaplaceSampler* rng, double theta, double noise_ratio) {
  const int n = net.n;
  if (static_cast<int>(funcs.size()) != n) {
    throw std::invalid_argument("distributed run: funcs size != network size");
  }
  if (iters < 1) throw std::invalid_argument("distributed run: iters >= 1");
  const int d = X.dim();
  if (x0.empty()) x0.assign(n, Eigen::VectorXd::Zero(d));
  if (record_every <= 0) record_every = std::max(1, iters / 200);

  TrajectoryRecord rec;
  rec.iterations = iters;
  rec.record_every = record_every;
  std::vector<Eigen::VectorXd> x = std::move(x0);
  std::vector<Eigen::VectorXd> xi(n), z(n);
  rec.snapshots.push_back(x);
  double noise_scale = theta;
  for (int k = 1; k <= iters; ++k) {
    // messages (optionally perturbed)
    for (int i = 0; i < n; ++i) {
      xi[i] = x[i];
      if (rng && noise_scale > 0) {
        for (int c = 0; c < d; ++c) xi[i][c] += rng->draw(noise_scale);
      }
    }
    noise_scale *= noise_ratio;
    const double a_k = steps.alpha(k);
    for (int i = 0; i < n; ++i) {
      z[i] = Eigen::VectorXd::Zero(d);
      for (int j = 0; j < n; ++j) {
        const double w = net.weights(i, j);
        if (w != 0.0) z[i] += w * xi[j];
      }
      z[i] = X.project(z[i]);  // keep consensus points evaluable on D = X
      x[i] = X.project(z[i] - a_k * funcs[i].gradient(z[i]));
    }
    if (k % record_every == 0) rec.snapshots.push_back(x);
  }
  rec.final_states = x;
  rec.consensus = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) rec.consensus += x[i] / n;
  return rec;
}

}  // namespace

TrajectoryRecord distributed_solve(const std::vector<Objective>& funcs,
                                   const Network& net, const BoxDomain& X,
                                   const StepSchedule& steps, int iters,
                                   std::vector<Eigen::VectorXd> x0,
                                   int record_every) {
  return run_rounds(funcs, net, X, steps, iters, std::move(x0), record_every,
                    nullptr, 0.0, 0.0);
}

TrajectoryRecord message_perturbing_baseline(
    const std::vector<Objective>& funcs, const Network& net, const BoxDomain& X,
    const StepSchedule& steps, double theta, double noise_ratio, int iters,
    uint64_t seed, std::vector<Eigen::VectorXd> x0, int record_every) {
  if (steps.kind != StepSchedule::Kind::kGeometric) {
    throw std::invalid_argument(
        "message_perturbing_baseline: geometric step schedule required");
  }
  LaplaceSampler rng(seed);
  return run_rounds(funcs, net, X, steps, iters, std::move(x0), record_every,
                    &rng, theta, noise_ratio);
}

ImpossibilityReport impossibility_demo(const InfoSet& truth,
                                       const InfoSet& other,
                                       const BoxDomain& X, double noise_scale,
                                       double noise_decay_p, double radius,
                                       int iters, int runs, uint64_t seed) {
  ImpossibilityReport rep;
  rep.runs = runs;
  const int d = X.dim();
  int hit_true = 0, hit_other = 0;
  for (int run = 0; run < runs; ++run) {
    LaplaceSampler rng(derive_seed(seed, 0, run));
    Eigen::VectorXd x = truth.optimizer;
    StepSchedule steps{StepSchedule::Kind::kHarmonic, 1.0, 0.0};
    bool in_true = true, in_other = true;
    const int settle_from = (3 * iters) / 4;
    for (int k = 1; k <= iters; ++k) {
      Eigen::VectorXd xi = x;
      const double b_k = noise_scale / std::pow(k, noise_decay_p);
      for (int c = 0; c < d; ++c) xi[c] += rng.draw(b_k);
      x = X.project(xi - steps.alpha(k) * truth.objective.gradient(xi));
      if (k >= settle_from) {
        if ((x - truth.optimizer).norm() > radius) in_true = false;
        if ((x - other.optimizer).norm() > radius) in_other = false;
      }
    }
    if (in_true) ++hit_true;
    if (in_other) ++hit_other;
  }
  rep.freq_true = static_cast<double>(hit_true) / runs;
  rep.freq_other = static_cast<double>(hit_other) / runs;
  return rep;
}

}  // namespace funcdp
