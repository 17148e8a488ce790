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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "funcdp/optim.hpp"
#include "funcdp/privacy.hpp"

using namespace funcdp;

namespace {

BoxDomain box2d(double half) {
  Eigen::VectorXd l(2), h(2);
  l << -half, -half;
  h << half, half;
  return BoxDomain(l, h);
}

std::vector<LabeledSample> random_samples(int n, uint64_t seed) {
  LaplaceSampler rng(seed);
  std::vector<LabeledSample> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].a = Eigen::Vector2d(rng.uniform01(), rng.uniform01());
    out[i].b = rng.uniform01() < 0.5 ? -1 : 1;
  }
  return out;
}

// independent second-order oracle: damped Newton on the unconstrained
// problem (minimizer is interior for these instances)
Eigen::VectorXd newton_oracle(const LogisticObjective& obj, double tol) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd g = obj.gradient(x);
    if (g.norm() <= tol) break;
    Eigen::VectorXd step = obj.hessian(x).ldlt().solve(g);
    double t = 1.0;
    const double f0 = obj.value(x);
    while (t > 1e-12 && obj.value(x - t * step) > f0) t *= 0.5;
    x -= t * step;
  }
  return x;
}

}  // namespace

TEST_CASE("logistic value at zero") {
  LogisticObjective obj{random_samples(1, 5), 0.01};
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  CHECK(obj.value(x) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("logistic gradient matches central finite differences") {
  LogisticObjective obj{random_samples(50, 6), 0.01};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x(2);
    x << u(rng), u(rng);
    Eigen::VectorXd g = obj.gradient(x);
    const double h = 1e-5;
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (obj.value(xp) - obj.value(xm)) / (2 * h);
      CHECK(g[k] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("logistic Hessian dominated from below by the regularizer") {
  LogisticObjective obj{random_samples(100, 7), 0.01};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x(2);
    x << u(rng), u(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(obj.hessian(x));
    CHECK(es.eigenvalues().minCoeff() >= 100 * 0.01 - 1e-12);
  }
}

TEST_CASE("centralized_minimize on quadratics") {
  BoxDomain X = box2d(5.0);
  Eigen::VectorXd z(2);
  z << 1.5, -2.0;
  Objective f{[z](const Eigen::VectorXd& x) { return (x - z).squaredNorm(); },
              [z](const Eigen::VectorXd& x) {
                return Eigen::VectorXd(2 * (x - z));
              }};
  CHECK((centralized_minimize(f, X, 1e-10) - z).norm() < 1e-9);

  Eigen::VectorXd zo(2);
  zo << 9.0, -2.0;
  Objective g{
      [zo](const Eigen::VectorXd& x) { return (x - zo).squaredNorm(); },
      [zo](const Eigen::VectorXd& x) {
        return Eigen::VectorXd(2 * (x - zo));
      }};
  Eigen::VectorXd expect = X.project(zo);
  CHECK((centralized_minimize(g, X, 1e-10) - expect).norm() < 1e-9);
}

TEST_CASE("centralized_minimize matches the damped-Newton oracle") {
  LogisticObjective obj{random_samples(1000, 12), 0.01};
  BoxDomain X = box2d(5.0);
  Eigen::VectorXd got = centralized_minimize(make_objective(obj), X, 1e-10);
  Eigen::VectorXd want = newton_oracle(obj, 1e-12);
  CHECK((got - want).norm() < 1e-8);
}

TEST_CASE("metropolis weights on standard graphs") {
  Network k5 = metropolis_weights(5, complete_edges(5));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(k5.weights(i, j) == doctest::Approx(0.2).epsilon(1e-14));
    }
  }

  Network p2 = metropolis_weights(2, path_edges(2));
  CHECK(p2.weights(0, 0) == doctest::Approx(0.5));
  CHECK(p2.weights(0, 1) == doctest::Approx(0.5));

  Network ring = metropolis_weights(10, ring_edges(10));
  for (int i = 0; i < 10; ++i) {
    CHECK(ring.weights.row(i).sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ring.weights.col(i).sum() == doctest::Approx(1.0).epsilon(1e-15));
  }

  CHECK_THROWS(metropolis_weights(4, {{0, 1}, {2, 3}}));
}

TEST_CASE("step schedules") {
  StepSchedule h{StepSchedule::Kind::kHarmonic, 2.0, 0.1};
  CHECK(h.alpha(1) == doctest::Approx(2.0));
  CHECK(h.alpha(4) == doctest::Approx(0.5));
  StepSchedule g{StepSchedule::Kind::kGeometric, 0.5, 0.1};
  CHECK(g.alpha(1) == doctest::Approx(0.5));
  CHECK(g.alpha(3) == doctest::Approx(0.005));
}

TEST_CASE("single-agent distributed run reduces to projected gradient") {
  BoxDomain X = box2d(5.0);
  LogisticObjective obj{random_samples(100, 14), 0.01};
  Network net = metropolis_weights(1, {});
  StepSchedule steps{StepSchedule::Kind::kHarmonic, 1.0, 0.1};
  TrajectoryRecord rec =
      distributed_solve({make_objective(obj)}, net, X, steps, 20000);
  Eigen::VectorXd ref = centralized_minimize(make_objective(obj), X, 1e-10);
  CHECK((rec.consensus - ref).norm() < 1e-3);
}

TEST_CASE("identical objectives and starts keep agents in lockstep") {
  BoxDomain X = box2d(5.0);
  LogisticObjective obj{random_samples(100, 15), 0.01};
  Network net = metropolis_weights(4, ring_edges(4));
  std::vector<Objective> funcs(4, make_objective(obj));
  StepSchedule steps{StepSchedule::Kind::kHarmonic, 0.05, 0.1};
  TrajectoryRecord rec = distributed_solve(funcs, net, X, steps, 500);
  for (int i = 1; i < 4; ++i) {
    CHECK((rec.final_states[i] - rec.final_states[0]).norm() == 0.0);
  }
}

TEST_CASE("ring of 10 splits converge to the centralized optimizer") {
  BoxDomain X = box2d(5.0);
  std::vector<Objective> funcs;
  LogisticObjective total;
  total.lambda = 0.01;
  for (int i = 0; i < 10; ++i) {
    LogisticObjective obj{random_samples(100, 100 + i), 0.01};
    total.samples.insert(total.samples.end(), obj.samples.begin(),
                         obj.samples.end());
    funcs.push_back(make_objective(obj));
  }
  Network net = metropolis_weights(10, ring_edges(10));
  StepSchedule steps{StepSchedule::Kind::kHarmonic, 0.2, 0.1};
  TrajectoryRecord rec = distributed_solve(funcs, net, X, steps, 100000);
  Eigen::VectorXd ref = centralized_minimize(make_objective(total), X, 1e-10);
  CHECK((rec.consensus - ref).norm() < 1e-3);
}

TEST_CASE("baseline with zero noise is reproducible and biased") {
  BoxDomain X = box2d(5.0);
  std::vector<Objective> funcs;
  LogisticObjective total;
  total.lambda = 0.01;
  for (int i = 0; i < 10; ++i) {
    LogisticObjective obj{random_samples(100, 200 + i), 0.01};
    total.samples.insert(total.samples.end(), obj.samples.begin(),
                         obj.samples.end());
    funcs.push_back(make_objective(obj));
  }
  Network net = metropolis_weights(10, ring_edges(10));
  StepSchedule geo{StepSchedule::Kind::kGeometric, 0.5, 0.1};
  const int iters = 200;

  TrajectoryRecord a =
      message_perturbing_baseline(funcs, net, X, geo, 0.0, 0.11, iters, 3);
  TrajectoryRecord b =
      message_perturbing_baseline(funcs, net, X, geo, 0.0, 0.11, iters, 3);
  CHECK((a.consensus - b.consensus).norm() == 0.0);

  TrajectoryRecord noiseless =
      distributed_solve(funcs, net, X, geo, iters);
  CHECK((a.consensus - noiseless.consensus).norm() == 0.0);

  TrajectoryRecord c =
      message_perturbing_baseline(funcs, net, X, geo, 1.0, 0.11, iters, 4);
  TrajectoryRecord d =
      message_perturbing_baseline(funcs, net, X, geo, 1.0, 0.11, iters, 5);
  CHECK((c.consensus - d.consensus).norm() > 0.0);

  // finite-sum stepsize keeps an O(1) bias vs the true optimizer; compare
  // against a harmonic run at the same iteration count
  Eigen::VectorXd ref = centralized_minimize(make_objective(total), X, 1e-10);
  StepSchedule harm{StepSchedule::Kind::kHarmonic, 0.2, 0.1};
  TrajectoryRecord good = distributed_solve(funcs, net, X, harm, iters);
  const double good_err = (good.consensus - ref).norm();
  CHECK((a.consensus - ref).norm() > 10.0 * good_err);
}

TEST_CASE("baseline requires a geometric schedule") {
  BoxDomain X = box2d(5.0);
  LogisticObjective obj{random_samples(10, 44), 0.01};
  Network net = metropolis_weights(1, {});
  StepSchedule harm{StepSchedule::Kind::kHarmonic, 0.5, 0.1};
  CHECK_THROWS(message_perturbing_baseline({make_objective(obj)}, net, X, harm,
                                           1.0, 0.11, 10, 1));
}

TEST_CASE("trajectory CSV format") {
  BoxDomain X = box2d(5.0);
  LogisticObjective obj{random_samples(10, 45), 0.01};
  Network net = metropolis_weights(1, {});
  StepSchedule steps{StepSchedule::Kind::kHarmonic, 0.1, 0.1};
  TrajectoryRecord rec =
      distributed_solve({make_objective(obj)}, net, X, steps, 10);
  const std::string csv = rec.to_csv();
  CHECK(csv.rfind("iteration,agent,x1,x2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 1);
}

TEST_CASE("impossibility demo: dichotomy of settling frequencies") {
  BoxDomain X = box2d(5.0);
  auto quad = [](const Eigen::VectorXd& z) {
    return Objective{
        [z](const Eigen::VectorXd& x) { return 0.5 * (x - z).squaredNorm(); },
        [z](const Eigen::VectorXd& x) { return Eigen::VectorXd(x - z); }};
  };
  Eigen::VectorXd z0(2), z1(2);
  z0 << 0.0, 0.0;
  z1 << 1.0, 0.0;
  InfoSet truth{quad(z0), z0};
  InfoSet other{quad(z1), z1};

  // no noise: deterministic convergence to the true optimizer
  ImpossibilityReport clean =
      impossibility_demo(truth, other, X, 0.0, 1.0, 0.2, 300, 50, 21);
  CHECK(clean.freq_true == doctest::Approx(1.0));
  CHECK(clean.freq_other == doctest::Approx(0.0));

  // identical information sets: frequencies coincide by symmetry
  InfoSet twin{quad(z0), z0};
  ImpossibilityReport sym =
      impossibility_demo(truth, twin, X, 0.1, 1.0, 0.2, 300, 50, 22);
  CHECK(sym.freq_true == doctest::Approx(sym.freq_other));

  // decaying Laplace noise: true set reachable, wrong set not
  ImpossibilityReport rep =
      impossibility_demo(truth, other, X, 0.2, 1.0, 0.2, 1000, 1000, 23);
  CHECK(rep.runs == 1000);
  CHECK(rep.freq_true > 0.0);
  CHECK(rep.freq_other <= 3.0 / 1000.0);
}
