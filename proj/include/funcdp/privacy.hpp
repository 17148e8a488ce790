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

#ifndef FUNCDP_PRIVACY_HPP
#define FUNCDP_PRIVACY_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "funcdp/basis.hpp"

namespace funcdp {

/// Laplace scale schedule b_k = gamma / k^p. gamma = 0 is a flagged
/// degenerate schedule (all-zero noise).
struct NoiseSchedule {
  double gamma = 0.0;
  double p = 0.0;

  bool degenerate() const { return gamma == 0.0; }
  double scale(int k) const;  // b_k, k >= 1
};

struct PrivacyLevel {
  double epsilon = 0.0;
  double q = 0.0;
};

struct PerturbedFunction {
  CoeffVector original;
  Eigen::VectorXd noise;
  CoeffVector perturbed;
  NoiseSchedule schedule;
  uint64_t seed = 0;
};

/// Riemann zeta for s > 1: compensated partial sum to N = 1e6 terms plus the
/// Euler-Maclaurin tail N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12. Relative
/// error <= 1e-10 down to s near 1.
double zeta(double s);

/// epsilon = sqrt(zeta(2(q - p))) / gamma. Requires p in (1/2, q - 1/2).
double epsilon_of(const NoiseSchedule& schedule, double q);

/// Inverse of epsilon_of: gamma = sqrt(zeta(2(q - p))) / epsilon.
NoiseSchedule gamma_for(double epsilon, double p, double q);

/// Weighted-l2 adjacency norm (sum_k (k^q delta_k)^2)^{1/2}.
double vq_norm(const CoeffVector& delta, double q);
double vq_norm(const Eigen::VectorXd& delta, double q);

struct ScheduleReport {
  bool l2_valid = false;       // p > 1/2 (membership of the noise in l2 a.s.)
  bool privacy_valid = false;  // p < q - 1/2, only meaningful with q set
  bool has_q = false;
  double p = 0.0;
  double q = 0.0;
  std::string message;
};
ScheduleReport validate_schedule(const NoiseSchedule& schedule,
                                 double q = std::nan(""));

/// Counter-based 64-bit mix for deriving per-agent, per-repetition seeds from
/// a master seed (splitmix64-style finalizer over the concatenated words).
uint64_t derive_seed(uint64_t master, uint64_t agent_id, uint64_t rep_id);

/// Deterministic Laplace sampler; inverse CDF on u in (-1/2, 1/2):
/// x = -b sign(u) ln(1 - 2|u|).
class LaplaceSampler {
 public:
  explicit LaplaceSampler(uint64_t seed);
  double uniform01();        // (0, 1)
  double draw(double scale);  // Lap(scale)

 private:
  uint64_t state_;
  uint64_t next();
};

/// Draw eta_k ~ Lap(gamma/k^p), k = 1..dim, and return f + eta.
PerturbedFunction perturb(const CoeffVector& f, const NoiseSchedule& schedule,
                          uint64_t seed);

enum class NoiseFamily { kLaplace, kGaussian };

/// Partial product to K terms of P{ |eta(k)| <= r for all k } for independent
/// eta(k) with per-step scales b(k); exact exponential-CDF factor for Laplace,
/// erf(r / sqrt(2 b(k))) for Gaussian (b(k) the variance).
double boundedness_probability(double r, const std::function<double(int)>& b,
                               int K, NoiseFamily family);

std::string perturbed_to_json(const PerturbedFunction& pf);

}  // namespace funcdp

#endif  // FUNCDP_PRIVACY_HPP
