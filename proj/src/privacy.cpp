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

#include "funcdp/privacy.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace funcdp {

double NoiseSchedule::scale(int k) const {
  if (k < 1) throw std::invalid_argument("NoiseSchedule::scale: k >= 1");
  return gamma / std::pow(static_cast<double>(k), p);
}

double zeta(double s) {
  if (s <= 1.0) throw std::domain_error("zeta: requires s > 1");
  static thread_local double last_s = std::nan("");
  static thread_local double last_v = 0.0;
  if (s == last_s) return last_v;
  constexpr int kN = 1000000;
  // Kahan-compensated sum; a naive sum loses ~1e-8 relative near s = 1
  double sum = 0.0, comp = 0.0;
  for (int k = kN; k >= 1; --k) {
    const double term = std::pow(static_cast<double>(k), -s) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  const double N = kN;
  const double tail = std::pow(N, 1.0 - s) / (s - 1.0) -
                      0.5 * std::pow(N, -s) +
                      s * std::pow(N, -s - 1.0) / 12.0;
  last_s = s;
  last_v = sum + tail;
  return last_v;
}

namespace {

void check_window(double p, double q) {
  if (!(p > 0.5)) {
    throw std::invalid_argument("noise schedule invalid: requires p > 1/2");
  }
  if (!(p < q - 0.5)) {
    throw std::invalid_argument(
        "noise schedule invalid: requires p < q - 1/2");
  }
}

}  // namespace

double epsilon_of(const NoiseSchedule& schedule, double q) {
  check_window(schedule.p, q);
  if (!(schedule.gamma > 0)) {
    throw std::invalid_argument("epsilon_of: requires gamma > 0");
  }
  return std::sqrt(zeta(2.0 * (q - schedule.p))) / schedule.gamma;
}

NoiseSchedule gamma_for(double epsilon, double p, double q) {
  check_window(p, q);
  if (!(epsilon > 0)) throw std::invalid_argument("gamma_for: epsilon > 0");
  return NoiseSchedule{std::sqrt(zeta(2.0 * (q - p))) / epsilon, p};
}

double vq_norm(const Eigen::VectorXd& delta, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("vq_norm: requires q > 1");
  double s = 0.0;
  for (int k = 0; k < delta.size(); ++k) {
    double t = std::pow(static_cast<double>(k + 1), q) * delta[k];
    s += t * t;
  }
  return std::sqrt(s);
}

double vq_norm(const CoeffVector& delta, double q) {
  return vq_norm(delta.values, q);
}

ScheduleReport validate_schedule(const NoiseSchedule& schedule, double q) {
  ScheduleReport rep;
  rep.p = schedule.p;
  rep.l2_valid = schedule.p > 0.5 || schedule.degenerate();
  rep.has_q = !std::isnan(q);
  if (rep.has_q) {
    rep.q = q;
    rep.privacy_valid = rep.l2_valid && schedule.p < q - 0.5 && q > 1.0;
  }
  if (!rep.l2_valid) {
    rep.message = "p <= 1/2: noise sequence not almost surely in l2";
  } else if (rep.has_q && !rep.privacy_valid) {
    rep.message = "p >= q - 1/2 (or q <= 1): outside the privacy window";
  } else {
    rep.message = "ok";
  }
  return rep;
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t master, uint64_t agent_id, uint64_t rep_id) {
  uint64_t h = splitmix64(master);
  h = splitmix64(h ^ agent_id);
  h = splitmix64(h ^ rep_id);
  return h;
}

LaplaceSampler::LaplaceSampler(uint64_t seed) : state_(seed) {}

uint64_t LaplaceSampler::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double LaplaceSampler::uniform01() {
  // 53-bit mantissa, offset by half an ulp so the value is strictly in (0,1)
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double LaplaceSampler::draw(double scale) {
  const double u = uniform01() - 0.5;  // (-1/2, 1/2)
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::fabs(u));
}

PerturbedFunction perturb(const CoeffVector& f, const NoiseSchedule& schedule,
                          uint64_t seed) {
  if (!schedule.degenerate() && !(schedule.gamma > 0)) {
    throw std::invalid_argument("perturb: gamma must be >= 0");
  }
  const int K = static_cast<int>(f.values.size());
  PerturbedFunction out;
  out.original = f;
  out.schedule = schedule;
  out.seed = seed;
  out.noise = Eigen::VectorXd::Zero(K);
  if (!schedule.degenerate()) {
    LaplaceSampler rng(seed);
    for (int k = 1; k <= K; ++k) out.noise[k - 1] = rng.draw(schedule.scale(k));
  }
  out.perturbed = CoeffVector(*f.basis, f.values + out.noise);
  return out;
}

double boundedness_probability(double r, const std::function<double(int)>& b,
                               int K, NoiseFamily family) {
  if (!(r > 0)) throw std::invalid_argument("boundedness_probability: r > 0");
  double log_prod = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double bk = b(k);
    if (!(bk > 0)) {
      throw std::invalid_argument("boundedness_probability: b(k) > 0");
    }
    double factor;
    if (family == NoiseFamily::kLaplace) {
      factor = -std::expm1(-r / bk);  // 1 - e^{-r/b}
    } else {
      factor = std::erf(r / std::sqrt(2.0 * bk));
    }
    if (factor <= 0.0) return 0.0;
    log_prod += std::log(factor);
  }
  return std::exp(log_prod);
}

std::string perturbed_to_json(const PerturbedFunction& pf) {
  nlohmann::json j;
  j["schedule"] = {{"gamma", pf.schedule.gamma}, {"p", pf.schedule.p}};
  j["seed"] = pf.seed;
  j["original"] = std::vector<double>(
      pf.original.values.data(),
      pf.original.values.data() + pf.original.values.size());
  j["noise"] = std::vector<double>(pf.noise.data(),
                                   pf.noise.data() + pf.noise.size());
  j["perturbed"] = std::vector<double>(
      pf.perturbed.values.data(),
      pf.perturbed.values.data() + pf.perturbed.values.size());
  return j.dump();
}

}  // namespace funcdp
