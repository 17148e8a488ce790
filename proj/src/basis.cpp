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

#include "funcdp/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "json.hpp"

namespace funcdp {

using json = nlohmann::json;
using bigfloat = boost::multiprecision::cpp_bin_float_oct;

BoxDomain::BoxDomain(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() < 1) {
    throw std::invalid_argument("BoxDomain: bounds must have equal size >= 1");
  }
  for (int i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("BoxDomain: lower[i] < upper[i] required");
    }
  }
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (int i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

bool BoxDomain::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower.size()) return false;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

Eigen::VectorXd BoxDomain::project(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

int degree_of(const MultiIndex& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

std::vector<MultiIndex> graded_multi_indices(int d, int max_degree) {
  std::vector<MultiIndex> out;
  for (int deg = 0; deg <= max_degree; ++deg) {
    // all exponent vectors with sum = deg, lexicographic
    std::vector<MultiIndex> level;
    MultiIndex cur(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == d - 1) {
        cur[pos] = rem;
        level.push_back(cur);
        return;
      }
      for (int e = 0; e <= rem; ++e) {
        cur[pos] = e;
        rec(pos + 1, rem - e);
      }
    };
    rec(0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

double monomial_moment(const BoxDomain& domain, const MultiIndex& a,
                       const MultiIndex& b) {
  const int d = domain.dim();
  double prod = 1.0;
  for (int i = 0; i < d; ++i) {
    const int n = a[i] + b[i] + 1;
    prod *= (std::pow(domain.upper[i], n) - std::pow(domain.lower[i], n)) / n;
  }
  return prod;
}

namespace {

bigfloat monomial_moment_big(const BoxDomain& domain, const MultiIndex& a,
                             const MultiIndex& b) {
  const int d = domain.dim();
  bigfloat prod = 1;
  for (int i = 0; i < d; ++i) {
    const int n = a[i] + b[i] + 1;
    bigfloat u = domain.upper[i], l = domain.lower[i];
    prod *= (pow(u, n) - pow(l, n)) / n;
  }
  return prod;
}

using BigMatrix = std::vector<std::vector<bigfloat>>;

}  // namespace

int Basis::dim_at_degree(int deg) const {
  int n = 0;
  while (n < dim && degree_of(index_map[n]) <= deg) ++n;
  return n;
}

Basis build_basis(const BoxDomain& domain, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("build_basis: max_degree < 0");
  Basis basis;
  basis.domain = domain;
  basis.max_degree = max_degree;
  basis.index_map = graded_multi_indices(domain.dim(), max_degree);
  const int n = static_cast<int>(basis.index_map.size());
  basis.dim = n;

  // Moment matrix M_ij = <x^a_i, x^a_j> in extended precision.
  BigMatrix M(n, std::vector<bigfloat>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      M[i][j] = monomial_moment_big(domain, basis.index_map[i],
                                    basis.index_map[j]);
      M[j][i] = M[i][j];
    }
  }

  // Modified Gram-Schmidt on the monomials under the M inner product, one
  // re-orthogonalization pass. C[i] holds monomial coefficients of e_{i+1};
  // W[i] = M * C[i] caches the metric image.
  BigMatrix C(n, std::vector<bigfloat>(n, 0));
  BigMatrix W(n, std::vector<bigfloat>(n));
  for (int i = 0; i < n; ++i) C[i][i] = 1;

  auto metric_image = [&](const std::vector<bigfloat>& c, int upto,
                          std::vector<bigfloat>& w) {
    for (int r = 0; r < n; ++r) {
      bigfloat s = 0;
      for (int k = 0; k <= upto; ++k) s += M[r][k] * c[k];
      w[r] = s;
    }
  };
  auto dot = [&](const std::vector<bigfloat>& c,
                 const std::vector<bigfloat>& w, int upto) {
    bigfloat s = 0;
    for (int k = 0; k <= upto; ++k) s += c[k] * w[k];
    return s;
  };

  std::vector<bigfloat> w(n);
  for (int i = 0; i < n; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      metric_image(C[i], i, w);
      for (int j = 0; j < i; ++j) {
        bigfloat r = dot(C[i], W[j], i);
        for (int k = 0; k <= j; ++k) C[i][k] -= r * C[j][k];
      }
    }
    metric_image(C[i], i, w);
    bigfloat nrm2 = dot(C[i], w, i);
    if (nrm2 <= 0) {
      throw std::runtime_error(
          "build_basis: monomial Gram matrix numerically rank deficient at "
          "index " + std::to_string(i + 1) + "; requested degree too high");
    }
    bigfloat inv = 1 / sqrt(nrm2);
    for (int k = 0; k <= i; ++k) C[i][k] *= inv;
    metric_image(C[i], i, W[i]);
  }

  basis.ortho_matrix = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= i; ++k) {
      basis.ortho_matrix(i, k) = static_cast<double>(C[i][k]);
    }
  }
  return basis;
}

CoeffVector::CoeffVector(const Basis& b, Eigen::VectorXd v)
    : basis(&b), values(std::move(v)) {
  if (values.size() != b.dim) {
    throw std::invalid_argument("CoeffVector: size mismatch with basis dim");
  }
  if (!values.allFinite()) {
    throw std::invalid_argument("CoeffVector: non-finite entries");
  }
}

BasisFunction::BasisFunction(const Basis& basis, const Eigen::VectorXd& coeffs)
    : basis_(&basis) {
  if (coeffs.size() != basis.dim) {
    throw std::invalid_argument("BasisFunction: coefficient size mismatch");
  }
  mono_ = basis.ortho_matrix.transpose() * coeffs;
}

namespace {

// Per-coordinate power tables up to max_degree.
void power_table(const Eigen::VectorXd& x, int max_degree,
                 std::vector<std::vector<double>>& pw) {
  const int d = static_cast<int>(x.size());
  pw.assign(d, std::vector<double>(max_degree + 1, 1.0));
  for (int i = 0; i < d; ++i) {
    for (int e = 1; e <= max_degree; ++e) pw[i][e] = pw[i][e - 1] * x[i];
  }
}

}  // namespace

double BasisFunction::value(const Eigen::VectorXd& x) const {
  std::vector<std::vector<double>> pw;
  power_table(x, basis_->max_degree, pw);
  const int d = basis_->domain.dim();
  double s = 0;
  for (int k = 0; k < basis_->dim; ++k) {
    double t = mono_[k];
    const MultiIndex& a = basis_->index_map[k];
    for (int i = 0; i < d; ++i) t *= pw[i][a[i]];
    s += t;
  }
  return s;
}

Eigen::VectorXd BasisFunction::gradient(const Eigen::VectorXd& x) const {
  std::vector<std::vector<double>> pw;
  power_table(x, basis_->max_degree, pw);
  const int d = basis_->domain.dim();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < basis_->dim; ++k) {
    const MultiIndex& a = basis_->index_map[k];
    for (int j = 0; j < d; ++j) {
      if (a[j] == 0) continue;
      double t = mono_[k] * a[j];
      for (int i = 0; i < d; ++i) t *= pw[i][i == j ? a[i] - 1 : a[i]];
      g[j] += t;
    }
  }
  return g;
}

Eigen::MatrixXd BasisFunction::hessian(const Eigen::VectorXd& x) const {
  std::vector<std::vector<double>> pw;
  power_table(x, basis_->max_degree, pw);
  const int d = basis_->domain.dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < basis_->dim; ++k) {
    const MultiIndex& a = basis_->index_map[k];
    for (int j1 = 0; j1 < d; ++j1) {
      for (int j2 = j1; j2 < d; ++j2) {
        double fac;
        if (j1 == j2) {
          if (a[j1] < 2) continue;
          fac = static_cast<double>(a[j1]) * (a[j1] - 1);
        } else {
          if (a[j1] == 0 || a[j2] == 0) continue;
          fac = static_cast<double>(a[j1]) * a[j2];
        }
        double t = mono_[k] * fac;
        for (int i = 0; i < d; ++i) {
          int e = a[i];
          if (i == j1) --e;
          if (i == j2) --e;
          t *= pw[i][e];
        }
        h(j1, j2) += t;
        if (j1 != j2) h(j2, j1) += t;
      }
    }
  }
  return h;
}

namespace {

void require_in_domain(const Basis& basis, const Eigen::VectorXd& x) {
  if (!basis.domain.contains(x)) {
    throw std::domain_error("synthesize: point outside the basis domain");
  }
}

}  // namespace

double synthesize(const Basis& basis, const CoeffVector& c,
                  const Eigen::VectorXd& x) {
  require_in_domain(basis, x);
  return BasisFunction(basis, c.values).value(x);
}

Eigen::VectorXd synthesize_gradient(const Basis& basis, const CoeffVector& c,
                                    const Eigen::VectorXd& x) {
  require_in_domain(basis, x);
  return BasisFunction(basis, c.values).gradient(x);
}

Eigen::MatrixXd synthesize_hessian(const Basis& basis, const CoeffVector& c,
                                   const Eigen::VectorXd& x) {
  require_in_domain(basis, x);
  return BasisFunction(basis, c.values).hessian(x);
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = beta;
    J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(n);
  weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = 0; k < n; ++k) {
    nodes[k] = mid + half * es.eigenvalues()[k];
    double v0 = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v0 * v0 * half;
  }
}

QuadratureRule tensor_quadrature(const BoxDomain& domain, int order) {
  const int d = domain.dim();
  std::vector<std::vector<double>> nodes(d), weights(d);
  for (int i = 0; i < d; ++i) {
    gauss_legendre(order, domain.lower[i], domain.upper[i], nodes[i],
                   weights[i]);
  }
  int npts = 1;
  for (int i = 0; i < d; ++i) npts *= order;
  QuadratureRule rule;
  rule.points.resize(npts, d);
  rule.weights.resize(npts);
  std::vector<int> idx(d, 0);
  for (int p = 0; p < npts; ++p) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      rule.points(p, i) = nodes[i][idx[i]];
      w *= weights[i][idx[i]];
    }
    rule.weights[p] = w;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < order) break;
      idx[i] = 0;
    }
  }
  return rule;
}

CoeffVector analyze(const Basis& basis,
                    const std::function<double(const Eigen::VectorXd&)>& f,
                    int quad_order) {
  if (quad_order < 0) quad_order = basis.max_degree + 10;
  if (quad_order < basis.max_degree + 1) {
    throw std::invalid_argument("analyze: quad_order must be >= max_degree+1");
  }
  QuadratureRule rule = tensor_quadrature(basis.domain, quad_order);
  const int npts = static_cast<int>(rule.weights.size());
  Eigen::VectorXd fw(npts);
  for (int p = 0; p < npts; ++p) {
    double v = f(rule.points.row(p).transpose());
    if (!std::isfinite(v)) {
      throw std::invalid_argument("analyze: non-finite f value at node");
    }
    fw[p] = v * rule.weights[p];
  }
  // <f, e_k> = sum_p w_p f(x_p) e_k(x_p); e_k values via the monomial matrix.
  Eigen::MatrixXd mono_vals(npts, basis.dim);
  for (int p = 0; p < npts; ++p) {
    std::vector<std::vector<double>> pw;
    power_table(rule.points.row(p).transpose(), basis.max_degree, pw);
    for (int k = 0; k < basis.dim; ++k) {
      double t = 1.0;
      const MultiIndex& a = basis.index_map[k];
      for (int i = 0; i < basis.domain.dim(); ++i) t *= pw[i][a[i]];
      mono_vals(p, k) = t;
    }
  }
  Eigen::VectorXd coeffs = basis.ortho_matrix * (mono_vals.transpose() * fw);
  return CoeffVector(basis, coeffs);
}

namespace {

std::string double_to_hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double hex_to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

std::string basis_to_json(const Basis& basis) {
  json j;
  j["domain"]["lower"] = std::vector<double>(
      basis.domain.lower.data(), basis.domain.lower.data() + basis.domain.dim());
  j["domain"]["upper"] = std::vector<double>(
      basis.domain.upper.data(), basis.domain.upper.data() + basis.domain.dim());
  j["max_degree"] = basis.max_degree;
  j["index_map"] = basis.index_map;
  std::vector<std::string> entries;
  entries.reserve(static_cast<size_t>(basis.dim) * basis.dim);
  for (int i = 0; i < basis.dim; ++i) {
    for (int k = 0; k < basis.dim; ++k) {
      entries.push_back(double_to_hex(basis.ortho_matrix(i, k)));
    }
  }
  j["ortho_matrix"] = entries;
  return j.dump();
}

Basis basis_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  std::vector<double> lo = j["domain"]["lower"], hi = j["domain"]["upper"];
  Basis basis;
  basis.domain = BoxDomain(
      Eigen::Map<Eigen::VectorXd>(lo.data(), static_cast<long>(lo.size())),
      Eigen::Map<Eigen::VectorXd>(hi.data(), static_cast<long>(hi.size())));
  basis.max_degree = j["max_degree"];
  basis.index_map = j["index_map"].get<std::vector<MultiIndex>>();
  basis.dim = static_cast<int>(basis.index_map.size());
  std::vector<std::string> entries = j["ortho_matrix"];
  if (entries.size() != static_cast<size_t>(basis.dim) * basis.dim) {
    throw std::invalid_argument("basis_from_json: ortho_matrix size mismatch");
  }
  basis.ortho_matrix.resize(basis.dim, basis.dim);
  for (int i = 0; i < basis.dim; ++i) {
    for (int k = 0; k < basis.dim; ++k) {
      basis.ortho_matrix(i, k) =
          hex_to_double(entries[static_cast<size_t>(i) * basis.dim + k]);
    }
  }
  return basis;
}

}  // namespace funcdp
