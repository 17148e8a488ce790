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

#ifndef FUNCDP_BASIS_HPP
#define FUNCDP_BASIS_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace funcdp {

/// Axis-aligned box [lower_1, upper_1] x ... x [lower_d, upper_d].
struct BoxDomain {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  BoxDomain() = default;
  BoxDomain(Eigen::VectorXd lo, Eigen::VectorXd hi);

  int dim() const { return static_cast<int>(lower.size()); }
  double volume() const;
  bool contains(const Eigen::VectorXd& x) const;
  /// Clamp x coordinate-wise into the box.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
};

/// Exponent vector of a monomial x^a = x_1^{a_1} ... x_d^{a_d}.
using MultiIndex = std::vector<int>;

int degree_of(const MultiIndex& a);

/// All multi-indices in d variables with total degree <= max_degree,
/// graded-lexicographic: degree ascending, ties broken lexicographically.
std::vector<MultiIndex> graded_multi_indices(int d, int max_degree);

/// Exact integral over the box of x^a * x^b (product of per-coordinate
/// power-rule antiderivatives).
double monomial_moment(const BoxDomain& domain, const MultiIndex& a,
                       const MultiIndex& b);

/// Orthonormal polynomial basis of L2 on a box, built by Gram-Schmidt of the
/// monomials in graded-lex order. Row i of ortho_matrix holds the monomial
/// coefficients of basis function e_{i+1}; the matrix is lower triangular in
/// the shared graded-lex monomial ordering.
struct Basis {
  BoxDomain domain;
  int max_degree = 0;
  int dim = 0;
  std::vector<MultiIndex> index_map;
  Eigen::MatrixXd ortho_matrix;

  /// Number of leading basis functions with degree <= deg.
  int dim_at_degree(int deg) const;
};

/// Gram-Schmidt construction using exact monomial moments. The elimination is
/// done in extended precision so that degree-14 bases on wide boxes stay
/// orthonormal to ~1e-12 in the returned double matrix.
Basis build_basis(const BoxDomain& domain, int max_degree);

/// Coefficients of a function in the span of a Basis. Parseval: the L2 norm
/// of the function equals values.norm().
struct CoeffVector {
  const Basis* basis = nullptr;
  Eigen::VectorXd values;

  CoeffVector() = default;
  CoeffVector(const Basis& b, Eigen::VectorXd v);
  double norm() const { return values.norm(); }
};

/// Monomial-space view of a coefficient vector, cached for fast repeated
/// evaluation of values, gradients and Hessians.
class BasisFunction {
 public:
  BasisFunction(const Basis& basis, const Eigen::VectorXd& coeffs);

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  const Basis& basis() const { return *basis_; }

 private:
  const Basis* basis_;
  Eigen::VectorXd mono_;  // monomial coefficients, graded-lex order
};

double synthesize(const Basis& basis, const CoeffVector& c,
                  const Eigen::VectorXd& x);
Eigen::VectorXd synthesize_gradient(const Basis& basis, const CoeffVector& c,
                                    const Eigen::VectorXd& x);
Eigen::MatrixXd synthesize_hessian(const Basis& basis, const CoeffVector& c,
                                   const Eigen::VectorXd& x);

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Tensor-product Gauss-Legendre quadrature grid over a box.
struct QuadratureRule {
  Eigen::MatrixXd points;   // npts x d
  Eigen::VectorXd weights;  // npts
};
QuadratureRule tensor_quadrature(const BoxDomain& domain, int order);

/// Truncated analysis map: <f, e_k> for k = 1..dim by tensor Gauss-Legendre
/// quadrature of the given per-axis order (default max_degree + 10).
CoeffVector analyze(const Basis& basis,
                    const std::function<double(const Eigen::VectorXd&)>& f,
                    int quad_order = -1);

/// JSON (de)serialization; matrix entries are stored as hex-float strings and
/// round-trip bit-exactly.
std::string basis_to_json(const Basis& basis);
Basis basis_from_json(const std::string& json_text);

}  // namespace funcdp

#endif  // FUNCDP_BASIS_HPP
