#include "sstpca/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "sstpca/error.hpp"

namespace sstpca {

double hermite_normalized(std::uint32_t n, double z) {
  // h_{j+1} = (z h_j - sqrt(j) h_{j-1}) / sqrt(j+1) keeps every iterate O(1)
  // instead of building He_n and dividing by sqrt(n!) at the end.
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = z;
  for (std::uint32_t j = 1; j < n; ++j) {
    const double next = (z * cur - std::sqrt(static_cast<double>(j)) * prev) /
                        std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

QuadratureRule gauss_hermite_rule(std::uint32_t points) {
  if (points == 0) throw ParameterError("quadrature needs at least one point");
  const Eigen::Index m = points;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = std::sqrt(static_cast<double>(i));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw Error("Gauss-Hermite eigensolve failed");

  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (Eigen::Index i = 0; i < m; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;
  }
  const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
  for (auto& w : rule.weights) w /= total;
  return rule;
}

double hermite_moment(std::uint32_t n, double mu, std::uint32_t points) {
  return gauss_hermite_rule(points).expectation([n](double z) { return hermite_normalized(n, z); },
                                                mu);
}

double hermite_inner(std::uint32_t m, std::uint32_t n, std::uint32_t points) {
  return gauss_hermite_rule(points).expectation(
      [m, n](double z) { return hermite_normalized(m, z) * hermite_normalized(n, z); });
}

}  // namespace sstpca
