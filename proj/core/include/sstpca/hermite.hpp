#pragma once

#include <cstdint>
#include <vector>

namespace sstpca {

/// h_n(z) = He_n(z) / sqrt(n!), the probabilists' Hermite polynomials scaled
/// to be orthonormal under N(0, 1).
double hermite_normalized(std::uint32_t n, double z);

/// Gauss-Hermite rule for E_{z ~ N(0,1)} f(z); weights sum to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double expectation(F&& f, double shift = 0.0) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i] + shift);
    return sum;
  }
};

/// m-point rule by Golub-Welsch; exact for polynomials of degree <= 2m - 1.
QuadratureRule gauss_hermite_rule(std::uint32_t points);

/// E_{z ~ N(mu, 1)} h_n(z) by quadrature. The closed form is mu^n / sqrt(n!).
double hermite_moment(std::uint32_t n, double mu, std::uint32_t points = 64);

/// E_{z ~ N(0, 1)} h_m(z) h_n(z) by quadrature; should be 1 if m == n, else 0.
double hermite_inner(std::uint32_t m, std::uint32_t n, std::uint32_t points = 64);

}  // namespace sstpca
