#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sstpca {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(std::uint64_t n, std::uint64_t r);

/// Number of length-m words over j labelled letters in which every letter
/// occurs an even number of times (possibly zero).
BigInt even_all_count(std::uint32_t m, std::uint32_t j);

/// Same, but every one of the s letters occurs a positive even number of
/// times, i.e. the sum of multinomial(m; 2b_1, ..., 2b_s) over b_i >= 1.
BigInt even_surj_count(std::uint32_t m, std::uint32_t s);

/// Sum over multi-indices |alpha| = d of 1_even (k/n)^{2 s(alpha)} / prod alpha_i!,
/// grouped by the number s of coordinates the multi-index touches.
/// Zero when p*d is odd. For d > 2n/p, s is capped at n.
Rational degree_term(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t d);

/// ln degree_term, evaluated in double precision from exact counts; -inf when the term is 0.
double log_degree_term(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t d);

/// Natural log of a positive big integer, accurate to double precision.
double log_bigint(const BigInt& x);

/// The exact rational value of a finite double.
Rational to_rational(double x);

struct LowDegParams {
  std::uint32_t n = 1;
  std::uint32_t k = 1;
  std::uint32_t p = 2;
  std::uint32_t D = 1;
  double lambda = 0.0;
  double eps = 0.25;

  void validate() const;
  /// The counting identity assumes D <= 2n/p; larger D is accepted with s capped at n.
  bool d_le_2n_over_p() const { return std::uint64_t{p} * D <= 2ULL * n; }
};

enum class Arithmetic { automatic, exact_rational, log_float };

struct ChiSqReport {
  double total = 0.0;
  std::vector<double> per_degree;  ///< entry d-1 holds the degree-d contribution
  Arithmetic arithmetic = Arithmetic::exact_rational;
  std::optional<Rational> exact_total;  ///< set in exact mode
  std::vector<Rational> exact_per_degree;
  bool d_le_2n_over_p = true;
};

/// p*D above which forced exact arithmetic is refused with OverflowError.
inline constexpr std::uint64_t kExactDegreeLimit = 400;
/// automatic mode uses exact arithmetic up to this p*D.
inline constexpr std::uint64_t kAutoExactLimit = 60;

/// sum_{d=1}^{D} lambda^{2d} k^{-pd} degree_term(n, k, p, d).
ChiSqReport chi_squared_exact(const LowDegParams& params, Arithmetic arithmetic = Arithmetic::automatic);

/// Maximum number of multisets the oracle is allowed to visit.
inline constexpr std::uint64_t kOracleGuard = 1'000'000;

/// The same divergence by enumerating every multiset of at most D tensor
/// entries and reading off the coordinate usage of each one. GuardError when
/// sum_{d <= D} C(n^p + d - 1, d) exceeds kOracleGuard.
Rational chi_squared_oracle(const LowDegParams& params);

/// sqrt(eps D / (e 4^p)) min{(n/(pD))^{p/4}, (k/(pD) (1 + |ln(n p D / (e k^2))|))^{p/2}}.
/// Below this lambda the degree-<=D divergence is at most 2 eps.
double lower_bound_lambda(std::uint32_t n, std::uint32_t k, std::uint32_t p, std::uint32_t D,
                          double eps);

struct UpperBoundReport {
  double regime1 = 0.0;  ///< eps^{1/(2D)} e^{p/2} sqrt(D) (n/(pD))^{p/4}
  double regime2 = 0.0;  ///< eps^{1/(2D)} sqrt(D) (k/(pD) ln(n/k))^{p/2}
  bool regime1_valid = false;
  bool regime2_valid = false;
  int regime = 0;        ///< 1 or 2 for the smaller valid regime, 0 when neither applies
  double lambda = 0.0;   ///< value of the chosen regime; NaN when regime == 0
};

/// Strengths above which the degree-<=D divergence is at least eps.
UpperBoundReport upper_bound_lambda(std::uint32_t n, std::uint32_t k, std::uint32_t p,
                                    std::uint32_t D, double eps);

}  // namespace sstpca
