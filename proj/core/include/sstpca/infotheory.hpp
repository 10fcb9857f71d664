#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sstpca/lowdeg.hpp"

namespace sstpca {

/// sqrt(k/12 ln((n-k)/k) - 1/2); empty when n < 2k or the radicand is <= 0.
/// Below this strength no estimator recovers the support with small risk.
std::optional<double> minimax_lambda(std::uint32_t n, std::uint32_t k);

/// k (1 - eps^2/2) ln((n-k)/k), the log of a lower bound on the Euclidean
/// eps-covering number of U_k. Requires eps in (0, 1] and n >= 2k.
double packing_lower_bound_log(std::uint32_t n, std::uint32_t k, double eps);

/// Bound 2 lambda^2 on the KL divergence between two planted distributions.
double kl_upper_bound(double lambda);

enum class CoverMetric {
  euclidean,      ///< ||x - x'||
  sign_invariant  ///< min{||x - x'||, ||x + x'||}
};

/// Largest |U_k| = 2^k C(n, k) the exact cover search accepts.
inline constexpr std::uint64_t kExactCoverLimit = 24;

struct CoverResult {
  std::uint64_t universe;                ///< |U_k|
  std::optional<std::uint64_t> exact;    ///< minimal net size; set under the size guard
  std::uint64_t greedy;                  ///< size of a greedy net, an upper bound
};

/// Size of the smallest eps-net of U_k (closed balls, centres in U_k).
///
/// The exact value comes from an exhaustive search and is only attempted
/// when |U_k| <= kExactCoverLimit, unless `require_exact` is set, in which
/// case a larger universe raises GuardError.
CoverResult covering_number(std::uint32_t n, std::uint32_t k, double eps, CoverMetric metric,
                            bool require_exact = false);

/// (1 - 4 tau / eps^2)(1 - eps^2/2) / 2: the constant obtained when the
/// packing and KL bounds are combined with Fano's inequality.
Rational fano_risk_constant(const Rational& tau, const Rational& eps);

struct ItBoundReport {
  std::optional<double> minimax_lambda;
  std::optional<double> packing_log_lower;  ///< at eps = 1/2; empty when n < 2k
  double kl_upper;                          ///< 2 lambda^2 at the supplied lambda
  std::vector<std::string> notes;
};

ItBoundReport it_bound_report(std::uint32_t n, std::uint32_t k, double lambda, double eps = 0.5);

}  // namespace sstpca
