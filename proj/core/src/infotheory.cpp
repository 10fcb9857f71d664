#include "sstpca/infotheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "sstpca/candidates.hpp"
#include "sstpca/error.hpp"

namespace sstpca {
namespace {

constexpr double kDistanceSlack = 1e-12;

// Every vector of U_k as (support bitmask, sign bitmask), sign bit set for '-'.
struct FlatPoint {
  std::uint64_t support;
  std::uint64_t negative;
};

std::vector<FlatPoint> enumerate_flat(std::uint32_t n, std::uint32_t k) {
  const CandidateSet set(n, k, {}, 1);  // odd parity keeps both signs
  std::vector<FlatPoint> points;
  points.reserve(set.size());
  set.for_each(0, set.size(), [&](std::uint64_t, const SparseFactor& f) {
    FlatPoint point{0, 0};
    for (std::size_t i = 0; i < f.index.size(); ++i) {
      point.support |= std::uint64_t{1} << f.index[i];
      if (f.value[i] < 0) point.negative |= std::uint64_t{1} << f.index[i];
    }
    points.push_back(point);
  });
  return points;
}

// k <x, x'> as an integer: agreements minus disagreements on the shared support.
int scaled_inner(const FlatPoint& a, const FlatPoint& b) {
  const std::uint64_t shared = a.support & b.support;
  const int disagree = std::popcount((a.negative ^ b.negative) & shared);
  return std::popcount(shared) - 2 * disagree;
}

bool within(const FlatPoint& a, const FlatPoint& b, std::uint32_t k, double eps,
            CoverMetric metric) {
  int m = scaled_inner(a, b);
  if (metric == CoverMetric::sign_invariant) m = std::abs(m);
  const double dist2 = 2.0 - 2.0 * m / static_cast<double>(k);
  return dist2 <= eps * eps + kDistanceSlack;
}

using Mask = std::uint32_t;  // the exact search runs on at most 24 points

bool cover_with(const std::vector<Mask>& ball, Mask uncovered, std::uint32_t budget) {
  if (uncovered == 0) return true;
  if (budget == 0) return false;
  // Some centre must cover the lowest uncovered point.
  const int target = std::countr_zero(uncovered);
  for (std::size_t c = 0; c < ball.size(); ++c) {
    if ((ball[c] >> target & 1U) == 0) continue;
    if (cover_with(ball, uncovered & ~ball[c], budget - 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<double> minimax_lambda(std::uint32_t n, std::uint32_t k) {
  if (k == 0 || n < 2ULL * k) return std::nullopt;
  const double radicand = k / 12.0 * std::log(static_cast<double>(n - k) / k) - 0.5;
  if (!(radicand > 0.0)) return std::nullopt;
  return std::sqrt(radicand);
}

double packing_lower_bound_log(std::uint32_t n, std::uint32_t k, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("eps must lie in (0, 1]");
  if (k == 0 || n < 2ULL * k) throw ParameterError("packing bound needs 1 <= k and n >= 2k");
  return k * (1.0 - eps * eps / 2.0) * std::log(static_cast<double>(n - k) / k);
}

double kl_upper_bound(double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
  return 2.0 * lambda * lambda;
}

CoverResult covering_number(std::uint32_t n, std::uint32_t k, double eps, CoverMetric metric,
                            bool require_exact) {
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  if (n > 64) throw CapacityError("covering search supports n <= 64");
  if (!(eps >= 0.0)) throw ParameterError("eps must be >= 0");
  const std::uint64_t universe = binomial_u64(n, k) << k;
  if (require_exact && universe > kExactCoverLimit) {
    throw GuardError("exact cover needs |U_k| <= " + std::to_string(kExactCoverLimit) + ", got " +
                     std::to_string(universe));
  }

  const auto points = enumerate_flat(n, k);
  CoverResult result{universe, std::nullopt, 0};

  // Greedy: repeatedly take the centre covering most uncovered points. Both
  // metrics are symmetric, so the neighbour lists serve as balls either way.
  std::vector<std::vector<std::uint32_t>> neighbours(points.size());
  for (std::size_t c = 0; c < points.size(); ++c) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (within(points[c], points[i], k, eps, metric)) neighbours[c].push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<std::size_t> gain(points.size());
  for (std::size_t c = 0; c < points.size(); ++c) gain[c] = neighbours[c].size();
  std::vector<bool> covered(points.size(), false);
  std::size_t remaining = points.size();
  while (remaining > 0) {
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    for (const auto i : neighbours[best]) {
      if (covered[i]) continue;
      covered[i] = true;
      --remaining;
      for (const auto c : neighbours[i]) --gain[c];
    }
    ++result.greedy;
  }

  if (universe <= kExactCoverLimit) {
    std::vector<Mask> ball(points.size(), 0);
    for (std::size_t c = 0; c < points.size(); ++c) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (within(points[c], points[i], k, eps, metric)) ball[c] |= Mask{1} << i;
      }
    }
    const Mask all = points.size() == 32 ? ~Mask{0} : (Mask{1} << points.size()) - 1;
    for (std::uint32_t size = 1; size <= result.greedy; ++size) {
      if (cover_with(ball, all, size)) {
        result.exact = size;
        break;
      }
    }
  }
  return result;
}

Rational fano_risk_constant(const Rational& tau, const Rational& eps) {
  const Rational eps2 = eps * eps;
  return (1 - 4 * tau / eps2) * (1 - eps2 / 2) / 2;
}

ItBoundReport it_bound_report(std::uint32_t n, std::uint32_t k, double lambda, double eps) {
  ItBoundReport report;
  report.minimax_lambda = minimax_lambda(n, k);
  if (!report.minimax_lambda) {
    report.notes.push_back(n < 2ULL * k ? "minimax threshold needs n >= 2k"
                                        : "minimax threshold undefined: k ln((n-k)/k) <= 6");
  }
  if (k >= 1 && n >= 2ULL * k) {
    report.packing_log_lower = packing_lower_bound_log(n, k, eps);
  } else {
    report.notes.push_back("packing bound needs n >= 2k");
  }
  report.kl_upper = kl_upper_bound(lambda);
  report.notes.push_back("natural logarithms throughout");
  return report;
}

}  // namespace sstpca
