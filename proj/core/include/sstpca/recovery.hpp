#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sstpca/candidates.hpp"
#include "sstpca/tensor.hpp"

namespace sstpca {

/// Budget and theory constants of the limited brute-force family.
struct RecoveryParams {
  std::uint32_t k = 1;
  std::uint32_t t = 1;     ///< brute-force budget, 1 <= t <= k
  std::uint32_t r = 1;
  double eps = 0.5;        ///< overlap slack in (0, 1/2]
  double kappa = 5.0;      ///< strength-ratio parameter
  double delta = 0.01;     ///< failure budget in (0, 1)
  double A = 1.0;

  void validate() const;
};

struct RecoveryOptions {
  unsigned workers = 0;            ///< 0 resolves through resolve_workers()
  double split_noise_scale = 1.0;  ///< 0 disables the split noise (debugging)
};

struct SplitPair {
  DenseTensor first;   ///< (Y + Z) / sqrt 2
  DenseTensor second;  ///< (Y - Z) / sqrt 2
};

/// Two independent copies of Y from one fresh Gaussian tensor Z drawn from the split stream of `seed`.
SplitPair preprocess_split(const DenseTensor& y, std::uint64_t seed, double noise_scale = 1.0);

struct ArgmaxResult {
  SparseSignVector best;
  double value;
  std::uint64_t rank;        ///< enumeration rank of `best`
  std::uint64_t candidates;  ///< size of the searched candidate set
  std::uint64_t touches;     ///< tensor entries read
};

/// argmax over u in U_t, supp(u) disjoint from `forbidden`, of <Y, u^{(x)p}>.
///
/// The candidate ranks are cut into one contiguous range per worker. Ties go
/// to the lowest rank, so the result does not depend on the worker count.
ArgmaxResult argmax_over_Ut(const DenseTensor& y, std::uint32_t t,
                            std::span<const std::uint32_t> forbidden = {}, unsigned workers = 0);

/// 1-based indices of the k largest |alpha_l|, ties to the smaller index, sorted increasing.
std::vector<std::uint32_t> top_k_by_magnitude(std::span<const double> alpha, std::uint32_t k);

struct RoundResult {
  std::vector<std::uint32_t> support;  ///< recovered index set, 1-based, increasing
  SparseSignVector v_star;
  double argmax_value;
  std::vector<double> alpha;
  std::uint64_t candidates;
  double elapsed_ms;
};

struct MultiRecovery {
  std::vector<RoundResult> rounds;
  double split_ms = 0.0;

  std::vector<std::vector<std::uint32_t>> supports() const;
};

RoundResult recover_single(const DenseTensor& y, std::uint32_t k, std::uint32_t t,
                           std::uint64_t seed, const RecoveryOptions& options = {});

/// r rounds on one split pair; round i searches supports disjoint from rounds < i.
MultiRecovery recover_multi(const DenseTensor& y, std::uint32_t k, std::uint32_t t, std::uint32_t r,
                            std::uint64_t seed, const RecoveryOptions& options = {});

struct GeneralRecovery {
  std::vector<std::uint32_t> composition;  ///< block sizes of the maximizing arrangement
  std::vector<SparseSignVector> factors;   ///< the ell maximizing t-sparse vectors
  std::vector<std::vector<std::uint32_t>> supports;
  double argmax_value;
  std::uint64_t candidates;
  double elapsed_ms;
};

/// All compositions of p into ell positive parts, lexicographic.
std::vector<std::vector<std::uint32_t>> compositions(std::uint32_t p, std::uint32_t ell);

/// Single spike x_(1) (x) ... (x) x_(p) with ell distinct factors.
///
/// Searches every composition and every ell-tuple of pairwise disjoint U_t
/// candidates; factor q's support is the top-k of the contraction that frees
/// the last mode holding q.
GeneralRecovery recover_general(const DenseTensor& y, std::uint32_t k, std::uint32_t t,
                                std::uint32_t ell, std::uint64_t seed,
                                const RecoveryOptions& options = {});

struct ThresholdReport {
  double lambda;
  double kappa_required;  ///< 5 A^{2p} (eps/(1-eps))^{p-1}
  bool kappa_valid;       ///< kappa >= kappa_required
  /// kappa also acts as the ratio lambda_r >= kappa lambda_1, which needs kappa <= 1.
  bool strength_ratio_satisfiable;
};

/// (32 kappa / (A eps)^p) sqrt(ell t (k/t)^p ln(n/delta)); ell = 1 for symmetric spikes.
ThresholdReport threshold_lambda(std::uint32_t n, std::uint32_t p, const RecoveryParams& params,
                                 std::uint32_t ell = 1);

/// c * sqrt(ell t (k/t)^p ln n), the shape of the threshold with a free constant.
double calibrated_lambda(double c, std::uint32_t n, std::uint32_t k, std::uint32_t p,
                         std::uint32_t t, std::uint32_t ell = 1);

struct RecoveryReport {
  std::vector<std::vector<std::uint32_t>> recovered;
  std::vector<std::uint32_t> matching;  ///< recovered[i] is paired with truth[matching[i]]
  std::vector<bool> exact;
  std::vector<double> overlap;          ///< |recovered[i] n truth[matching[i]]| / |truth|
  std::vector<double> argmax_values;
  std::vector<double> round_ms;

  bool all_exact() const;
  double mean_overlap() const;
};

/// Greedy maximum-overlap bijection: largest intersection first, ties by index.
RecoveryReport match_supports(const std::vector<std::vector<std::uint32_t>>& recovered,
                              const std::vector<std::vector<std::uint32_t>>& truth);

enum class Verdict { null, planted };

/// |<Y, xhat^{(x)p}>|.
double distinguishing_statistic(const DenseTensor& y, const DenseUnitVector& xhat);

/// planted iff |<Y, xhat^{(x)p}>| >= C sqrt(k ln n).
Verdict distinguish(const DenseTensor& y, const DenseUnitVector& xhat, std::uint32_t k,
                    double C = 2.0);

}  // namespace sstpca
