#include "sstpca/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <numeric>
#include <string>
#include <thread>

#include "sstpca/error.hpp"
#include "sstpca/model.hpp"
#include "sstpca/parallel.hpp"
#include "sstpca/rng.hpp"

namespace sstpca {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_budget(std::uint32_t n, std::uint32_t k, std::uint32_t t) {
  if (t < 1 || t > k) throw ParameterError("budget t must satisfy 1 <= t <= k");
  if (k > n) throw ParameterError("sparsity k must not exceed n");
}

}  // namespace

void RecoveryParams::validate() const {
  if (t < 1 || t > k) throw ParameterError("budget t must satisfy 1 <= t <= k");
  if (r < 1) throw ParameterError("r must be at least 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw ParameterError("eps must lie in (0, 1/2]");
  if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (!(A >= 1.0)) throw ParameterError("A must be >= 1");
}

SplitPair preprocess_split(const DenseTensor& y, std::uint64_t seed, double noise_scale) {
  SplitPair out{y, y};
  Rng rng(derive_seed(seed, Stream::split));
  auto a = out.first.mutable_data();
  auto b = out.second.mutable_data();
  const auto src = y.data();
  const double inv_root2 = 1.0 / std::numbers::sqrt2;
  for (std::uint64_t i = 0; i < src.size(); ++i) {
    const double z = noise_scale * rng.normal();
    a[i] = (src[i] + z) * inv_root2;
    b[i] = (src[i] - z) * inv_root2;
  }
  return out;
}

ArgmaxResult argmax_over_Ut(const DenseTensor& y, std::uint32_t t,
                            std::span<const std::uint32_t> forbidden, unsigned workers) {
  const CandidateSet set(y.n(), t, forbidden, y.p());
  const std::uint64_t total = set.size();
  const unsigned pool =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), total));

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t touches = 0;
  };
  std::vector<Best> partial(pool);

  auto scan = [&](unsigned w) {
    const std::uint64_t base = total / pool;
    const std::uint64_t extra = total % pool;
    const std::uint64_t lo = base * w + std::min<std::uint64_t>(w, extra);
    const std::uint64_t hi = lo + base + (w < extra ? 1 : 0);
    Best& best = partial[w];
    set.for_each(lo, hi, [&](std::uint64_t rank, const SparseFactor& u) {
      const double v = rank1_inner(y, u, &best.touches);
      if (v > best.value || (v == best.value && rank < best.rank)) {
        best.value = v;
        best.rank = rank;
      }
    });
  };

  if (pool <= 1) {
    scan(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (unsigned w = 0; w < pool; ++w) threads.emplace_back(scan, w);
  }

  Best winner;
  std::uint64_t touches = 0;
  for (const auto& b : partial) {
    touches += b.touches;
    if (b.value > winner.value || (b.value == winner.value && b.rank < winner.rank)) winner = b;
  }
  return ArgmaxResult{set.at(winner.rank), winner.value, winner.rank, total, touches};
}

std::vector<std::uint32_t> top_k_by_magnitude(std::span<const double> alpha, std::uint32_t k) {
  if (k > alpha.size()) throw ParameterError("k exceeds the vector length");
  std::vector<std::uint32_t> order(alpha.size());
  std::iota(order.begin(), order.end(), 0U);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      const double ma = std::abs(alpha[a]);
                      const double mb = std::abs(alpha[b]);
                      return ma != mb ? ma > mb : a < b;
                    });
  order.resize(k);
  std::sort(order.begin(), order.end());
  for (auto& i : order) ++i;
  return order;
}

std::vector<std::vector<std::uint32_t>> MultiRecovery::supports() const {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(rounds.size());
  for (const auto& round : rounds) out.push_back(round.support);
  return out;
}

MultiRecovery recover_multi(const DenseTensor& y, std::uint32_t k, std::uint32_t t, std::uint32_t r,
                            std::uint64_t seed, const RecoveryOptions& options) {
  check_budget(y.n(), k, t);
  if (r < 1) throw ParameterError("r must be at least 1");
  if (std::uint64_t{r} * k > y.n()) throw ParameterError("r * k exceeds n");

  MultiRecovery out;
  auto start = Clock::now();
  const auto split = preprocess_split(y, seed, options.split_noise_scale);
  out.split_ms = ms_since(start);

  std::vector<std::uint32_t> forbidden;
  for (std::uint32_t round = 0; round < r; ++round) {
    start = Clock::now();
    std::optional<ArgmaxResult> best;
    try {
      best = argmax_over_Ut(split.first, t, forbidden, options.workers);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("round " + std::to_string(round + 1) + ": " + e.what());
    }
    auto alpha = contract_leave_one(split.second, best->best);
    auto support = top_k_by_magnitude(alpha, k);
    forbidden.insert(forbidden.end(), support.begin(), support.end());
    out.rounds.push_back(RoundResult{std::move(support), best->best, best->value, std::move(alpha),
                                     best->candidates, ms_since(start)});
  }
  return out;
}

RoundResult recover_single(const DenseTensor& y, std::uint32_t k, std::uint32_t t,
                           std::uint64_t seed, const RecoveryOptions& options) {
  return std::move(recover_multi(y, k, t, 1, seed, options).rounds.front());
}

std::vector<std::vector<std::uint32_t>> compositions(std::uint32_t p, std::uint32_t ell) {
  std::vector<std::vector<std::uint32_t>> out;
  if (ell < 1 || ell > p) return out;
  std::vector<std::uint32_t> parts;
  auto build = [&](auto&& self, std::uint32_t remaining, std::uint32_t slots) -> void {
    if (slots == 1) {
      parts.push_back(remaining);
      out.push_back(parts);
      parts.pop_back();
      return;
    }
    for (std::uint32_t m = 1; m + (slots - 1) <= remaining; ++m) {
      parts.push_back(m);
      self(self, remaining - m, slots - 1);
      parts.pop_back();
    }
  };
  build(build, p, ell);
  return out;
}

GeneralRecovery recover_general(const DenseTensor& y, std::uint32_t k, std::uint32_t t,
                                std::uint32_t ell, std::uint64_t seed,
                                const RecoveryOptions& options) {
  check_budget(y.n(), k, t);
  if (ell < 1 || ell > y.p()) throw ParameterError("ell must satisfy 1 <= ell <= p");
  if (std::uint64_t{ell} * k > y.n()) throw ParameterError("ell * k exceeds n");
  if (std::uint64_t{ell} * t > y.n()) throw InfeasibleError("ell * t exceeds n");

  const auto start = Clock::now();
  const auto split = preprocess_split(y, seed, options.split_noise_scale);

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> composition;
    std::vector<SparseFactor> factors;  // one per distinct vector
  } best;
  std::uint64_t evaluated = 0;

  std::vector<SparseFactor> chosen(ell);
  std::vector<SparseFactor> by_mode(y.p());
  for (const auto& comp : compositions(y.p(), ell)) {
    const auto modes = modes_of_composition(comp);
    // Depth-first over ell-tuples; factor q avoids the supports of factors < q.
    // Sign flips of a factor used an even number of times cancel, so those
    // factors enumerate half the sign patterns.
    auto descend = [&](auto&& self, std::uint32_t q, std::vector<std::uint32_t>& forbidden) -> void {
      const CandidateSet set(y.n(), t, forbidden, comp[q]);
      set.for_each(0, set.size(), [&](std::uint64_t, const SparseFactor& u) {
        chosen[q] = u;
        if (q + 1 < ell) {
          const auto mark = forbidden.size();
          for (const auto i : u.index) forbidden.push_back(i + 1);
          self(self, q + 1, forbidden);
          forbidden.resize(mark);
          return;
        }
        for (std::uint32_t j = 0; j < y.p(); ++j) by_mode[j] = chosen[modes[j]];
        const double v = rank1_inner(split.first, by_mode);
        ++evaluated;
        if (v > best.value) {
          best.value = v;
          best.composition = comp;
          best.factors = chosen;
        }
      });
    };
    std::vector<std::uint32_t> forbidden;
    descend(descend, 0, forbidden);
  }

  GeneralRecovery out;
  out.composition = best.composition;
  out.argmax_value = best.value;
  out.candidates = evaluated;
  const auto modes = modes_of_composition(best.composition);
  for (std::uint32_t j = 0; j < y.p(); ++j) by_mode[j] = best.factors[modes[j]];
  for (std::uint32_t q = 0; q < ell; ++q) {
    const auto& f = best.factors[q];
    std::vector<std::uint32_t> support;
    std::vector<int> signs;
    for (std::size_t i = 0; i < f.index.size(); ++i) {
      support.push_back(f.index[i] + 1);
      signs.push_back(f.value[i] < 0 ? -1 : 1);
    }
    out.factors.emplace_back(y.n(), std::move(support), std::move(signs));
    std::uint32_t free_mode = 0;
    for (std::uint32_t j = 0; j < y.p(); ++j) {
      if (modes[j] == q) free_mode = j;
    }
    const auto alpha = contract_free_mode(split.second, by_mode, free_mode);
    out.supports.push_back(top_k_by_magnitude(alpha, k));
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

ThresholdReport threshold_lambda(std::uint32_t n, std::uint32_t p, const RecoveryParams& params,
                                 std::uint32_t ell) {
  params.validate();
  const double pd = p;
  const double t = params.t;
  const double k = params.k;
  const double prefactor = 32.0 * params.kappa / std::pow(params.A * params.eps, pd);
  const double lambda =
      prefactor * std::sqrt(ell * t * std::pow(k / t, pd) * std::log(n / params.delta));
  const double required =
      5.0 * std::pow(params.A, 2 * pd) * std::pow(params.eps / (1.0 - params.eps), pd - 1);
  return ThresholdReport{lambda, required, params.kappa >= required, params.kappa <= 1.0};
}

double calibrated_lambda(double c, std::uint32_t n, std::uint32_t k, std::uint32_t p,
                         std::uint32_t t, std::uint32_t ell) {
  const double kt = static_cast<double>(k) / t;
  return c * std::sqrt(static_cast<double>(ell) * t * std::pow(kt, p) * std::log(n));
}

bool RecoveryReport::all_exact() const {
  return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

double RecoveryReport::mean_overlap() const {
  if (overlap.empty()) return 0.0;
  return std::accumulate(overlap.begin(), overlap.end(), 0.0) / static_cast<double>(overlap.size());
}

RecoveryReport match_supports(const std::vector<std::vector<std::uint32_t>>& recovered,
                              const std::vector<std::vector<std::uint32_t>>& truth) {
  if (recovered.size() != truth.size()) {
    throw ParameterError("recovered and truth lists differ in length");
  }
  const std::size_t r = truth.size();
  struct Pair {
    std::size_t shared, i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < r; ++i) {
    auto a = recovered[i];
    std::sort(a.begin(), a.end());
    for (std::size_t j = 0; j < r; ++j) {
      auto b = truth[j];
      std::sort(b.begin(), b.end());
      std::vector<std::uint32_t> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      pairs.push_back({common.size(), i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.shared != b.shared) return a.shared > b.shared;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  RecoveryReport report;
  report.recovered = recovered;
  report.matching.assign(r, 0);
  report.exact.assign(r, false);
  report.overlap.assign(r, 0.0);
  std::vector<bool> used_i(r, false), used_j(r, false);
  for (const auto& pair : pairs) {
    if (used_i[pair.i] || used_j[pair.j]) continue;
    used_i[pair.i] = used_j[pair.j] = true;
    report.matching[pair.i] = static_cast<std::uint32_t>(pair.j);
    auto a = recovered[pair.i];
    auto b = truth[pair.j];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    report.exact[pair.i] = a == b;
    report.overlap[pair.i] =
        b.empty() ? 0.0 : static_cast<double>(pair.shared) / static_cast<double>(b.size());
  }
  return report;
}

double distinguishing_statistic(const DenseTensor& y, const DenseUnitVector& xhat) {
  return std::abs(rank1_inner(y, xhat.factor()));
}

Verdict distinguish(const DenseTensor& y, const DenseUnitVector& xhat, std::uint32_t k, double C) {
  const double threshold = C * std::sqrt(static_cast<double>(k) * std::log(y.n()));
  return distinguishing_statistic(y, xhat) >= threshold ? Verdict::planted : Verdict::null;
}

}  // namespace sstpca
