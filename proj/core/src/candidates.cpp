#include "sstpca/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sstpca/error.hpp"

namespace sstpca {

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  __extension__ using u128 = unsigned __int128;
  u128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw CapacityError("binomial coefficient overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

CandidateSet::CandidateSet(std::uint32_t n, std::uint32_t t,
                           std::span<const std::uint32_t> forbidden, std::uint32_t order_parity)
    : n_(n), t_(t), pinned_(order_parity % 2 == 0) {
  if (t < 1) throw ParameterError("sparsity budget t must be at least 1");
  if (t > 63) throw CapacityError("sparsity budget t too large for sign enumeration");
  std::vector<bool> blocked(n, false);
  for (const auto c : forbidden) {
    if (c < 1 || c > n) throw IndexError("forbidden index outside [1, n]");
    blocked[c - 1] = true;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!blocked[i]) free_.push_back(i);
  }
  if (free_.size() < t) {
    throw InfeasibleError("only " + std::to_string(free_.size()) +
                          " coordinates remain outside the forbidden set, need t=" +
                          std::to_string(t));
  }
  supports_ = binomial_u64(free_.size(), t);
  patterns_ = std::uint64_t{1} << (pinned_ ? t - 1 : t);
  if (supports_ > std::numeric_limits<std::uint64_t>::max() / patterns_) {
    throw CapacityError("candidate count overflows 64 bits");
  }
  magnitude_ = 1.0 / std::sqrt(static_cast<double>(t));
}

std::vector<std::uint32_t> CandidateSet::unrank_support(std::uint64_t support_rank) const {
  // Lexicographic unranking of t-subsets of {0, ..., m-1}.
  const auto m = static_cast<std::uint32_t>(free_.size());
  std::vector<std::uint32_t> positions(t_);
  std::uint32_t c = 0;
  for (std::uint32_t i = 0; i < t_; ++i) {
    for (;; ++c) {
      const auto block = binomial_u64(m - c - 1, t_ - i - 1);
      if (support_rank < block) break;
      support_rank -= block;
    }
    positions[i] = c++;
  }
  return positions;
}

bool CandidateSet::next_support(std::vector<std::uint32_t>& positions) const {
  const auto m = static_cast<std::uint32_t>(free_.size());
  std::uint32_t i = t_;
  while (i > 0) {
    --i;
    if (positions[i] < m - t_ + i) {
      ++positions[i];
      for (std::uint32_t j = i + 1; j < t_; ++j) positions[j] = positions[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void CandidateSet::fill_factor(const std::vector<std::uint32_t>& positions, std::uint64_t pattern,
                               SparseFactor& f) const {
  const std::uint32_t counted = pinned_ ? t_ - 1 : t_;
  for (std::uint32_t i = 0; i < t_; ++i) {
    f.index[i] = free_[positions[i]];
    bool negative = false;
    if (!(pinned_ && i == 0)) {
      const std::uint32_t digit = pinned_ ? i - 1 : i;  // 0 is the most significant
      negative = ((pattern >> (counted - 1 - digit)) & 1U) != 0;
    }
    f.value[i] = negative ? -magnitude_ : magnitude_;
  }
}

SparseSignVector CandidateSet::at(std::uint64_t rank) const {
  if (rank >= size()) throw IndexError("candidate rank out of range");
  const auto positions = unrank_support(rank / patterns_);
  SparseFactor f;
  f.n = n_;
  f.index.resize(t_);
  f.value.resize(t_);
  fill_factor(positions, rank % patterns_, f);
  std::vector<std::uint32_t> support(t_);
  std::vector<int> signs(t_);
  for (std::uint32_t i = 0; i < t_; ++i) {
    support[i] = f.index[i] + 1;
    signs[i] = f.value[i] < 0 ? -1 : 1;
  }
  return SparseSignVector(n_, std::move(support), std::move(signs));
}

}  // namespace sstpca
