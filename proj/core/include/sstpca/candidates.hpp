#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sstpca/tensor.hpp"

namespace sstpca {

/// C(n, r) in 64 bits; CapacityError on overflow.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r);

/// The vectors of U_t whose support avoids a forbidden set, in a fixed order.
///
/// Supports run through the t-subsets of the free coordinates in lexicographic
/// order. For each support the sign patterns follow binary counting with the
/// first support position most significant and '+' as 0. With an even order
/// parity, <u, x>^p = <-u, x>^p, so the first position is pinned to '+' and
/// only 2^(t-1) patterns are emitted.
///
/// Candidates are addressable by rank, which lets callers split the space into
/// contiguous rank ranges and still agree on tie-breaking.
class CandidateSet {
 public:
  /// `forbidden` holds 1-based coordinates. Throws InfeasibleError when fewer
  /// than t coordinates remain.
  CandidateSet(std::uint32_t n, std::uint32_t t, std::span<const std::uint32_t> forbidden,
               std::uint32_t order_parity);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t t() const noexcept { return t_; }
  bool sign_pruned() const noexcept { return pinned_; }
  std::uint64_t supports() const noexcept { return supports_; }
  std::uint64_t patterns_per_support() const noexcept { return patterns_; }
  std::uint64_t size() const noexcept { return supports_ * patterns_; }

  SparseSignVector at(std::uint64_t rank) const;

  /// Calls visit(rank, factor) for every rank in [first, last).
  template <class Visit>
  void for_each(std::uint64_t first, std::uint64_t last, Visit&& visit) const;

 private:
  std::vector<std::uint32_t> unrank_support(std::uint64_t support_rank) const;
  bool next_support(std::vector<std::uint32_t>& positions) const;
  void fill_factor(const std::vector<std::uint32_t>& positions, std::uint64_t pattern,
                   SparseFactor& f) const;

  std::uint32_t n_;
  std::uint32_t t_;
  bool pinned_;
  std::vector<std::uint32_t> free_;  // 0-based free coordinates, increasing
  std::uint64_t supports_;
  std::uint64_t patterns_;
  double magnitude_;
};

template <class Visit>
void CandidateSet::for_each(std::uint64_t first, std::uint64_t last, Visit&& visit) const {
  if (last > size()) last = size();
  if (first >= last) return;
  std::uint64_t support_rank = first / patterns_;
  std::uint64_t pattern = first % patterns_;
  auto positions = unrank_support(support_rank);
  SparseFactor f;
  f.n = n_;
  f.index.resize(t_);
  f.value.resize(t_);
  for (std::uint64_t rank = first; rank < last; ++rank) {
    fill_factor(positions, pattern, f);
    visit(rank, static_cast<const SparseFactor&>(f));
    if (++pattern == patterns_) {
      pattern = 0;
      if (!next_support(positions)) break;
    }
  }
}

}  // namespace sstpca
