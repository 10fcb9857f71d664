#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sstpca {

inline constexpr std::uint64_t kDefaultEntryCap = std::uint64_t{1} << 27;

/// p-tuple of 1-based coordinates.
using MultiIndex = std::vector<std::uint32_t>;

/// n^p, or CapacityError if it overflows or exceeds `cap`.
std::uint64_t checked_entry_count(std::uint32_t n, std::uint32_t p,
                                  std::uint64_t cap = kDefaultEntryCap);

/// Lexicographic (row-major) linear index of a 1-based tuple.
std::uint64_t flat_index(std::span<const std::uint32_t> coords, std::uint32_t n);
/// Inverse of flat_index.
MultiIndex unflatten(std::uint64_t linear, std::uint32_t n, std::uint32_t p);

/// Dense order-p tensor over R^n, stored lexicographically.
class DenseTensor {
 public:
  DenseTensor(std::uint32_t n, std::uint32_t p, std::uint64_t entry_cap = kDefaultEntryCap);
  DenseTensor(std::uint32_t n, std::uint32_t p, std::vector<double> data,
              std::uint64_t entry_cap = kDefaultEntryCap);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return data_.size(); }
  /// Linear stride of mode `mode` (0-based): n^(p-1-mode).
  std::uint64_t stride(std::uint32_t mode) const noexcept { return strides_[mode]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> mutable_data() noexcept { return data_; }

  double operator[](std::uint64_t linear) const noexcept { return data_[linear]; }
  double& operator[](std::uint64_t linear) noexcept { return data_[linear]; }
  double at(std::span<const std::uint32_t> coords) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t p_;
  std::vector<std::uint64_t> strides_;
  std::vector<double> data_;
};

/// Nonzero pattern of a vector in R^n: 0-based indices and their values.
///
/// Every contraction kernel works on this form, so sparse and dense factors
/// share one code path whose cost is the product of nonzero counts.
struct SparseFactor {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  std::vector<double> to_dense() const;
};

/// The i-th standard basis vector (1-based).
SparseFactor basis_factor(std::uint32_t n, std::uint32_t i);
/// Nonzeros of a dense vector.
SparseFactor factor_from_dense(std::span<const double> x);

/// Element of U_t: t signed coordinates of magnitude 1/sqrt(t).
class SparseSignVector {
 public:
  /// `support` is 1-based and strictly increasing; `signs` entries are +1 or -1.
  SparseSignVector(std::uint32_t n, std::vector<std::uint32_t> support, std::vector<int> signs);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t t() const noexcept { return static_cast<std::uint32_t>(support_.size()); }
  const std::vector<std::uint32_t>& support() const noexcept { return support_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  double magnitude() const noexcept;

  SparseFactor factor() const;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseSignVector&, const SparseSignVector&) = default;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> support_;
  std::vector<int> signs_;
};

/// Unit vector stored densely; k is its number of nonzeros.
class DenseUnitVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit DenseUnitVector(std::vector<double> entries);

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(entries_.size()); }
  std::uint32_t k() const noexcept { return k_; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  /// 1-based indices of the nonzero entries, increasing.
  std::vector<std::uint32_t> support() const;

  SparseFactor factor() const { return factor_from_dense(entries_); }

 private:
  std::vector<double> entries_;
  std::uint32_t k_ = 0;
};

/// <Y, u_1 (x) ... (x) u_p>, touching only products of nonzeros.
///
/// When `touches` is non-null it is incremented once per tensor entry read.
double rank1_inner(const DenseTensor& y, std::span<const SparseFactor> factors,
                   std::uint64_t* touches = nullptr);

/// <Y, u^{(x)p}> for a single repeated factor.
double rank1_inner(const DenseTensor& y, const SparseFactor& u, std::uint64_t* touches = nullptr);

/// Contract every mode except `free_mode`; factors[free_mode] is ignored.
///
/// Entry l of the result is rank1_inner with e_l substituted at `free_mode`.
std::vector<double> contract_free_mode(const DenseTensor& y, std::span<const SparseFactor> factors,
                                       std::uint32_t free_mode);

/// alpha_l = <Y, v^{(x)(p-1)} (x) e_l> for all l, free slot in the last mode.
std::vector<double> contract_leave_one(const DenseTensor& y, const SparseFactor& v);
std::vector<double> contract_leave_one(const DenseTensor& y, const SparseSignVector& v);

/// Y += lambda * u_1 (x) ... (x) u_p. A zero lambda leaves Y untouched.
void add_rank1(DenseTensor& y, double lambda, std::span<const SparseFactor> factors);
void add_rank1(DenseTensor& y, double lambda, const SparseFactor& u);

}  // namespace sstpca
