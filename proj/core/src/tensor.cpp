#include "sstpca/tensor.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sstpca/error.hpp"

namespace sstpca {

std::uint64_t checked_entry_count(std::uint32_t n, std::uint32_t p, std::uint64_t cap) {
  if (n == 0) throw ParameterError("tensor dimension n must be positive");
  if (p < 2) throw ParameterError("tensor order p must be at least 2");
  std::uint64_t count = 1;
  for (std::uint32_t j = 0; j < p; ++j) {
    if (count > cap / n) {
      throw CapacityError("tensor with n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                          " exceeds the entry cap of " + std::to_string(cap));
    }
    count *= n;
  }
  return count;
}

std::uint64_t flat_index(std::span<const std::uint32_t> coords, std::uint32_t n) {
  std::uint64_t linear = 0;
  for (const auto c : coords) {
    if (c < 1 || c > n) {
      throw IndexError("coordinate " + std::to_string(c) + " outside [1, " + std::to_string(n) + "]");
    }
    linear = linear * n + (c - 1);
  }
  return linear;
}

MultiIndex unflatten(std::uint64_t linear, std::uint32_t n, std::uint32_t p) {
  MultiIndex coords(p);
  for (std::uint32_t j = p; j-- > 0;) {
    coords[j] = static_cast<std::uint32_t>(linear % n) + 1;
    linear /= n;
  }
  if (linear != 0) throw IndexError("linear index outside [0, n^p)");
  return coords;
}

DenseTensor::DenseTensor(std::uint32_t n, std::uint32_t p, std::uint64_t entry_cap)
    : n_(n), p_(p), strides_(p) {
  data_.assign(checked_entry_count(n, p, entry_cap), 0.0);
  std::uint64_t s = 1;
  for (std::uint32_t j = p; j-- > 0;) {
    strides_[j] = s;
    s *= n;
  }
}

DenseTensor::DenseTensor(std::uint32_t n, std::uint32_t p, std::vector<double> data,
                         std::uint64_t entry_cap)
    : DenseTensor(n, p, entry_cap) {
  if (data.size() != data_.size()) {
    throw DimensionError("tensor data has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

double DenseTensor::at(std::span<const std::uint32_t> coords) const {
  if (coords.size() != p_) throw DimensionError("multi-index length differs from tensor order");
  return data_[flat_index(coords, n_)];
}

std::vector<double> SparseFactor::to_dense() const {
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < index.size(); ++i) x[index[i]] = value[i];
  return x;
}

SparseFactor basis_factor(std::uint32_t n, std::uint32_t i) {
  if (i < 1 || i > n) throw IndexError("basis index outside [1, n]");
  return SparseFactor{n, {i - 1}, {1.0}};
}

SparseFactor factor_from_dense(std::span<const double> x) {
  SparseFactor f;
  f.n = static_cast<std::uint32_t>(x.size());
  for (std::uint32_t i = 0; i < f.n; ++i) {
    if (x[i] != 0.0) {
      f.index.push_back(i);
      f.value.push_back(x[i]);
    }
  }
  return f;
}

SparseSignVector::SparseSignVector(std::uint32_t n, std::vector<std::uint32_t> support,
                                   std::vector<int> signs)
    : n_(n), support_(std::move(support)), signs_(std::move(signs)) {
  if (support_.empty() || support_.size() > n_) {
    throw ParameterError("sparse sign vector needs 1 <= t <= n");
  }
  if (signs_.size() != support_.size()) {
    throw ParameterError("sparse sign vector: signs and support differ in length");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] < 1 || support_[i] > n_) throw IndexError("support index outside [1, n]");
    if (i > 0 && support_[i] <= support_[i - 1]) {
      throw ParameterError("support must be strictly increasing");
    }
    if (signs_[i] != 1 && signs_[i] != -1) throw ParameterError("signs must be +1 or -1");
  }
}

double SparseSignVector::magnitude() const noexcept {
  return 1.0 / std::sqrt(static_cast<double>(support_.size()));
}

SparseFactor SparseSignVector::factor() const {
  SparseFactor f;
  f.n = n_;
  const double m = magnitude();
  f.index.reserve(support_.size());
  f.value.reserve(support_.size());
  for (std::size_t i = 0; i < support_.size(); ++i) {
    f.index.push_back(support_[i] - 1);
    f.value.push_back(signs_[i] * m);
  }
  return f;
}

std::vector<double> SparseSignVector::to_dense() const { return factor().to_dense(); }

DenseUnitVector::DenseUnitVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ParameterError("unit vector must have positive dimension");
  double sq = 0.0;
  for (const double v : entries_) {
    sq += v * v;
    if (v != 0.0) ++k_;
  }
  if (std::abs(std::sqrt(sq) - 1.0) > kNormTolerance) {
    throw ParameterError("vector is not unit norm (norm " + std::to_string(std::sqrt(sq)) + ")");
  }
}

std::vector<std::uint32_t> DenseUnitVector::support() const {
  std::vector<std::uint32_t> s;
  s.reserve(k_);
  for (std::uint32_t i = 0; i < n(); ++i) {
    if (entries_[i] != 0.0) s.push_back(i + 1);
  }
  return s;
}

namespace {

using FactorRefs = std::vector<const SparseFactor*>;

FactorRefs refs_of(std::span<const SparseFactor> factors) {
  FactorRefs refs;
  refs.reserve(factors.size());
  for (const auto& f : factors) refs.push_back(&f);
  return refs;
}

void check_factors(const DenseTensor& y, const FactorRefs& factors, std::uint32_t skip) {
  if (factors.size() != y.p()) {
    throw DimensionError("expected " + std::to_string(y.p()) + " factors, got " +
                         std::to_string(factors.size()));
  }
  for (std::uint32_t j = 0; j < factors.size(); ++j) {
    if (j != skip && factors[j]->n != y.n()) {
      throw DimensionError("factor dimension " + std::to_string(factors[j]->n) +
                           " differs from tensor dimension " + std::to_string(y.n()));
    }
  }
}

// Visits every combination of nonzeros over all modes except `skip`
// (odometer order, last mode fastest), passing the accumulated linear offset
// and the product of factor values.
template <class Visit>
void for_each_combination(const DenseTensor& y, const FactorRefs& factors, std::uint32_t skip,
                          Visit&& visit) {
  std::uint32_t modes[64];
  std::size_t m = 0;
  for (std::uint32_t j = 0; j < y.p(); ++j) {
    if (j == skip) continue;
    if (factors[j]->index.empty()) return;
    modes[m++] = j;
  }
  if (m == 0) {
    visit(std::uint64_t{0}, 1.0);
    return;
  }
  std::size_t pos[64] = {};
  std::uint64_t offset[65];
  double weight[65];
  offset[0] = 0;
  weight[0] = 1.0;
  std::size_t level = 0;
  for (;;) {
    for (std::size_t j = level; j < m; ++j) {
      const SparseFactor& f = *factors[modes[j]];
      offset[j + 1] = offset[j] + f.index[pos[j]] * y.stride(modes[j]);
      weight[j + 1] = weight[j] * f.value[pos[j]];
    }
    visit(offset[m], weight[m]);
    std::size_t j = m;
    for (;;) {
      --j;
      if (++pos[j] < factors[modes[j]]->index.size()) break;
      pos[j] = 0;
      if (j == 0) return;
    }
    level = j;
  }
}

constexpr std::uint32_t kMaxOrder = 64;

void check_order(const DenseTensor& y) {
  if (y.p() > kMaxOrder) throw CapacityError("tensor order above 64 is not supported");
}

double inner(const DenseTensor& y, const FactorRefs& factors, std::uint64_t* touches) {
  check_order(y);
  check_factors(y, factors, y.p());
  const auto data = y.data();
  double sum = 0.0;
  std::uint64_t count = 0;
  for_each_combination(y, factors, y.p(), [&](std::uint64_t off, double w) {
    sum += data[off] * w;
    ++count;
  });
  if (touches != nullptr) *touches += count;
  return sum;
}

std::vector<double> contract(const DenseTensor& y, const FactorRefs& factors,
                             std::uint32_t free_mode) {
  check_order(y);
  if (free_mode >= y.p()) throw IndexError("free mode outside [0, p)");
  check_factors(y, factors, free_mode);
  const auto data = y.data();
  const std::uint64_t step = y.stride(free_mode);
  std::vector<double> alpha(y.n(), 0.0);
  for_each_combination(y, factors, free_mode, [&](std::uint64_t off, double w) {
    for (std::uint32_t l = 0; l < alpha.size(); ++l) alpha[l] += data[off + l * step] * w;
  });
  return alpha;
}

void add(DenseTensor& y, double lambda, const FactorRefs& factors) {
  check_order(y);
  check_factors(y, factors, y.p());
  if (lambda == 0.0) return;
  auto data = y.mutable_data();
  for_each_combination(y, factors, y.p(),
                       [&](std::uint64_t off, double w) { data[off] += lambda * w; });
}

}  // namespace

double rank1_inner(const DenseTensor& y, std::span<const SparseFactor> factors,
                   std::uint64_t* touches) {
  return inner(y, refs_of(factors), touches);
}

double rank1_inner(const DenseTensor& y, const SparseFactor& u, std::uint64_t* touches) {
  return inner(y, FactorRefs(y.p(), &u), touches);
}

std::vector<double> contract_free_mode(const DenseTensor& y, std::span<const SparseFactor> factors,
                                       std::uint32_t free_mode) {
  if (factors.size() != y.p()) {
    throw DimensionError("expected " + std::to_string(y.p()) + " factors");
  }
  return contract(y, refs_of(factors), free_mode);
}

std::vector<double> contract_leave_one(const DenseTensor& y, const SparseFactor& v) {
  if (v.n != y.n()) throw DimensionError("vector dimension differs from tensor dimension");
  return contract(y, FactorRefs(y.p(), &v), y.p() - 1);
}

std::vector<double> contract_leave_one(const DenseTensor& y, const SparseSignVector& v) {
  return contract_leave_one(y, v.factor());
}

void add_rank1(DenseTensor& y, double lambda, std::span<const SparseFactor> factors) {
  add(y, lambda, refs_of(factors));
}

void add_rank1(DenseTensor& y, double lambda, const SparseFactor& u) {
  add(y, lambda, FactorRefs(y.p(), &u));
}

}  // namespace sstpca
