#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sstpca/error.hpp"
#include "sstpca/rng.hpp"
#include "sstpca/tensor.hpp"

using namespace sstpca;

namespace {

DenseTensor random_tensor(std::uint32_t n, std::uint32_t p, Rng& rng) {
  DenseTensor y(n, p);
  for (auto& v : y.mutable_data()) v = rng.normal();
  return y;
}

SparseSignVector random_sign_vector(std::uint32_t n, std::uint32_t t, Rng& rng) {
  auto support = rng.sample_without_replacement(n, t);
  std::sort(support.begin(), support.end());
  std::vector<int> signs;
  for (auto& i : support) {
    ++i;
    signs.push_back(rng.sign());
  }
  return SparseSignVector(n, support, signs);
}

std::vector<double> random_unit(std::uint32_t n, Rng& rng) {
  std::vector<double> x(n);
  double norm = 0.0;
  for (auto& v : x) {
    v = rng.normal();
    norm += v * v;
  }
  for (auto& v : x) v /= std::sqrt(norm);
  return x;
}

}  // namespace

TEST(FlatIndex, LexicographicExamples) {
  const std::vector<std::uint32_t> first{1, 1};
  const std::vector<std::uint32_t> second{2, 3};
  EXPECT_EQ(flat_index(first, 3), 0U);
  EXPECT_EQ(flat_index(second, 3), 5U);
}

TEST(FlatIndex, RoundTripsRandomTuples) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    MultiIndex idx(3);
    for (auto& c : idx) c = static_cast<std::uint32_t>(rng.below(4)) + 1;
    EXPECT_EQ(unflatten(flat_index(idx, 4), 4, 3), idx);
  }
}

TEST(FlatIndex, IsABijection) {
  for (std::uint64_t e = 0; e < 64; ++e) EXPECT_EQ(flat_index(unflatten(e, 4, 3), 4), e);
}

TEST(FlatIndex, RejectsOutOfRange) {
  const std::vector<std::uint32_t> zero{0, 1};
  const std::vector<std::uint32_t> big{1, 4};
  EXPECT_THROW(flat_index(zero, 3), IndexError);
  EXPECT_THROW(flat_index(big, 3), IndexError);
  EXPECT_THROW(unflatten(27, 3, 3), IndexError);
}

TEST(DenseTensor, HasNToThePEntries) {
  DenseTensor y(3, 4);
  EXPECT_EQ(y.size(), 81U);
  for (const double v : y.data()) EXPECT_EQ(v, 0.0);
}

TEST(DenseTensor, RefusesEntryCountAboveCap) {
  EXPECT_THROW(DenseTensor(100, 5), CapacityError);
  EXPECT_THROW(DenseTensor(10, 3, 999), CapacityError);
  EXPECT_NO_THROW(DenseTensor(10, 3, 1000));
  EXPECT_THROW(checked_entry_count(1u << 31, 4), CapacityError);
}

TEST(DenseTensor, RejectsBadShapes) {
  EXPECT_THROW(DenseTensor(3, 1), ParameterError);
  EXPECT_THROW(DenseTensor(0, 2), ParameterError);
  EXPECT_THROW(DenseTensor(2, 2, std::vector<double>(3)), DimensionError);
}

TEST(DenseTensor, AtReadsByTuple) {
  std::vector<double> data(9);
  for (int i = 0; i < 9; ++i) data[i] = i;
  const DenseTensor y(3, 2, data);
  const std::vector<std::uint32_t> idx{3, 2};
  EXPECT_EQ(y.at(idx), 7.0);
}

TEST(SparseSignVector, ValidatesInput) {
  EXPECT_THROW(SparseSignVector(4, {2, 1}, {1, 1}), ParameterError);
  EXPECT_THROW(SparseSignVector(4, {1, 5}, {1, 1}), IndexError);
  EXPECT_THROW(SparseSignVector(4, {1, 2}, {1}), ParameterError);
  EXPECT_THROW(SparseSignVector(4, {1, 2}, {1, 0}), ParameterError);
}

TEST(SparseSignVector, DenseFormHasUnitNorm) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto v = random_sign_vector(12, 1 + static_cast<std::uint32_t>(rng.below(12)), rng);
    double norm = 0.0;
    for (const double x : v.to_dense()) norm += x * x;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  }
}

TEST(DenseUnitVector, RecordsSparsityAndChecksNorm) {
  const DenseUnitVector x({0.0, 0.6, 0.0, -0.8});
  EXPECT_EQ(x.k(), 2U);
  EXPECT_EQ(x.support(), (std::vector<std::uint32_t>{2, 4}));
  EXPECT_THROW(DenseUnitVector({0.5, 0.5}), ParameterError);
}

TEST(Rank1Inner, ZeroTensorGivesZero) {
  const DenseTensor y(3, 3);
  const SparseSignVector v(3, {1, 3}, {1, -1});
  EXPECT_EQ(rank1_inner(y, v.factor()), 0.0);
}

TEST(Rank1Inner, DeltaTensor) {
  DenseTensor y(2, 3);
  y[0] = 1.0;
  EXPECT_EQ(rank1_inner(y, basis_factor(2, 1)), 1.0);
}

TEST(Rank1Inner, SparsePathMatchesFullSum) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = random_tensor(3, 3, rng);
    std::vector<SparseFactor> factors;
    std::vector<oracle::Vec> dense;
    for (int j = 0; j < 3; ++j) {
      const auto v = random_sign_vector(3, 2, rng);
      factors.push_back(v.factor());
      dense.push_back(v.to_dense());
    }
    EXPECT_NEAR(rank1_inner(y, factors), oracle::inner(y, dense), 1e-12);
  }
}

TEST(Rank1Inner, MixedSparseAndDenseFactorsOnSmallShapes) {
  Rng rng(22);
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (std::uint32_t p = 2; p <= 4; ++p) {
      const auto y = random_tensor(n, p, rng);
      std::vector<SparseFactor> factors;
      std::vector<oracle::Vec> dense;
      for (std::uint32_t j = 0; j < p; ++j) {
        if (j % 2 == 0) {
          const auto v = random_sign_vector(n, 1 + static_cast<std::uint32_t>(rng.below(std::min(n, 3u))), rng);
          factors.push_back(v.factor());
          dense.push_back(v.to_dense());
        } else {
          const auto x = random_unit(n, rng);
          factors.push_back(factor_from_dense(x));
          dense.push_back(x);
        }
      }
      EXPECT_NEAR(rank1_inner(y, factors), oracle::inner(y, dense), 1e-12) << n << " " << p;
    }
  }
}

TEST(Rank1Inner, IsLinearInTheTensor) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_tensor(4, 3, rng);
    const auto z = random_tensor(4, 3, rng);
    const double a = rng.uniform(-3, 3);
    const double b = rng.uniform(-3, 3);
    DenseTensor mix(4, 3);
    for (std::uint64_t e = 0; e < mix.size(); ++e) mix[e] = a * y[e] + b * z[e];
    const auto u = random_sign_vector(4, 2, rng).factor();
    EXPECT_NEAR(rank1_inner(mix, u), a * rank1_inner(y, u) + b * rank1_inner(z, u), 1e-10);
  }
}

TEST(Rank1Inner, TouchesOnlySupportProducts) {
  Rng rng(24);
  const auto y = random_tensor(10, 3, rng);
  const auto u = random_sign_vector(10, 3, rng).factor();
  std::uint64_t touches = 0;
  rank1_inner(y, u, &touches);
  EXPECT_EQ(touches, 27U);
}

TEST(Rank1Inner, RejectsMismatchedFactors) {
  const DenseTensor y(3, 3);
  const auto e = basis_factor(4, 1);
  EXPECT_THROW(rank1_inner(y, e), DimensionError);
  const std::vector<SparseFactor> two{basis_factor(3, 1), basis_factor(3, 2)};
  EXPECT_THROW(rank1_inner(y, two), DimensionError);
}

TEST(ContractLeaveOne, ZeroTensorGivesZeroVector) {
  const DenseTensor y(4, 3);
  const auto alpha = contract_leave_one(y, SparseSignVector(4, {2}, {1}));
  EXPECT_EQ(alpha, std::vector<double>(4, 0.0));
}

TEST(ContractLeaveOne, MatrixVectorProduct) {
  const DenseTensor y(2, 2, {1.0, 0.0, 0.0, 1.0});
  const auto alpha = contract_leave_one(y, SparseSignVector(2, {1}, {1}));
  EXPECT_EQ(alpha, (std::vector<double>{1.0, 0.0}));
}

TEST(ContractLeaveOne, EachEntryMatchesRank1Inner) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = random_tensor(4, 3, rng);
    const auto v = random_sign_vector(4, 2, rng);
    const auto alpha = contract_leave_one(y, v);
    ASSERT_EQ(alpha.size(), 4U);
    for (std::uint32_t l = 0; l < 4; ++l) {
      const std::vector<SparseFactor> factors{v.factor(), v.factor(), basis_factor(4, l + 1)};
      EXPECT_NEAR(alpha[l], rank1_inner(y, factors), 1e-12);
      EXPECT_NEAR(alpha[l], oracle::inner(y, {v.to_dense(), v.to_dense(), oracle::basis(4, l)}),
                  1e-12);
    }
  }
}

TEST(ContractFreeMode, MatchesFullSumForEveryMode) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_tensor(3, 4, rng);
    std::vector<SparseFactor> factors;
    std::vector<oracle::Vec> dense;
    for (int j = 0; j < 4; ++j) {
      const auto v = random_sign_vector(3, 1 + static_cast<std::uint32_t>(rng.below(3)), rng);
      factors.push_back(v.factor());
      dense.push_back(v.to_dense());
    }
    for (std::uint32_t mode = 0; mode < 4; ++mode) {
      const auto alpha = contract_free_mode(y, factors, mode);
      for (std::uint32_t l = 0; l < 3; ++l) {
        auto probe = dense;
        probe[mode] = oracle::basis(3, l);
        EXPECT_NEAR(alpha[l], oracle::inner(y, probe), 1e-12);
      }
    }
  }
}

TEST(AddRank1, ZeroLambdaLeavesTensorBitwise) {
  Rng rng(41);
  auto y = random_tensor(4, 3, rng);
  const auto before = y;
  add_rank1(y, 0.0, random_sign_vector(4, 2, rng).factor());
  EXPECT_EQ(y, before);
}

TEST(AddRank1, OuterProductOfFlatVector) {
  DenseTensor y(3, 2);
  add_rank1(y, 1.0, SparseSignVector(3, {1, 2}, {1, 1}).factor());
  const std::vector<double> expected{0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0};
  for (std::uint64_t e = 0; e < 9; ++e) EXPECT_NEAR(y[e], expected[e], 1e-15);
}

TEST(AddRank1, ThenInnerReturnsLambda) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    DenseTensor y(6, 3);
    const double lambda = rng.uniform(-5, 5);
    const auto x = random_sign_vector(6, 1 + static_cast<std::uint32_t>(rng.below(6)), rng).factor();
    add_rank1(y, lambda, x);
    EXPECT_NEAR(rank1_inner(y, x), lambda, 1e-12);
  }
}

TEST(AddRank1, DistinctFactorsMatchOuterProduct) {
  Rng rng(43);
  DenseTensor y(3, 3);
  std::vector<SparseFactor> factors;
  std::vector<oracle::Vec> dense;
  for (int j = 0; j < 3; ++j) {
    const auto x = random_unit(3, rng);
    factors.push_back(factor_from_dense(x));
    dense.push_back(x);
  }
  add_rank1(y, 2.5, factors);
  for (std::uint64_t e = 0; e < y.size(); ++e) {
    const auto idx = unflatten(e, 3, 3);
    EXPECT_NEAR(y[e], 2.5 * dense[0][idx[0] - 1] * dense[1][idx[1] - 1] * dense[2][idx[2] - 1],
                1e-14);
  }
}

TEST(AddRank1, RejectsDimensionMismatch) {
  DenseTensor y(3, 2);
  EXPECT_THROW(add_rank1(y, 1.0, basis_factor(4, 1)), DimensionError);
}
