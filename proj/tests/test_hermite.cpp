#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "sstpca/hermite.hpp"

using namespace sstpca;

TEST(Hermite, LowOrders) {
  for (const double z : {-2.5, -0.3, 0.0, 1.0, 3.7}) {
    EXPECT_DOUBLE_EQ(hermite_normalized(0, z), 1.0);
    EXPECT_DOUBLE_EQ(hermite_normalized(1, z), z);
    EXPECT_NEAR(hermite_normalized(2, z), (z * z - 1.0) / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(hermite_normalized(3, z), (z * z * z - 3.0 * z) / std::sqrt(6.0), 1e-13);
    EXPECT_NEAR(hermite_normalized(4, z), (std::pow(z, 4) - 6 * z * z + 3) / std::sqrt(24.0), 1e-12);
  }
}

TEST(Hermite, StaysFiniteUpToDegreeForty) {
  for (std::uint32_t n = 0; n <= 40; ++n) EXPECT_TRUE(std::isfinite(hermite_normalized(n, 4.0)));
}

TEST(GaussHermite, WeightsFormAProbabilityRule) {
  const auto rule = gauss_hermite_rule(20);
  ASSERT_EQ(rule.nodes.size(), 20U);
  EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(rule.expectation([](double z) { return z * z; }), 1.0, 1e-12);
  EXPECT_NEAR(rule.expectation([](double z) { return std::pow(z, 4); }), 3.0, 1e-12);
}

TEST(GaussHermite, ShiftedMoment) {
  const double expected = 0.343 / std::sqrt(6.0);
  EXPECT_NEAR(hermite_moment(3, 0.7), expected, 1e-10);
  EXPECT_NEAR(hermite_moment(3, 0.7), 0.14002, 1e-5);
  for (std::uint32_t n = 0; n <= 10; ++n) {
    const double mu = -1.3;
    EXPECT_NEAR(hermite_moment(n, mu), std::pow(mu, n) / std::sqrt(std::tgamma(n + 1.0)), 1e-10);
  }
}

TEST(GaussHermite, Orthonormality) {
  for (std::uint32_t m = 0; m <= 8; ++m) {
    for (std::uint32_t n = 0; n <= 8; ++n) {
      EXPECT_NEAR(hermite_inner(m, n), m == n ? 1.0 : 0.0, 1e-10) << m << "," << n;
    }
  }
}
