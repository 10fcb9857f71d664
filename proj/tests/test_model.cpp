#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sstpca/error.hpp"
#include "sstpca/model.hpp"
#include "sstpca/rng.hpp"

using namespace sstpca;

namespace {

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  double worst = 0.0;
  for (std::uint64_t e = 0; e < a.size(); ++e) worst = std::max(worst, std::abs(a[e] - b[e]));
  return worst;
}

SignalSpec flat_spec(std::uint32_t n, std::uint32_t p, std::uint32_t k, std::vector<double> strengths) {
  SignalSpec spec;
  spec.n = n;
  spec.p = p;
  spec.k = k;
  spec.r = static_cast<std::uint32_t>(strengths.size());
  spec.strengths = std::move(strengths);
  return spec;
}

}  // namespace

TEST(Seeds, SubStreamsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (auto s : {Stream::noise, Stream::supports, Stream::signs, Stream::magnitudes, Stream::split,
                 Stream::prior, Stream::composition, Stream::trial}) {
    EXPECT_TRUE(seen.insert(derive_seed(42, s)).second);
    EXPECT_EQ(derive_seed(42, s), derive_seed(42, s));
  }
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
}

TEST(Rng, SampleWithoutReplacementIsDistinct) {
  Rng rng(3);
  const auto s = rng.sample_without_replacement(50, 50);
  EXPECT_EQ(std::set<std::uint32_t>(s.begin(), s.end()).size(), 50U);
  EXPECT_THROW(rng.sample_without_replacement(3, 4), ParameterError);
}

TEST(NoiseTensor, SameSeedSameBytes) {
  EXPECT_EQ(sample_noise_tensor(6, 3, 17), sample_noise_tensor(6, 3, 17));
  EXPECT_NE(sample_noise_tensor(6, 3, 17), sample_noise_tensor(6, 3, 18));
}

TEST(NoiseTensor, MeanAndVarianceAreStandard) {
  const auto w = sample_noise_tensor(20, 3, 1234);
  const double count = static_cast<double>(w.size());
  double mean = 0.0;
  for (const double v : w.data()) mean += v;
  mean /= count;
  double var = 0.0;
  for (const double v : w.data()) var += (v - mean) * (v - mean);
  var /= count - 1;
  EXPECT_LE(std::abs(mean), 4.0 / std::sqrt(count));
  EXPECT_GE(var, 0.95);
  EXPECT_LE(var, 1.05);
}

TEST(NoiseTensor, PooledMarginalsAtTenThousandEntries) {
  double sum = 0.0, sq = 0.0, count = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const double v : sample_noise_tensor(14, 3, seed).data()) {
      sum += v;
      sq += v * v;
      ++count;
    }
  }
  ASSERT_GE(count, 1e4);
  const double mean = sum / count;
  const double var = sq / count - mean * mean;
  EXPECT_LE(std::abs(mean), 4.0 / std::sqrt(count));
  EXPECT_LE(std::abs(var - 1.0), 5.0 / std::sqrt(count));
}

TEST(NoiseTensor, RespectsCap) { EXPECT_THROW(sample_noise_tensor(10, 3, 0, 100), CapacityError); }

TEST(FlatSignal, BasisVector) {
  const auto x = make_flat_signal(5, {3}, {1});
  EXPECT_EQ(x.entries(), (std::vector<double>{0, 0, 1, 0, 0}));
}

TEST(FlatSignal, MagnitudesAndNorm) {
  const auto x = make_flat_signal(10, {1, 4, 7, 9}, {1, -1, 1, -1});
  double norm = 0.0;
  for (const double v : x.entries()) {
    if (v != 0.0) EXPECT_EQ(std::abs(v), 0.5);
    norm += v * v;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(x.k(), 4U);
}

TEST(FlatSignal, RejectsDuplicatesAndBadLengths) {
  EXPECT_THROW(make_flat_signal(5, {2, 2}, {1, 1}), ParameterError);
  EXPECT_THROW(make_flat_signal(5, {1, 2}, {1}), ParameterError);
  EXPECT_THROW(make_flat_signal(5, {6}, {1}), IndexError);
}

TEST(ApxFlatSignal, UnitFlatnessIsExactlyFlat) {
  const auto s = sample_apx_flat_signal(30, 5, 1.0, 8);
  for (const double v : s.signal.entries()) {
    if (v != 0.0) EXPECT_NEAR(std::abs(v), 1.0 / std::sqrt(5.0), 1e-15);
  }
  EXPECT_EQ(s.effective_flatness, 1.0);
}

TEST(ApxFlatSignal, MagnitudesStayWithinSquaredBound) {
  const double lo = 1.0 / (4.0 * std::sqrt(8.0));
  const double hi = 4.0 / std::sqrt(8.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = sample_apx_flat_signal(50, 8, 2.0, seed);
    EXPECT_EQ(s.effective_flatness, 4.0);
    EXPECT_EQ(s.signal.k(), 8U);
    double norm = 0.0;
    for (const double v : s.signal.entries()) {
      norm += v * v;
      if (v == 0.0) continue;
      EXPECT_GE(std::abs(v), lo);
      EXPECT_LE(std::abs(v), hi);
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(ApxFlatSignal, RejectsBadParameters) {
  EXPECT_THROW(sample_apx_flat_signal(5, 6, 1.0, 0), ParameterError);
  EXPECT_THROW(sample_apx_flat_signal(5, 2, 0.5, 0), ParameterError);
}

TEST(Sstm, ZeroStrengthIsTheNoiseSubStream) {
  const auto inst = sample_sstm(flat_spec(8, 3, 2, {0.0}), 77);
  EXPECT_EQ(inst.observation, sample_noise_tensor(8, 3, derive_seed(77, Stream::noise)));
}

TEST(Sstm, MultiSpikeSupportsAreDisjoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = sample_sstm(flat_spec(10, 3, 3, {5.0, 4.0}), seed);
    ASSERT_EQ(inst.truth.size(), 2U);
    const auto a = inst.truth[0].support();
    const auto b = inst.truth[1].support();
    EXPECT_EQ(a.size(), 3U);
    EXPECT_EQ(b.size(), 3U);
    std::vector<std::uint32_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    EXPECT_TRUE(common.empty());
  }
}

TEST(Sstm, SubtractingTheSpikesRecoversTheNoise) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = sample_sstm(flat_spec(9, 3, 3, {30.0, 20.0}), seed);
    const auto spike = inst.spike_tensor();
    DenseTensor residual = inst.observation;
    for (std::uint64_t e = 0; e < residual.size(); ++e) residual[e] -= spike[e];
    EXPECT_LE(max_abs_diff(residual, sample_noise_tensor(9, 3, derive_seed(seed, Stream::noise))),
              1e-12);
  }
}

TEST(Sstm, IsDeterministic) {
  auto spec = flat_spec(8, 3, 2, {3.0});
  spec.mode = SignalMode::apx_flat;
  spec.A = 1.5;
  const auto a = sample_sstm(spec, 5);
  const auto b = sample_sstm(spec, 5);
  EXPECT_EQ(a.observation, b.observation);
  EXPECT_EQ(a.truth[0].entries(), b.truth[0].entries());
  EXPECT_EQ(a.effective_flatness, 2.25);
}

TEST(Sstm, NoiseScaleZeroIsNoiseFree) {
  auto spec = flat_spec(6, 3, 2, {2.0});
  spec.noise_scale = 0.0;
  const auto inst = sample_sstm(spec, 1);
  EXPECT_LE(max_abs_diff(inst.observation, inst.spike_tensor()), 0.0);
}

TEST(Sstm, RejectsInvalidSpecs) {
  EXPECT_THROW(sample_sstm(flat_spec(10, 3, 6, {1.0, 1.0}), 0), ParameterError);  // r k > n
  EXPECT_THROW(sample_sstm(flat_spec(10, 3, 2, {1.0, 2.0}), 0), ParameterError);  // increasing
  EXPECT_THROW(sample_sstm(flat_spec(10, 3, 11, {1.0}), 0), ParameterError);
  EXPECT_THROW(sample_sstm(flat_spec(10, 3, 0, {1.0}), 0), ParameterError);
  auto bad_a = flat_spec(10, 3, 2, {1.0});
  bad_a.A = 0.5;
  EXPECT_THROW(sample_sstm(bad_a, 0), ParameterError);
  auto wrong_count = flat_spec(10, 3, 2, {1.0});
  wrong_count.r = 2;
  EXPECT_THROW(sample_sstm(wrong_count, 0), ParameterError);
}

TEST(GeneralInstance, SingleFactorReducesToSingleSpike) {
  const auto general = sample_general_instance(12, 3, 3, 1, 7.0, 9);
  const auto single = sample_sstm(flat_spec(12, 3, 3, {7.0}), 9);
  EXPECT_EQ(general.observation, single.observation);
  EXPECT_EQ(general.truth[0].entries(), single.truth[0].entries());
  EXPECT_EQ(general.composition, std::vector<std::uint32_t>{3});
}

TEST(GeneralInstance, AllDistinctFactors) {
  const auto inst = sample_general_instance(12, 3, 2, 3, 5.0, 4);
  EXPECT_EQ(inst.composition, (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(inst.truth.size(), 3U);
  EXPECT_EQ(inst.mode_factors(), (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(GeneralInstance, CompositionsAreValidAndAllOccur) {
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = sample_general_instance(12, 4, 2, 2, 5.0, seed);
    std::uint32_t total = 0;
    for (const auto m : inst.composition) {
      EXPECT_GE(m, 1U);
      total += m;
    }
    EXPECT_EQ(total, 4U);
    seen.insert(inst.composition);
  }
  EXPECT_EQ(seen.size(), 3U);  // C(3, 1)
}

TEST(GeneralInstance, ReconstructionRecoversNoise) {
  const auto inst = sample_general_instance(10, 3, 3, 2, 11.0, 21);
  const auto spike = inst.spike_tensor();
  DenseTensor residual = inst.observation;
  for (std::uint64_t e = 0; e < residual.size(); ++e) residual[e] -= spike[e];
  EXPECT_LE(max_abs_diff(residual, sample_noise_tensor(10, 3, derive_seed(21, Stream::noise))), 1e-12);
}

TEST(GeneralInstance, RejectsEllAboveP) {
  EXPECT_THROW(sample_general_instance(10, 3, 2, 4, 1.0, 0), ParameterError);
}

TEST(Distinguishing, NullIsTheNoiseTensor) {
  const auto s = sample_distinguishing(8, 3, 2, 5.0, Hypothesis::null, 13);
  EXPECT_EQ(s.observation, sample_noise_tensor(8, 3, derive_seed(13, Stream::noise)));
  EXPECT_FALSE(s.prior.has_value());
}

TEST(Distinguishing, ZeroStrengthPlantedMatchesNull) {
  const auto h0 = sample_distinguishing(8, 3, 2, 0.0, Hypothesis::null, 13);
  const auto h1 = sample_distinguishing(8, 3, 2, 0.0, Hypothesis::planted, 13);
  EXPECT_EQ(h0.observation, h1.observation);
  ASSERT_TRUE(h1.prior.has_value());
}

TEST(Distinguishing, PriorSparsityConcentrates) {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto prior = sample_rademacher_prior(1000, 100, seed);
    std::uint32_t nonzero = 0;
    for (const double v : prior.x) {
      if (v == 0.0) continue;
      ++nonzero;
      EXPECT_EQ(std::abs(v), 0.1);
    }
    EXPECT_EQ(nonzero, prior.realized_sparsity);
    if (prior.realized_sparsity >= 60 && prior.realized_sparsity <= 140) ++inside;
  }
  EXPECT_GE(inside, 99);
}

TEST(Distinguishing, PlantedAddsThePriorSpike) {
  const auto s = sample_distinguishing(6, 3, 3, 4.0, Hypothesis::planted, 2);
  ASSERT_TRUE(s.prior.has_value());
  DenseTensor expected = sample_noise_tensor(6, 3, derive_seed(2, Stream::noise));
  add_rank1(expected, 4.0, factor_from_dense(s.prior->x));
  EXPECT_EQ(s.observation, expected);
}

TEST(SignalMode, ParsesNames) {
  EXPECT_EQ(parse_signal_mode("apx-flat"), SignalMode::apx_flat);
  EXPECT_EQ(to_string(SignalMode::general), "general");
  EXPECT_THROW(parse_signal_mode("dense"), ParameterError);
}
