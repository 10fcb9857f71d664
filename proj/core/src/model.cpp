#include "sstpca/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sstpca/error.hpp"
#include "sstpca/rng.hpp"

namespace sstpca {

std::string to_string(SignalMode mode) {
  switch (mode) {
    case SignalMode::flat: return "flat";
    case SignalMode::apx_flat: return "apx-flat";
    case SignalMode::general: return "general";
  }
  return "flat";
}

SignalMode parse_signal_mode(const std::string& text) {
  if (text == "flat") return SignalMode::flat;
  if (text == "apx-flat") return SignalMode::apx_flat;
  if (text == "general") return SignalMode::general;
  throw ParameterError("unknown signal mode '" + text + "'");
}

void SignalSpec::validate() const {
  if (n == 0) throw ParameterError("n must be positive");
  if (p < 2) throw ParameterError("p must be at least 2");
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  if (!(A >= 1.0)) throw ParameterError("flatness A must be >= 1");
  if (!(noise_scale >= 0.0)) throw ParameterError("noise scale must be non-negative");
  if (mode == SignalMode::general) {
    if (ell < 1 || ell > p) throw ParameterError("ell must satisfy 1 <= ell <= p");
    if (strengths.size() != 1) throw ParameterError("general mode takes exactly one strength");
    if (std::uint64_t{ell} * k > n) throw ParameterError("ell * k exceeds n; supports cannot be disjoint");
  } else {
    if (r < 1) throw ParameterError("r must be at least 1");
    if (strengths.size() != r) throw ParameterError("need exactly r strengths");
    if (std::uint64_t{r} * k > n) throw ParameterError("r * k exceeds n; supports cannot be disjoint");
  }
  for (std::size_t i = 0; i < strengths.size(); ++i) {
    if (!(strengths[i] >= 0.0) || !std::isfinite(strengths[i])) {
      throw ParameterError("strengths must be finite and non-negative");
    }
    if (i > 0 && strengths[i] > strengths[i - 1]) {
      throw ParameterError("strengths must be non-increasing");
    }
  }
}

std::vector<std::uint32_t> modes_of_composition(const std::vector<std::uint32_t>& composition) {
  std::vector<std::uint32_t> modes;
  for (std::uint32_t q = 0; q < composition.size(); ++q) modes.insert(modes.end(), composition[q], q);
  return modes;
}

std::vector<std::uint32_t> SstmInstance::mode_factors() const {
  return modes_of_composition(composition);
}

DenseTensor SstmInstance::spike_tensor() const {
  DenseTensor out(observation.n(), observation.p());
  if (spec.mode == SignalMode::general) {
    std::vector<SparseFactor> factors;
    for (const auto q : mode_factors()) factors.push_back(truth[q].factor());
    add_rank1(out, strengths.front(), factors);
  } else {
    for (std::size_t q = 0; q < truth.size(); ++q) add_rank1(out, strengths[q], truth[q].factor());
  }
  return out;
}

DenseTensor sample_noise_tensor(std::uint32_t n, std::uint32_t p, std::uint64_t seed,
                                std::uint64_t entry_cap) {
  DenseTensor w(n, p, entry_cap);
  Rng rng(seed);
  for (auto& v : w.mutable_data()) v = rng.normal();
  return w;
}

DenseUnitVector make_flat_signal(std::uint32_t n, const std::vector<std::uint32_t>& support,
                                 const std::vector<int>& signs) {
  if (support.empty() || support.size() != signs.size()) {
    throw ParameterError("flat signal needs matching non-empty support and sign lists");
  }
  const std::set<std::uint32_t> unique(support.begin(), support.end());
  if (unique.size() != support.size()) throw ParameterError("flat signal support has duplicates");
  const double m = 1.0 / std::sqrt(static_cast<double>(support.size()));
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 1 || support[i] > n) throw IndexError("support index outside [1, n]");
    if (signs[i] != 1 && signs[i] != -1) throw ParameterError("signs must be +1 or -1");
    x[support[i] - 1] = signs[i] * m;
  }
  return DenseUnitVector(std::move(x));
}

namespace {

// Supports for `count` signals of size k, disjoint: draw count*k indices
// without replacement and cut the draw into consecutive chunks.
std::vector<std::vector<std::uint32_t>> disjoint_supports(std::uint32_t n, std::uint32_t k,
                                                          std::uint32_t count, Rng& rng) {
  const auto draw = rng.sample_without_replacement(n, count * k);
  std::vector<std::vector<std::uint32_t>> supports(count);
  for (std::uint32_t q = 0; q < count; ++q) {
    for (std::uint32_t i = 0; i < k; ++i) supports[q].push_back(draw[q * k + i] + 1);
    std::sort(supports[q].begin(), supports[q].end());
  }
  return supports;
}

std::vector<int> draw_signs(std::uint32_t k, Rng& rng) {
  std::vector<int> signs(k);
  for (auto& s : signs) s = rng.sign();
  return signs;
}

DenseUnitVector apx_flat_on_support(std::uint32_t n, const std::vector<std::uint32_t>& support,
                                    double A, Rng& magnitudes, Rng& signs) {
  const double root_k = std::sqrt(static_cast<double>(support.size()));
  std::vector<double> x(n, 0.0);
  double sq = 0.0;
  for (const auto i : support) {
    const double m = magnitudes.uniform(1.0 / (A * root_k), A / root_k);
    x[i - 1] = signs.sign() * m;
    sq += m * m;
  }
  const double norm = std::sqrt(sq);
  for (auto& v : x) v /= norm;
  // Renormalization scales by a factor in [1/A, A], hence the A^2 bound.
  const double lo = 1.0 / (A * A * root_k);
  const double hi = A * A / root_k;
  constexpr double slack = 1e-12;
  for (const auto i : support) {
    const double m = std::abs(x[i - 1]);
    if (m < lo * (1 - slack) || m > hi * (1 + slack)) {
      throw Error("approximately flat signal violates its A^2 magnitude bound");
    }
  }
  return DenseUnitVector(std::move(x));
}

}  // namespace

ApxFlatSignal sample_apx_flat_signal(std::uint32_t n, std::uint32_t k, double A, std::uint64_t seed) {
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  if (!(A >= 1.0)) throw ParameterError("flatness A must be >= 1");
  Rng supports_rng(derive_seed(seed, Stream::supports));
  Rng magnitude_rng(derive_seed(seed, Stream::magnitudes));
  Rng sign_rng(derive_seed(seed, Stream::signs));
  const auto support = disjoint_supports(n, k, 1, supports_rng).front();
  return ApxFlatSignal{apx_flat_on_support(n, support, A, magnitude_rng, sign_rng), A * A};
}

namespace {

DenseTensor scaled_noise(const SignalSpec& spec, std::uint64_t seed) {
  auto w = sample_noise_tensor(spec.n, spec.p, derive_seed(seed, Stream::noise));
  if (spec.noise_scale != 1.0) {
    for (auto& v : w.mutable_data()) v *= spec.noise_scale;
  }
  return w;
}

SstmInstance sample_general(const SignalSpec& spec, std::uint64_t seed) {
  Rng supports_rng(derive_seed(seed, Stream::supports));
  Rng sign_rng(derive_seed(seed, Stream::signs));
  Rng composition_rng(derive_seed(seed, Stream::composition));

  // Uniform composition: ell-1 distinct cut points among the p-1 gaps.
  auto cuts = composition_rng.sample_without_replacement(spec.p - 1, spec.ell - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint32_t> composition;
  std::uint32_t previous = 0;
  for (const auto c : cuts) {
    composition.push_back(c + 1 - previous);
    previous = c + 1;
  }
  composition.push_back(spec.p - previous);

  std::vector<DenseUnitVector> truth;
  for (const auto& support : disjoint_supports(spec.n, spec.k, spec.ell, supports_rng)) {
    truth.push_back(make_flat_signal(spec.n, support, draw_signs(spec.k, sign_rng)));
  }

  SstmInstance inst{scaled_noise(spec, seed), std::move(truth), spec.strengths, seed, spec,
                    std::move(composition), 1.0};
  std::vector<SparseFactor> factors;
  for (const auto q : inst.mode_factors()) factors.push_back(inst.truth[q].factor());
  add_rank1(inst.observation, spec.strengths.front(), factors);
  return inst;
}

}  // namespace

SstmInstance sample_sstm(const SignalSpec& spec, std::uint64_t seed) {
  spec.validate();
  checked_entry_count(spec.n, spec.p);
  if (spec.mode == SignalMode::general) return sample_general(spec, seed);

  Rng supports_rng(derive_seed(seed, Stream::supports));
  Rng sign_rng(derive_seed(seed, Stream::signs));
  Rng magnitude_rng(derive_seed(seed, Stream::magnitudes));

  std::vector<DenseUnitVector> truth;
  for (const auto& support : disjoint_supports(spec.n, spec.k, spec.r, supports_rng)) {
    if (spec.mode == SignalMode::flat) {
      truth.push_back(make_flat_signal(spec.n, support, draw_signs(spec.k, sign_rng)));
    } else {
      truth.push_back(apx_flat_on_support(spec.n, support, spec.A, magnitude_rng, sign_rng));
    }
  }
  const double flatness = spec.mode == SignalMode::flat ? 1.0 : spec.A * spec.A;
  SstmInstance inst{scaled_noise(spec, seed), std::move(truth), spec.strengths, seed, spec, {},
                    flatness};
  for (std::size_t q = 0; q < inst.truth.size(); ++q) {
    add_rank1(inst.observation, spec.strengths[q], inst.truth[q].factor());
  }
  return inst;
}

SstmInstance sample_general_instance(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                     std::uint32_t ell, double lambda, std::uint64_t seed) {
  if (ell > p) throw ParameterError("ell must not exceed p");
  SignalSpec spec;
  spec.n = n;
  spec.p = p;
  spec.k = k;
  spec.r = 1;
  spec.ell = ell;
  spec.strengths = {lambda};
  spec.mode = SignalMode::general;
  return sample_sstm(spec, seed);
}

RademacherPriorSample sample_rademacher_prior(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  Rng rng(seed);
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(k));
  const double half = static_cast<double>(k) / (2.0 * n);
  RademacherPriorSample sample;
  sample.x.assign(n, 0.0);
  for (auto& v : sample.x) {
    const double u = rng.uniform01();
    if (u < half) {
      v = magnitude;
    } else if (u < 2 * half) {
      v = -magnitude;
    }
    if (v != 0.0) ++sample.realized_sparsity;
  }
  return sample;
}

DistinguishingSample sample_distinguishing(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                           double lambda, Hypothesis hypothesis,
                                           std::uint64_t seed) {
  if (k < 1 || k > n) throw ParameterError("k must satisfy 1 <= k <= n");
  DistinguishingSample out{sample_noise_tensor(n, p, derive_seed(seed, Stream::noise)), std::nullopt};
  if (hypothesis == Hypothesis::planted) {
    out.prior = sample_rademacher_prior(n, k, derive_seed(seed, Stream::prior));
    add_rank1(out.observation, lambda, factor_from_dense(out.prior->x));
  }
  return out;
}

}  // namespace sstpca
