#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sstpca/tensor.hpp"

namespace sstpca {

enum class SignalMode { flat, apx_flat, general };

std::string to_string(SignalMode mode);
SignalMode parse_signal_mode(const std::string& text);

/// Parameters of the sparse spiked tensor model Y = W + sum_q lambda_q x_q^{(x)p}.
struct SignalSpec {
  std::uint32_t n = 0;
  std::uint32_t p = 3;
  std::uint32_t k = 1;
  double A = 1.0;                 ///< flatness bound, >= 1
  std::uint32_t r = 1;            ///< number of spikes
  std::vector<double> strengths;  ///< non-increasing; zeros allowed for pure noise
  SignalMode mode = SignalMode::flat;
  std::uint32_t ell = 1;          ///< distinct factors, general mode only
  double noise_scale = 1.0;       ///< 0 gives a noise-free observation (debugging)

  /// Throws ParameterError on any violated invariant.
  void validate() const;
};

/// A sampled observation together with the ground truth that produced it.
struct SstmInstance {
  DenseTensor observation;
  /// Spikes (r of them), or the ell distinct factors in general mode.
  std::vector<DenseUnitVector> truth;
  std::vector<double> strengths;
  std::uint64_t seed = 0;
  SignalSpec spec;
  /// General mode: block sizes (m_1, ..., m_ell) of consecutive modes per factor.
  std::vector<std::uint32_t> composition;
  /// Bound A' with all truth magnitudes in [1/(A' sqrt k), A'/sqrt k].
  double effective_flatness = 1.0;

  /// Factor index of each tensor mode in general mode.
  std::vector<std::uint32_t> mode_factors() const;
  /// The planted part sum_q lambda_q x_q^{(x)p} (or the general product).
  DenseTensor spike_tensor() const;
};

/// Tensor modes assigned to each factor by a composition, in consecutive blocks.
std::vector<std::uint32_t> modes_of_composition(const std::vector<std::uint32_t>& composition);

struct ApxFlatSignal {
  DenseUnitVector signal;
  double effective_flatness;  ///< A^2
};

struct RademacherPriorSample {
  std::vector<double> x;          ///< entries in {+1/sqrt k, -1/sqrt k, 0}
  std::uint32_t realized_sparsity = 0;
};

enum class Hypothesis { null, planted };

struct DistinguishingSample {
  DenseTensor observation;
  std::optional<RademacherPriorSample> prior;  ///< set under the planted hypothesis
};

/// I.i.d. N(0,1) entries drawn from Rng(seed).
DenseTensor sample_noise_tensor(std::uint32_t n, std::uint32_t p, std::uint64_t seed,
                                std::uint64_t entry_cap = kDefaultEntryCap);

/// +-1/sqrt(k) on a 1-based support.
DenseUnitVector make_flat_signal(std::uint32_t n, const std::vector<std::uint32_t>& support,
                                 const std::vector<int>& signs);

/// Uniform support, magnitudes uniform in [1/(A sqrt k), A/sqrt k], random signs, renormalized.
ApxFlatSignal sample_apx_flat_signal(std::uint32_t n, std::uint32_t k, double A, std::uint64_t seed);

SstmInstance sample_sstm(const SignalSpec& spec, std::uint64_t seed);

/// Single spike x_(1) (x) ... (x) x_(p) built from ell distinct flat k-sparse vectors.
SstmInstance sample_general_instance(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                     std::uint32_t ell, double lambda, std::uint64_t seed);

/// Entries +-1/sqrt(k) with probability k/(2n) each, else 0.
RademacherPriorSample sample_rademacher_prior(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

DistinguishingSample sample_distinguishing(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                           double lambda, Hypothesis hypothesis,
                                           std::uint64_t seed);

}  // namespace sstpca
