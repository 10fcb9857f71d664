#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sstpca/recovery.hpp"

namespace sstpca {

/// How PhaseConfig::lambda values are read.
enum class LambdaScale {
  absolute,            ///< the strength itself
  theorem_multiple,    ///< multiple of threshold_lambda for the cell
  calibrated_multiple  ///< multiple of sqrt(t (k/t)^p ln n)
};

std::string to_string(LambdaScale scale);
LambdaScale parse_lambda_scale(const std::string& text);

struct PhaseConfig {
  std::vector<std::uint32_t> n{30};
  std::vector<std::uint32_t> p{3};
  std::vector<std::uint32_t> k{4};
  std::vector<std::uint32_t> r{1};
  std::vector<std::uint32_t> t{1};
  std::vector<double> lambda{0.0};
  LambdaScale scale = LambdaScale::absolute;
  /// eps, kappa, delta and A feed threshold_lambda under theorem_multiple.
  RecoveryParams theory{};
  std::uint32_t trials = 1;
  std::uint64_t master_seed = 0;
  double noise_scale = 1.0;    ///< 0 gives noise-free trials (debugging)
  bool record_timing = false;  ///< off keeps the CSV a pure function of the config
  unsigned workers = 0;
  /// Tensor bytes the concurrently running trials may hold together.
  std::uint64_t memory_budget = std::uint64_t{1} << 31;

  void validate() const;
  std::uint64_t cell_count() const;
};

struct TrialRecord {
  std::uint32_t n, p, k, r, t;
  double lambda;
  std::uint32_t trial;
  std::uint64_t seed;
  std::vector<bool> exact;             ///< per planted signal, after matching
  std::vector<double> overlap;
  std::vector<double> argmax_values;   ///< per round
  double runtime_ms = 0.0;
  std::string error;                   ///< empty unless the trial failed
};

inline constexpr const char* kPhaseCsvHeader =
    "n,p,k,r,t,lambda,trial,seed,exact,overlap,argmax_value,runtime_ms,error";

/// One record per (cell, trial), in grid order n, p, k, r, t, lambda then trial.
/// Trial seeds are derive_seed(master_seed, cell, trial), so results do not
/// depend on the worker count. A failing trial yields a record with `error` set.
std::vector<TrialRecord> run_phase_diagram(const PhaseConfig& config);

/// Header plus one row per record. Multi-valued fields are joined with ';'.
void write_phase_csv(std::ostream& out, const std::vector<TrialRecord>& records);

struct BoundaryEstimate {
  double multiple;         ///< smallest multiple found with success rate >= target
  double success_rate;     ///< at `multiple`
  std::vector<double> probed;
  std::vector<double> rates;
};

/// Bisection over c in lambda = c sqrt(k^p ln n) for the single-spike success rate.
BoundaryEstimate calibrate_boundary(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                    std::uint32_t t, std::uint32_t trials, double target,
                                    double lo, double hi, std::uint32_t steps,
                                    std::uint64_t seed, unsigned workers = 0);

/// sqrt(8 (4 r t ln(n p / t) + ln(1/gamma))).
double concentration_bound(std::uint32_t n, std::uint32_t p, std::uint32_t t, std::uint32_t r,
                           double gamma);

struct ConcentrationConfig {
  std::uint32_t n = 30;
  std::uint32_t p = 3;
  std::uint32_t t = 2;
  std::uint32_t r = 1;
  double gamma = 0.05;
  std::uint32_t trials = 200;
  std::uint64_t seed = 0;
  double noise_scale = 1.0;  ///< 0 checks the W = 0 case
  unsigned workers = 0;
};

struct ConcentrationReport {
  std::vector<double> maxima;  ///< per trial
  double bound = 0.0;
  double failure_fraction = 0.0;
  std::uint64_t candidates = 0;  ///< factor tuples examined per trial
};

/// Largest candidate count C(n, t) 2^t the exhaustive search accepts.
inline constexpr std::uint64_t kConcentrationGuard = 100'000;

/// Per trial, the exact maximum of |<W, u_(1) (x) ... (x) u_(p)>| over factor
/// tuples drawn from r distinct vectors of U_t. r = 2 covers every assignment
/// of the p modes to two vectors that uses both.
ConcentrationReport check_concentration(const ConcentrationConfig& config);

}  // namespace sstpca
