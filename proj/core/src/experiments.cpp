#include "sstpca/experiments.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <mutex>
#include <ostream>

#include "sstpca/candidates.hpp"
#include "sstpca/error.hpp"
#include "sstpca/model.hpp"
#include "sstpca/parallel.hpp"
#include "sstpca/rng.hpp"

namespace sstpca {
namespace {

struct Cell {
  std::uint32_t n, p, k, r, t;
  double lambda;  // absolute strength, or NaN when the scale could not be resolved
  std::string error;
};

std::vector<Cell> expand_grid(const PhaseConfig& config) {
  std::vector<Cell> cells;
  for (const auto n : config.n)
    for (const auto p : config.p)
      for (const auto k : config.k)
        for (const auto r : config.r)
          for (const auto t : config.t)
            for (const auto value : config.lambda) {
              Cell cell{n, p, k, r, t, value, {}};
              try {
                switch (config.scale) {
                  case LambdaScale::absolute:
                    break;
                  case LambdaScale::theorem_multiple: {
                    RecoveryParams params = config.theory;
                    params.k = k;
                    params.t = t;
                    params.r = r;
                    cell.lambda = value * threshold_lambda(n, p, params).lambda;
                    break;
                  }
                  case LambdaScale::calibrated_multiple:
                    cell.lambda = calibrated_lambda(value, n, k, p, t);
                    break;
                }
              } catch (const std::exception& e) {
                cell.lambda = std::nan("");
                cell.error = e.what();
              }
              cells.push_back(std::move(cell));
            }
  return cells;
}

/// Admits trials while their combined tensor memory fits the budget. A trial
/// larger than the whole budget still runs, alone.
class MemoryGate {
 public:
  explicit MemoryGate(std::uint64_t budget) : budget_(budget) {}

  void acquire(std::uint64_t bytes) {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_use_ == 0 || in_use_ + bytes <= budget_; });
    in_use_ += bytes;
  }

  void release(std::uint64_t bytes) {
    {
      std::lock_guard lock(mutex_);
      in_use_ -= bytes;
    }
    cv_.notify_all();
  }

 private:
  std::uint64_t budget_;
  std::uint64_t in_use_ = 0;
  std::mutex mutex_;
  std::condition_variable cv_;
};

// Observation, split pair and one temporary.
constexpr std::uint64_t kTensorsPerTrial = 4;

std::uint64_t trial_bytes(const Cell& cell) {
  try {
    return kTensorsPerTrial * sizeof(double) * checked_entry_count(cell.n, cell.p, kDefaultEntryCap);
  } catch (const std::exception&) {
    return 0;  // the trial itself will fail with the capacity error
  }
}

void run_trial(const Cell& cell, const PhaseConfig& config, TrialRecord& record) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SignalSpec spec;
  spec.n = cell.n;
  spec.p = cell.p;
  spec.k = cell.k;
  spec.r = cell.r;
  spec.strengths.assign(cell.r, cell.lambda);
  spec.noise_scale = config.noise_scale;
  const auto instance = sample_sstm(spec, record.seed);

  RecoveryOptions options;
  options.workers = 1;  // parallelism lives at the trial level
  options.split_noise_scale = config.noise_scale;
  const auto result =
      recover_multi(instance.observation, cell.k, cell.t, cell.r, record.seed, options);

  std::vector<std::vector<std::uint32_t>> truth;
  for (const auto& x : instance.truth) truth.push_back(x.support());
  const auto report = match_supports(result.supports(), truth);
  record.exact = report.exact;
  record.overlap = report.overlap;
  for (const auto& round : result.rounds) record.argmax_values.push_back(round.argmax_value);
  if (config.record_timing) {
    record.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
}

std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F&& format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format(values[i]);
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_string(LambdaScale scale) {
  switch (scale) {
    case LambdaScale::absolute:
      return "absolute";
    case LambdaScale::theorem_multiple:
      return "theorem";
    case LambdaScale::calibrated_multiple:
      return "calibrated";
  }
  return "absolute";
}

LambdaScale parse_lambda_scale(const std::string& text) {
  if (text == "absolute") return LambdaScale::absolute;
  if (text == "theorem") return LambdaScale::theorem_multiple;
  if (text == "calibrated") return LambdaScale::calibrated_multiple;
  throw ParameterError("unknown lambda scale '" + text + "' (absolute, theorem, calibrated)");
}

void PhaseConfig::validate() const {
  if (n.empty() || p.empty() || k.empty() || r.empty() || t.empty() || lambda.empty()) {
    throw ParameterError("every phase grid needs at least one value");
  }
  if (trials < 1) throw ParameterError("trials must be at least 1");
  for (const double v : lambda) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("lambda grid values must be finite and >= 0");
  }
  if (!(noise_scale >= 0.0)) throw ParameterError("noise scale must be >= 0");
}

std::uint64_t PhaseConfig::cell_count() const {
  return std::uint64_t{n.size()} * p.size() * k.size() * r.size() * t.size() * lambda.size();
}

std::vector<TrialRecord> run_phase_diagram(const PhaseConfig& config) {
  config.validate();
  const auto cells = expand_grid(config);
  std::vector<TrialRecord> records;
  records.reserve(cells.size() * config.trials);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
      TrialRecord record{cell.n, cell.p, cell.k, cell.r, cell.t, cell.lambda, trial,
                         derive_seed(config.master_seed, c, trial), {}, {}, {}, 0.0, cell.error};
      records.push_back(std::move(record));
    }
  }

  MemoryGate gate(config.memory_budget);
  parallel_for(records.size(), config.workers, [&](std::size_t i) {
    TrialRecord& record = records[i];
    if (!record.error.empty()) return;
    const Cell& cell = cells[i / config.trials];
    const auto bytes = trial_bytes(cell);
    gate.acquire(bytes);
    try {
      run_trial(cell, config, record);
    } catch (const std::exception& e) {
      record.error = e.what();
      record.exact.clear();
      record.overlap.clear();
      record.argmax_values.clear();
    }
    gate.release(bytes);
  });
  return records;
}

void write_phase_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kPhaseCsvHeader << '\n';
  for (const auto& rec : records) {
    out << rec.n << ',' << rec.p << ',' << rec.k << ',' << rec.r << ',' << rec.t << ','
        << format_double(rec.lambda) << ',' << rec.trial << ',' << rec.seed << ','
        << join(rec.exact, [](bool b) { return std::string(b ? "1" : "0"); }) << ','
        << join(rec.overlap, [](double v) { return format_double(v); }) << ','
        << join(rec.argmax_values, [](double v) { return format_double(v); }) << ','
        << format_double(rec.runtime_ms, "%.3f") << ',' << csv_field(rec.error) << '\n';
  }
}

BoundaryEstimate calibrate_boundary(std::uint32_t n, std::uint32_t p, std::uint32_t k,
                                    std::uint32_t t, std::uint32_t trials, double target,
                                    double lo, double hi, std::uint32_t steps,
                                    std::uint64_t seed, unsigned workers) {
  if (!(lo >= 0.0 && hi > lo)) throw ParameterError("bisection needs 0 <= lo < hi");
  const double unit = std::sqrt(std::pow(static_cast<double>(k), p) * std::log(n));
  BoundaryEstimate estimate{hi, 0.0, {}, {}};

  auto success_rate = [&](double multiple) {
    PhaseConfig config;
    config.n = {n};
    config.p = {p};
    config.k = {k};
    config.t = {t};
    config.r = {1};
    config.lambda = {multiple * unit};
    config.trials = trials;
    config.master_seed = seed;  // same seeds at every probe
    config.workers = workers;
    std::uint32_t hits = 0;
    for (const auto& rec : run_phase_diagram(config)) {
      if (rec.error.empty() && !rec.exact.empty() && rec.exact.front()) ++hits;
    }
    const double rate = static_cast<double>(hits) / trials;
    estimate.probed.push_back(multiple);
    estimate.rates.push_back(rate);
    return rate;
  };

  estimate.success_rate = success_rate(hi);
  if (estimate.success_rate < target) return estimate;
  for (std::uint32_t step = 0; step < steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double rate = success_rate(mid);
    if (rate >= target) {
      hi = mid;
      estimate.multiple = mid;
      estimate.success_rate = rate;
    } else {
      lo = mid;
    }
  }
  return estimate;
}

double concentration_bound(std::uint32_t n, std::uint32_t p, std::uint32_t t, std::uint32_t r,
                           double gamma) {
  const double inner = 4.0 * r * t * std::log(static_cast<double>(n) * p / t) + std::log(1.0 / gamma);
  return std::sqrt(8.0 * inner);
}

ConcentrationReport check_concentration(const ConcentrationConfig& config) {
  const auto& c = config;
  if (c.t < 1 || c.t > c.n) throw ParameterError("t must satisfy 1 <= t <= n");
  if (c.r < 1 || c.r > 2 || c.r > c.p) throw GuardError("concentration check supports r in {1, 2} with r <= p");
  if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
  if (c.trials < 1) throw ParameterError("trials must be at least 1");
  if (c.t > 62 || binomial_u64(c.n, c.t) > (kConcentrationGuard >> c.t)) {
    throw GuardError("C(n, t) 2^t exceeds " + std::to_string(kConcentrationGuard));
  }

  // |<W, .>| is unchanged when any one vector flips sign, so one sign pattern
  // per pair {u, -u} suffices.
  const CandidateSet set(c.n, c.t, {}, 2);
  std::vector<SparseFactor> family;
  family.reserve(set.size());
  set.for_each(0, set.size(), [&](std::uint64_t, const SparseFactor& f) { family.push_back(f); });

  ConcentrationReport report;
  report.bound = concentration_bound(c.n, c.p, c.t, c.r, c.gamma);
  const std::uint64_t assignments = (std::uint64_t{1} << c.p) - 2;
  report.candidates = c.r == 1 ? family.size()
                               : family.size() * (family.size() - 1) / 2 * assignments;
  report.maxima.assign(c.trials, 0.0);

  parallel_for(c.trials, c.workers, [&](std::size_t trial) {
    DenseTensor w = sample_noise_tensor(c.n, c.p, derive_seed(derive_seed(c.seed, Stream::trial), trial));
    if (c.noise_scale != 1.0) {
      for (auto& v : w.mutable_data()) v *= c.noise_scale;
    }
    double best = 0.0;
    if (c.r == 1) {
      for (const auto& u : family) best = std::max(best, std::abs(rank1_inner(w, u)));
    } else {
      std::vector<SparseFactor> by_mode(c.p);
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
          for (std::uint64_t mask = 1; mask <= assignments; ++mask) {
            for (std::uint32_t m = 0; m < c.p; ++m) by_mode[m] = (mask >> m & 1) ? family[j] : family[i];
            best = std::max(best, std::abs(rank1_inner(w, by_mode)));
          }
        }
      }
    }
    report.maxima[trial] = best;
  });

  std::uint32_t failures = 0;
  for (const double m : report.maxima) {
    if (m >= report.bound) ++failures;
  }
  report.failure_fraction = static_cast<double>(failures) / c.trials;
  return report;
}

}  // namespace sstpca
