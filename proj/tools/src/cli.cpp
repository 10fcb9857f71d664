#include "sstpca_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sstpca/error.hpp"
#include "sstpca/experiments.hpp"
#include "sstpca/infotheory.hpp"
#include "sstpca/lowdeg.hpp"
#include "sstpca/model.hpp"
#include "sstpca/parallel.hpp"
#include "sstpca/recovery.hpp"
#include "sstpca/sstf.hpp"

namespace sstpca {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Raised for command lines that parse but cannot be honoured as given.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path sidecar_path(const fs::path& tensor) {
  fs::path meta = tensor;
  meta.replace_extension(".meta.json");
  return meta;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Command-line flags win over values from a JSON parameter file.
template <class T>
void take(const Json& doc, const char* key, const CLI::Option* flag, T& target) {
  if (flag->count() == 0 && doc.contains(key)) target = doc.at(key).get<T>();
}

// Accept a scalar or an array for grid entries.
template <class T>
std::vector<T> grid_values(const Json& value) {
  if (value.is_array()) return value.get<std::vector<T>>();
  return {value.get<T>()};
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::uint32_t n = 0, p = 3, k = 1, r = 1, ell = 1;
  std::vector<double> lambda;
  double A = 1.0;
  double noise_scale = 1.0;
  std::string mode = "flat";
  std::uint64_t seed = 0;
  std::string out;
};

void add_sample(CLI::App& app, SampleArgs& a) {
  app.add_option("--n", a.n, "ambient dimension")->required();
  app.add_option("--p", a.p, "tensor order")->capture_default_str();
  app.add_option("--k", a.k, "signal sparsity")->capture_default_str();
  app.add_option("--r", a.r, "number of spikes")->capture_default_str();
  app.add_option("--lambda", a.lambda,
                 "signal strengths, one per spike or one shared value (comma separated)")
      ->required()
      ->delimiter(',');
  app.add_option("--A", a.A, "flatness bound for apx-flat signals")->capture_default_str();
  app.add_option("--mode", a.mode, "signal family")
      ->check(CLI::IsMember({"flat", "apx-flat", "general"}))
      ->capture_default_str();
  app.add_option("--ell", a.ell, "distinct factors in general mode")->capture_default_str();
  app.add_option("--noise-scale", a.noise_scale, "noise multiplier; 0 gives a noise-free tensor")
      ->capture_default_str();
  app.add_option("--seed", a.seed, "master seed")->capture_default_str();
  app.add_option("--out", a.out, "output SSTF1 file; metadata goes to <name>.meta.json")->required();
}

Json run_sample(const SampleArgs& a) {
  SstmInstance instance = [&] {
    const SignalMode mode = parse_signal_mode(a.mode);
    SignalSpec spec;
    spec.n = a.n;
    spec.p = a.p;
    spec.k = a.k;
    spec.A = a.A;
    spec.mode = mode;
    spec.ell = a.ell;
    spec.noise_scale = a.noise_scale;
    spec.r = mode == SignalMode::general ? 1 : a.r;
    if (a.lambda.size() == 1) {
      spec.strengths.assign(spec.r, a.lambda.front());
    } else if (a.lambda.size() == spec.r) {
      spec.strengths = a.lambda;
    } else {
      throw UsageError("--lambda needs 1 or r values");
    }
    return sample_sstm(spec, a.seed);
  }();

  const fs::path out = a.out;
  sstf::save(out, instance.observation);

  const auto& spec = instance.spec;
  Json meta;
  meta["n"] = spec.n;
  meta["p"] = spec.p;
  meta["k"] = spec.k;
  meta["A"] = spec.A;
  meta["r"] = spec.r;
  meta["strengths"] = instance.strengths;
  meta["mode"] = to_string(spec.mode);
  meta["ell"] = spec.ell;
  meta["seed"] = instance.seed;
  meta["noise_scale"] = spec.noise_scale;
  meta["effective_flatness"] = instance.effective_flatness;
  meta["composition"] = instance.composition;
  Json supports = Json::array();
  Json entries = Json::array();
  for (const auto& x : instance.truth) {
    supports.push_back(x.support());
    Json values = Json::array();
    for (const auto i : x.support()) values.push_back(x.entries()[i - 1]);
    entries.push_back(values);
  }
  meta["truth_supports"] = supports;
  meta["truth_values"] = entries;
  write_text(sidecar_path(out), meta.dump(2) + "\n");

  Json summary;
  summary["tensor"] = out.string();
  summary["meta"] = sidecar_path(out).string();
  summary["n"] = spec.n;
  summary["p"] = spec.p;
  summary["entries"] = instance.observation.size();
  summary["truth_supports"] = supports;
  return summary;
}

// ---------------------------------------------------------------- recover

struct RecoverArgs {
  std::string in;
  std::string params;
  std::string meta;
  std::uint32_t k = 0, t = 1, r = 1, ell = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  double split_noise_scale = 1.0;
  struct {
    CLI::Option *k, *t, *r, *ell, *seed;
  } flags{};
};

void add_recover(CLI::App& app, RecoverArgs& a) {
  app.add_option("--in", a.in, "observation tensor (SSTF1)")->required()->check(CLI::ExistingFile);
  app.add_option("--params", a.params, "JSON file with any of k, t, r, ell, seed")
      ->check(CLI::ExistingFile);
  app.add_option("--meta", a.meta,
                 "ground-truth sidecar; defaults to <in>.meta.json when that file exists")
      ->check(CLI::ExistingFile);
  a.flags.k = app.add_option("--k", a.k, "support size to recover");
  a.flags.t = app.add_option("--t", a.t, "brute-force budget, 1 <= t <= k")->capture_default_str();
  a.flags.r = app.add_option("--r", a.r, "number of spikes")->capture_default_str();
  a.flags.ell = app.add_option("--ell", a.ell, "distinct factors of a general spike")
                    ->capture_default_str();
  a.flags.seed = app.add_option("--seed", a.seed, "seed of the preprocessing split")
                     ->capture_default_str();
  app.add_option("--workers", a.workers, "threads for the candidate search (0: auto)")
      ->capture_default_str();
  app.add_option("--split-noise-scale", a.split_noise_scale,
                 "scale of the splitting noise; 0 disables it (debugging)")
      ->capture_default_str();
}

Json run_recover(RecoverArgs& a) {
  if (!a.params.empty()) {
    const Json doc = read_json(a.params);
    take(doc, "k", a.flags.k, a.k);
    take(doc, "t", a.flags.t, a.t);
    take(doc, "r", a.flags.r, a.r);
    take(doc, "ell", a.flags.ell, a.ell);
    take(doc, "seed", a.flags.seed, a.seed);
  }
  if (a.k == 0) throw UsageError("--k is required (flag or --params)");

  const DenseTensor y = sstf::load(a.in);
  RecoveryOptions options;
  options.workers = a.workers;
  options.split_noise_scale = a.split_noise_scale;

  Json report;
  report["n"] = y.n();
  report["p"] = y.p();
  report["k"] = a.k;
  report["t"] = a.t;
  report["r"] = a.r;
  report["ell"] = a.ell;
  report["seed"] = a.seed;

  std::vector<std::vector<std::uint32_t>> recovered;
  if (a.ell > 1) {
    if (a.r != 1) throw UsageError("general recovery handles a single spike (r = 1)");
    const auto result = recover_general(y, a.k, a.t, a.ell, a.seed, options);
    recovered = result.supports;
    report["composition"] = result.composition;
    report["recovered"] = recovered;
    report["argmax_values"] = {result.argmax_value};
    report["candidates"] = {result.candidates};
    report["round_ms"] = {result.elapsed_ms};
  } else {
    const auto result = recover_multi(y, a.k, a.t, a.r, a.seed, options);
    recovered = result.supports();
    report["recovered"] = recovered;
    Json values = Json::array(), candidates = Json::array(), times = Json::array();
    for (const auto& round : result.rounds) {
      values.push_back(round.argmax_value);
      candidates.push_back(round.candidates);
      times.push_back(round.elapsed_ms);
    }
    report["argmax_values"] = values;
    report["candidates"] = candidates;
    report["round_ms"] = times;
    report["split_ms"] = result.split_ms;
  }

  fs::path meta = a.meta;
  if (meta.empty() && fs::exists(sidecar_path(a.in))) meta = sidecar_path(a.in);
  if (!meta.empty()) {
    const Json doc = read_json(meta);
    const auto truth = doc.at("truth_supports").get<std::vector<std::vector<std::uint32_t>>>();
    if (truth.size() == recovered.size()) {
      const auto matched = match_supports(recovered, truth);
      report["truth"] = meta.string();
      report["matching"] = matched.matching;
      report["exact"] = matched.exact;
      report["overlap"] = matched.overlap;
      report["all_exact"] = matched.all_exact();
    } else {
      report["truth_note"] = "sidecar holds a different number of signals; matching skipped";
    }
  }
  return report;
}

// ---------------------------------------------------------------- lowdeg

struct LowdegArgs {
  LowDegParams params;
  std::string arithmetic = "auto";
  std::uint64_t seed = 0;
};

void add_lowdeg(CLI::App& app, LowdegArgs& a) {
  app.add_option("--n", a.params.n, "ambient dimension")->required();
  app.add_option("--k", a.params.k, "prior sparsity")->required();
  app.add_option("--p", a.params.p, "tensor order")->required();
  app.add_option("--D", a.params.D, "maximum polynomial degree")->required();
  app.add_option("--lambda", a.params.lambda, "signal strength")->required();
  app.add_option("--eps", a.params.eps, "divergence level for the thresholds")
      ->capture_default_str();
  app.add_option("--arithmetic", a.arithmetic, "exact rationals, log-space doubles, or auto")
      ->check(CLI::IsMember({"auto", "exact", "log"}))
      ->capture_default_str();
  app.add_option("--seed", a.seed, "accepted for uniformity; the computation is deterministic")
      ->capture_default_str();
}

Json run_lowdeg(const LowdegArgs& a) {
  const Arithmetic mode = a.arithmetic == "exact" ? Arithmetic::exact_rational
                          : a.arithmetic == "log" ? Arithmetic::log_float
                                                  : Arithmetic::automatic;
  const auto& q = a.params;
  const auto chi = chi_squared_exact(q, mode);
  const auto upper = upper_bound_lambda(q.n, q.k, q.p, q.D, q.eps);

  Json out;
  out["n"] = q.n;
  out["k"] = q.k;
  out["p"] = q.p;
  out["D"] = q.D;
  out["lambda"] = q.lambda;
  out["eps"] = q.eps;
  out["chi2"] = chi.total;
  out["per_degree"] = chi.per_degree;
  out["arithmetic"] = chi.arithmetic == Arithmetic::exact_rational ? "exact" : "log";
  if (chi.exact_total) {
    Json exact;
    exact["chi2"] = chi.exact_total->str();
    Json terms = Json::array();
    for (const auto& t : chi.exact_per_degree) terms.push_back(t.str());
    exact["per_degree"] = terms;
    out["exact"] = exact;
  }
  out["lower_threshold"] = lower_bound_lambda(q.n, q.k, q.p, q.D, q.eps);
  Json up;
  up["regime1"] = upper.regime1;
  up["regime2"] = upper.regime2;
  up["regime1_valid"] = upper.regime1_valid;
  up["regime2_valid"] = upper.regime2_valid;
  up["regime"] = upper.regime;
  up["lambda"] = upper.regime == 0 ? Json(nullptr) : Json(upper.lambda);
  out["upper_thresholds"] = up;
  out["d_le_2n_over_p"] = chi.d_le_2n_over_p;
  return out;
}

// ---------------------------------------------------------------- itbound

struct ItboundArgs {
  std::uint32_t n = 0, k = 0;
  double lambda = 0.0;
  double eps = 0.5;
  std::string tau = "1/20";
  bool cover = false;
  std::uint64_t seed = 0;
};

void add_itbound(CLI::App& app, ItboundArgs& a) {
  app.add_option("--n", a.n, "ambient dimension")->required();
  app.add_option("--k", a.k, "signal sparsity")->required();
  app.add_option("--lambda", a.lambda, "strength at which to evaluate the KL bound")
      ->capture_default_str();
  app.add_option("--eps", a.eps, "packing radius in (0, 1]")->capture_default_str();
  app.add_option("--tau", a.tau, "target risk for the Fano constant, as a fraction")
      ->capture_default_str();
  app.add_flag("--cover", a.cover, "also compute covering numbers of U_k (small n only)");
  app.add_option("--seed", a.seed, "accepted for uniformity; the computation is deterministic")
      ->capture_default_str();
}

Rational parse_fraction(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UsageError("cannot read '" + text + "' as a fraction");
  }
}

Json run_itbound(const ItboundArgs& a) {
  const auto report = it_bound_report(a.n, a.k, a.lambda, a.eps);
  Json out;
  out["n"] = a.n;
  out["k"] = a.k;
  out["minimax_lambda"] = optional_number(report.minimax_lambda);
  out["packing_eps"] = a.eps;
  out["packing_log_lower"] = optional_number(report.packing_log_lower);
  out["packing_lower"] =
      report.packing_log_lower ? Json(std::exp(*report.packing_log_lower)) : Json(nullptr);
  out["lambda"] = a.lambda;
  out["kl_upper"] = report.kl_upper;
  const Rational fano = fano_risk_constant(parse_fraction(a.tau), to_rational(a.eps));
  out["fano_constant"] = fano.str();
  out["fano_constant_value"] = fano.convert_to<double>();
  constexpr std::uint64_t kCoverUniverseLimit = 4096;  // greedy cost grows as |U_k|^2
  if (a.cover && (a.n > 64 || a.k > a.n || binomial(a.n, a.k) * (BigInt(1) << a.k) > kCoverUniverseLimit)) {
    out["covering"] = "skipped: |U_k| exceeds " + std::to_string(kCoverUniverseLimit);
  } else if (a.cover) {
    Json cover;
    for (const auto metric : {CoverMetric::euclidean, CoverMetric::sign_invariant}) {
      const auto c = covering_number(a.n, a.k, a.eps, metric);
      Json entry;
      entry["universe"] = c.universe;
      entry["exact"] = c.exact ? Json(*c.exact) : Json(nullptr);
      entry["greedy"] = c.greedy;
      cover[metric == CoverMetric::euclidean ? "euclidean" : "sign_invariant"] = entry;
    }
    out["covering"] = cover;
  }
  out["notes"] = report.notes;
  return out;
}

// ---------------------------------------------------------------- phase

struct PhaseArgs {
  std::string config;
  std::string out;
  std::vector<std::uint32_t> n, p, k, r, t;
  std::vector<double> lambda;
  std::string scale = "absolute";
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  double noise_scale = 1.0;
  bool timing = false;
  double eps = 0.5, kappa = 5.0, delta = 0.01, A = 1.0;
  struct {
    CLI::Option *n, *p, *k, *r, *t, *lambda, *scale, *trials, *seed, *noise_scale, *timing, *eps,
        *kappa, *delta, *A, *out;
  } flags{};
};

void add_phase(CLI::App& app, PhaseArgs& a) {
  app.add_option("--config", a.config, "PhaseConfig JSON; flags override its entries")
      ->check(CLI::ExistingFile);
  a.flags.out = app.add_option("--out", a.out, "CSV output path (stdout when omitted)");
  a.flags.n = app.add_option("--n", a.n, "grid of n values")->delimiter(',');
  a.flags.p = app.add_option("--p", a.p, "grid of p values")->delimiter(',');
  a.flags.k = app.add_option("--k", a.k, "grid of k values")->delimiter(',');
  a.flags.r = app.add_option("--r", a.r, "grid of r values")->delimiter(',');
  a.flags.t = app.add_option("--t", a.t, "grid of t values")->delimiter(',');
  a.flags.lambda = app.add_option("--lambda", a.lambda, "grid of strengths or multiples")
                       ->delimiter(',');
  a.flags.scale = app.add_option("--scale", a.scale, "how --lambda values are read")
                      ->check(CLI::IsMember({"absolute", "theorem", "calibrated"}))
                      ->capture_default_str();
  a.flags.trials = app.add_option("--trials", a.trials, "trials per cell")->capture_default_str();
  a.flags.seed = app.add_option("--seed", a.seed, "master seed")->capture_default_str();
  app.add_option("--workers", a.workers, "worker threads (0: auto)")->capture_default_str();
  a.flags.noise_scale = app.add_option("--noise-scale", a.noise_scale,
                                       "noise multiplier; 0 gives noise-free trials")
                            ->capture_default_str();
  a.flags.timing = app.add_flag("--timing", a.timing,
                                "record runtimes (the CSV is then no longer reproducible)");
  a.flags.eps = app.add_option("--eps", a.eps, "theorem eps for --scale theorem")->capture_default_str();
  a.flags.kappa = app.add_option("--kappa", a.kappa, "theorem kappa")->capture_default_str();
  a.flags.delta = app.add_option("--delta", a.delta, "theorem delta")->capture_default_str();
  a.flags.A = app.add_option("--A", a.A, "theorem flatness bound")->capture_default_str();
}

PhaseConfig phase_config(PhaseArgs& a) {
  PhaseConfig config;
  if (!a.config.empty()) {
    const Json doc = read_json(a.config);
    auto grid_u = [&](const char* key, CLI::Option* flag, std::vector<std::uint32_t>& target) {
      if (flag->count() == 0 && doc.contains(key)) target = grid_values<std::uint32_t>(doc.at(key));
    };
    grid_u("n", a.flags.n, a.n);
    grid_u("p", a.flags.p, a.p);
    grid_u("k", a.flags.k, a.k);
    grid_u("r", a.flags.r, a.r);
    grid_u("t", a.flags.t, a.t);
    if (a.flags.lambda->count() == 0 && doc.contains("lambda")) {
      a.lambda = grid_values<double>(doc.at("lambda"));
    }
    take(doc, "scale", a.flags.scale, a.scale);
    take(doc, "trials", a.flags.trials, a.trials);
    take(doc, "seed", a.flags.seed, a.seed);
    take(doc, "noise_scale", a.flags.noise_scale, a.noise_scale);
    take(doc, "record_timing", a.flags.timing, a.timing);
    take(doc, "eps", a.flags.eps, a.eps);
    take(doc, "kappa", a.flags.kappa, a.kappa);
    take(doc, "delta", a.flags.delta, a.delta);
    take(doc, "A", a.flags.A, a.A);
    take(doc, "output", a.flags.out, a.out);
  }
  if (a.n.empty() || a.k.empty() || a.lambda.empty()) {
    throw UsageError("phase needs n, k and lambda grids (flags or --config)");
  }
  config.n = a.n;
  if (!a.p.empty()) config.p = a.p;
  config.k = a.k;
  if (!a.r.empty()) config.r = a.r;
  if (!a.t.empty()) config.t = a.t;
  config.lambda = a.lambda;
  config.scale = parse_lambda_scale(a.scale);
  config.trials = a.trials;
  config.master_seed = a.seed;
  config.noise_scale = a.noise_scale;
  config.record_timing = a.timing;
  config.workers = a.workers;
  config.theory.eps = a.eps;
  config.theory.kappa = a.kappa;
  config.theory.delta = a.delta;
  config.theory.A = a.A;
  return config;
}

// ------------------------------------------------------- check-concentration

void add_concentration(CLI::App& app, ConcentrationConfig& c) {
  app.add_option("--n", c.n, "ambient dimension")->capture_default_str();
  app.add_option("--p", c.p, "tensor order")->capture_default_str();
  app.add_option("--t", c.t, "sparsity of the test vectors")->capture_default_str();
  app.add_option("--r", c.r, "distinct vectors per factor tuple (1 or 2)")->capture_default_str();
  app.add_option("--gamma", c.gamma, "failure probability parameter")->capture_default_str();
  app.add_option("--trials", c.trials, "noise tensors to draw")->capture_default_str();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--noise-scale", c.noise_scale, "noise multiplier; 0 checks W = 0")
      ->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads (0: auto)")->capture_default_str();
}

Json run_concentration(const ConcentrationConfig& c) {
  const auto report = check_concentration(c);
  Json out;
  out["n"] = c.n;
  out["p"] = c.p;
  out["t"] = c.t;
  out["r"] = c.r;
  out["gamma"] = c.gamma;
  out["trials"] = c.trials;
  out["seed"] = c.seed;
  out["bound"] = report.bound;
  out["failure_fraction"] = report.failure_fraction;
  out["candidates_per_trial"] = report.candidates;
  out["maxima"] = report.maxima;
  return out;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse tensor PCA toolkit: sampling, support recovery and threshold calculators",
               "sstpca"};
  app.require_subcommand(1);
  app.footer("Worker counts default to $" + std::string(kWorkersEnv) +
             " or the hardware concurrency.\nExit codes: 0 success, 1 usage error, 2 runtime error.");

  SampleArgs sample;
  RecoverArgs recover;
  LowdegArgs lowdeg;
  ItboundArgs itbound;
  PhaseArgs phase;
  ConcentrationConfig concentration;
  auto* sample_cmd = app.add_subcommand("sample", "draw an instance of the spiked tensor model");
  auto* recover_cmd = app.add_subcommand("recover", "recover planted supports by limited brute force");
  auto* lowdeg_cmd = app.add_subcommand("lowdeg", "degree-<=D chi-squared divergence and thresholds");
  auto* itbound_cmd = app.add_subcommand("itbound", "information-theoretic bounds");
  auto* phase_cmd = app.add_subcommand("phase", "Monte-Carlo recovery sweep written as CSV");
  auto* conc_cmd =
      app.add_subcommand("check-concentration", "sparse-norm bound of Gaussian tensors by simulation");
  add_sample(*sample_cmd, sample);
  add_recover(*recover_cmd, recover);
  add_lowdeg(*lowdeg_cmd, lowdeg);
  add_itbound(*itbound_cmd, itbound);
  add_phase(*phase_cmd, phase);
  add_concentration(*conc_cmd, concentration);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json report;
    if (sample_cmd->parsed()) {
      report = run_sample(sample);
    } else if (recover_cmd->parsed()) {
      report = run_recover(recover);
    } else if (lowdeg_cmd->parsed()) {
      report = run_lowdeg(lowdeg);
    } else if (itbound_cmd->parsed()) {
      report = run_itbound(itbound);
    } else if (phase_cmd->parsed()) {
      const auto config = phase_config(phase);
      const auto records = run_phase_diagram(config);
      if (phase.out.empty()) {
        write_phase_csv(out, records);
      } else {
        std::ostringstream csv;
        write_phase_csv(csv, records);
        write_text(phase.out, csv.str());
      }
      return kExitOk;
    } else if (conc_cmd->parsed()) {
      report = run_concentration(concentration);
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace sstpca
