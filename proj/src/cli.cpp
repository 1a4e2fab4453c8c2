// Copyright 2026 The waning authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "waning/cli.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "waning/errors.hpp"
#include "waning/inference.hpp"
#include "waning/ingest.hpp"
#include "waning/io.hpp"
#include "waning/model.hpp"
#include "waning/simulate.hpp"
#include "waning/stats.hpp"
#include "waning/theory.hpp"

namespace waning {

namespace {

// Thrown for bad flag grammar or impossible parameter combinations; mapped
// to exit 1. Everything else thrown during execution maps to exit 2.
class CliUsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelParams make_params(double alpha, double beta, double b) {
  try {
    return ModelParams(alpha, beta, b);
  } catch (const std::invalid_argument& e) {
    throw CliUsageError(e.what());
  }
}

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (seed_given) {
    return seed_flag;
  }
  if (const char* env = std::getenv("WANING_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw CliUsageError("WANING_SEED must be a decimal unsigned integer");
    }
    return v;
  }
  return 1;
}

struct IngestFlags {
  std::string input;
  std::string format = "auto";
  std::string column;
  bool include_first = false;
  std::string dedup = "drop";
  double jitter_resolution = 1.0;
  std::optional<double> horizon;
};

void add_ingest_flags(CLI::App* sub, IngestFlags* flags, bool with_horizon) {
  sub->add_option("--input", flags->input, "timestamp file")->required();
  sub->add_option("--format", flags->format,
                  "input format: auto|iso|numeric|csv (default auto)");
  sub->add_option("--column", flags->column, "CSV column name");
  sub->add_flag("--include-first", flags->include_first,
                "treat times as measured from a known origin t=0 and keep "
                "the first arrival as an event (numeric input only)");
  sub->add_option("--dedup", flags->dedup,
                  "duplicate policy: drop|jitter (default drop)");
  sub->add_option("--jitter-resolution", flags->jitter_resolution,
                  "jitter spread in days for numeric input (default 1)");
  if (with_horizon) {
    sub->add_option("--horizon", flags->horizon,
                    "observation window end in days (default: last arrival)");
  }
}

bool sniffs_as_iso(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) {
      eol = text.size();
    }
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
      continue;
    }
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    return line.size() >= 10 && line[4] == '-' && line[7] == '-';
  }
  return false;
}

// Reads the input file and resolves "auto" against its first record.
std::pair<std::string, IngestOptions> resolve_ingest(
    const IngestFlags& flags, std::uint64_t seed) {
  IngestOptions options;
  options.include_first = flags.include_first;
  options.jitter_resolution = flags.jitter_resolution;
  options.jitter_seed = seed;
  options.horizon = flags.horizon;

  if (flags.dedup == "drop") {
    options.dedup = DedupPolicy::kDrop;
  } else if (flags.dedup == "jitter") {
    options.dedup = DedupPolicy::kJitter;
  } else {
    throw CliUsageError("--dedup must be drop or jitter");
  }

  std::string format = flags.format;
  if (format == "auto" && !flags.column.empty()) {
    format = "csv";
  }
  if (format != "csv" && !flags.column.empty()) {
    throw CliUsageError("--column applies only to csv input");
  }
  if (format == "csv" && flags.column.empty()) {
    throw CliUsageError("csv input needs --column NAME");
  }

  const std::string text = read_text_file(flags.input);
  if (format == "auto") {
    format = sniffs_as_iso(text) ? "iso" : "numeric";
  }
  if (format == "iso") {
    options.format = SourceFormat::kIso8601Lines;
    if (flags.include_first) {
      throw CliUsageError(
          "--include-first needs numeric input; calendar timestamps have no "
          "origin at t=0");
    }
  } else if (format == "numeric") {
    options.format = SourceFormat::kNumericLines;
  } else if (format == "csv") {
    options.format = SourceFormat::kCsvColumn;
    options.csv_column = flags.column;
  } else {
    throw CliUsageError("--format must be auto, iso, numeric or csv");
  }
  return {text, options};
}

std::optional<int> resolve_bins(bool binned_flag, int bins_flag) {
  if (bins_flag != 0) {
    if (bins_flag < 2) {
      throw CliUsageError("--log-bins must be >= 2");
    }
    return bins_flag;
  }
  if (binned_flag) {
    return kDefaultLogBins;
  }
  return std::nullopt;
}

void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_text_atomic(path, content);
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"waning-interest point process toolkit (time unit: days)",
               "waning"};
  app.require_subcommand(1);

  // --- simulate ---------------------------------------------------------
  auto* sim = app.add_subcommand(
      "simulate", "sample an event stream and write it as CSV");
  double sim_alpha = 0, sim_beta = 0, sim_b = 0;
  std::optional<double> sim_horizon;
  std::optional<std::uint64_t> sim_events;
  std::string sim_sampler = "inversion";
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  sim->add_option("--alpha", sim_alpha, "decaying rate at t=0")->required();
  sim->add_option("--beta", sim_beta, "persistent rate")->required();
  sim->add_option("--b", sim_b, "decay speed (1/days)")->required();
  sim->add_option("--horizon", sim_horizon, "observe [0, T] days");
  sim->add_option("--events", sim_events, "stop at the N-th arrival");
  sim->add_option("--sampler", sim_sampler,
                  "inversion|thinning (default inversion)");
  sim->add_option("--seed", sim_seed, "RNG seed (default: $WANING_SEED or 1)");
  sim->add_option("--out", sim_out, "output CSV path")->required();

  // --- ccdf -------------------------------------------------------------
  auto* ccdf_cmd = app.add_subcommand(
      "ccdf", "empirical interarrival survival curve from timestamps");
  IngestFlags ccdf_ingest;
  add_ingest_flags(ccdf_cmd, &ccdf_ingest, false);
  bool ccdf_binned = false;
  int ccdf_bins = 0;
  std::uint64_t ccdf_seed = 0;
  std::string ccdf_out;
  ccdf_cmd->add_flag("--log-binned", ccdf_binned,
                     "evaluate on 25 log-spaced abscissae");
  ccdf_cmd->add_option("--log-bins", ccdf_bins,
                       "evaluate on this many log-spaced abscissae");
  ccdf_cmd->add_option("--seed", ccdf_seed, "jitter seed");
  ccdf_cmd->add_option("--out", ccdf_out, "output CSV path (default stdout)");

  // --- fit --------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand(
      "fit", "fit model parameters from timestamps (MLE or CCDF shape)");
  IngestFlags fit_ingest;
  add_ingest_flags(fit_cmd, &fit_ingest, true);
  std::string fit_method;
  bool fit_binned = false;
  int fit_bins = 0;
  int fit_exclude = 2;
  std::uint64_t fit_seed = 0;
  std::optional<double> init_alpha, init_beta, init_b;
  std::string fit_out;
  fit_cmd->add_option("--method", fit_method, "mle|ccdf")->required();
  fit_cmd->add_flag("--log-binned", fit_binned,
                    "ccdf method: fit 25 log-spaced abscissae");
  fit_cmd->add_option("--log-bins", fit_bins,
                      "ccdf method: fit this many log-spaced abscissae");
  fit_cmd->add_option("--exclude-largest", fit_exclude,
                      "ccdf method: drop the largest K gaps (default 2)");
  fit_cmd->add_option("--init-alpha", init_alpha, "mle starting alpha");
  fit_cmd->add_option("--init-beta", init_beta, "mle starting beta");
  fit_cmd->add_option("--init-b", init_b, "mle starting b");
  fit_cmd->add_option("--seed", fit_seed, "jitter seed");
  fit_cmd->add_option("--out", fit_out, "output JSON path (default stdout)");

  // --- theory -----------------------------------------------------------
  auto* th = app.add_subcommand(
      "theory", "theoretical interarrival survival P{T_(n+1) > t}");
  double th_alpha = 0, th_beta = 0, th_b = 0;
  unsigned th_n = 0;
  std::string th_method = "quadrature";
  std::optional<double> th_t, th_tmax, th_trunc;
  double th_tmin = 0.0;
  int th_points = 50;
  std::string th_grid = "linear";
  std::size_t th_reps = 100000;
  std::uint64_t th_seed = 0;
  std::string th_out;
  th->add_option("--alpha", th_alpha, "decaying rate at t=0")->required();
  th->add_option("--beta", th_beta, "persistent rate")->required();
  th->add_option("--b", th_b, "decay speed (1/days)")->required();
  th->add_option("--n", th_n, "which interarrival: T_(n+1) (default 0)");
  th->add_option("--method", th_method,
                 "closed|quadrature|mc|asymptotic (default quadrature)");
  th->add_option("--t", th_t, "evaluate at a single lag (days)");
  th->add_option("--t-min", th_tmin, "curve start (default 0)");
  th->add_option("--t-max", th_tmax, "curve end; triggers curve output");
  th->add_option("--points", th_points, "curve length (default 50)");
  th->add_option("--grid", th_grid, "linear|log (default linear)");
  th->add_option("--reps", th_reps, "mc replications (default 100000)");
  th->add_option("--truncation", th_trunc,
                 "quadrature upper bound (needed when beta=0)");
  th->add_option("--seed", th_seed, "mc seed");
  th->add_option("--out", th_out, "output CSV path (required for curves)");

  // --- gof --------------------------------------------------------------
  auto* gof_cmd = app.add_subcommand(
      "gof", "time-rescaling KS test of timestamps against parameters");
  IngestFlags gof_ingest;
  add_ingest_flags(gof_cmd, &gof_ingest, true);
  double gof_alpha = 0, gof_beta = 0, gof_b = 0;
  std::uint64_t gof_seed = 0;
  std::string gof_out;
  gof_cmd->add_option("--alpha", gof_alpha, "hypothesized alpha")->required();
  gof_cmd->add_option("--beta", gof_beta, "hypothesized beta")->required();
  gof_cmd->add_option("--b", gof_b, "hypothesized b")->required();
  gof_cmd->add_option("--seed", gof_seed, "jitter seed");
  gof_cmd->add_option("--out", gof_out, "output path (default stdout)");

  // --- regime -----------------------------------------------------------
  auto* reg = app.add_subcommand(
      "regime", "classify the interarrival tail regime of parameters");
  double reg_alpha = 0, reg_beta = 0, reg_b = 0;
  reg->add_option("--alpha", reg_alpha, "alpha")->required();
  reg->add_option("--beta", reg_beta, "beta")->required();
  reg->add_option("--b", reg_b, "b")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("waning");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_storage.size());
  for (auto& s : argv_storage) {
    argv.push_back(s.data());
  }

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }

    if (sim->parsed()) {
      const ModelParams params = make_params(sim_alpha, sim_beta, sim_b);
      if (sim_horizon.has_value() == sim_events.has_value()) {
        throw CliUsageError("give exactly one of --horizon and --events");
      }
      if (sim_sampler != "inversion" && sim_sampler != "thinning") {
        throw CliUsageError("--sampler must be inversion or thinning");
      }
      const std::uint64_t seed =
          resolve_seed(sim->count("--seed") > 0, sim_seed);
      SimulationSpec spec{params, sim_horizon,
                          sim_events ? std::optional<std::size_t>(*sim_events)
                                     : std::nullopt,
                          seed};
      const EventStream stream = sim_sampler == "inversion"
                                     ? sample_stream_inversion(spec)
                                     : sample_stream_thinning(spec);
      write_text_atomic(sim_out, format_stream_csv(stream));
      return 0;
    }

    if (ccdf_cmd->parsed()) {
      const std::optional<int> bins = resolve_bins(ccdf_binned, ccdf_bins);
      const std::uint64_t seed =
          resolve_seed(ccdf_cmd->count("--seed") > 0, ccdf_seed);
      const auto [text, options] = resolve_ingest(ccdf_ingest, seed);
      const IngestedSeries series = parse_timestamps(text, options);
      const InterarrivalSample gaps =
          interarrivals(series.stream, ccdf_ingest.include_first);
      emit(ccdf_out, format_ccdf_csv(empirical_ccdf(gaps, bins)), out);
      return 0;
    }

    if (fit_cmd->parsed()) {
      if (fit_method != "mle" && fit_method != "ccdf") {
        throw CliUsageError("--method must be mle or ccdf");
      }
      const int inits = (init_alpha ? 1 : 0) + (init_beta ? 1 : 0) +
                        (init_b ? 1 : 0);
      if (inits != 0 && inits != 3) {
        throw CliUsageError(
            "give all of --init-alpha/--init-beta/--init-b or none");
      }
      const std::optional<int> bins = resolve_bins(fit_binned, fit_bins);
      const std::uint64_t seed =
          resolve_seed(fit_cmd->count("--seed") > 0, fit_seed);
      const auto [text, options] = resolve_ingest(fit_ingest, seed);
      const IngestedSeries series = parse_timestamps(text, options);

      nlohmann::ordered_json record;
      record["method"] = fit_method;
      if (fit_method == "mle") {
        std::optional<ModelParams> init;
        if (inits == 3) {
          init = make_params(*init_alpha, *init_beta, *init_b);
        }
        const MleFit fit = fit_mle(series.stream, init);
        record["params"] = {{"alpha", fit.params.alpha},
                            {"beta", fit.params.beta},
                            {"b", fit.params.b}};
        record["log_likelihood"] = fit.log_likelihood;
        record["converged"] = fit.converged;
        record["iterations"] = fit.iterations;
      } else {
        const InterarrivalSample gaps =
            interarrivals(series.stream, fit_ingest.include_first);
        CcdfFitOptions fit_options;
        fit_options.exclude_largest = fit_exclude;
        const CutoffPowerLawFit fit =
            fit_ccdf(empirical_ccdf(gaps, bins), fit_options);
        record["prefactor"] = fit.prefactor;
        record["gamma"] = fit.gamma;
        record["t0"] = fit.t0;
        record["beta"] = fit.beta;
        record["sse"] = fit.sse;
        record["n_points"] = fit.n_points;
      }
      record["input_digest"] = digest_hex(text);
      emit(fit_out, record.dump(2) + "\n", out);
      return 0;
    }

    if (th->parsed()) {
      const ModelParams params = make_params(th_alpha, th_beta, th_b);
      CurveMethod method;
      if (th_method == "closed") {
        method = CurveMethod::kClosedForm;
        if (th_n != 0) {
          throw CliUsageError("--method closed requires --n 0");
        }
      } else if (th_method == "quadrature") {
        method = CurveMethod::kQuadrature;
      } else if (th_method == "mc") {
        method = CurveMethod::kMonteCarlo;
      } else if (th_method == "asymptotic") {
        method = CurveMethod::kAsymptotic;
        if (th_n == 0) {
          throw CliUsageError("--method asymptotic requires --n >= 1");
        }
      } else {
        throw CliUsageError(
            "--method must be closed, quadrature, mc or asymptotic");
      }
      if (th_t.has_value() == th_tmax.has_value()) {
        throw CliUsageError("give exactly one of --t and --t-max");
      }
      McSpec mc{th_reps, resolve_seed(th->count("--seed") > 0, th_seed)};

      std::vector<double> ts;
      if (th_t) {
        if (*th_t < 0.0) {
          throw CliUsageError("--t must be >= 0");
        }
        ts.push_back(*th_t);
      } else {
        if (th_points < 2) {
          throw CliUsageError("--points must be >= 2");
        }
        if (th_grid == "linear") {
          if (!(*th_tmax > th_tmin) || th_tmin < 0.0) {
            throw CliUsageError("need 0 <= --t-min < --t-max");
          }
          for (int i = 0; i < th_points; ++i) {
            ts.push_back(th_tmin + (*th_tmax - th_tmin) * i / (th_points - 1));
          }
        } else if (th_grid == "log") {
          if (!(th_tmin > 0.0) || !(*th_tmax > th_tmin)) {
            throw CliUsageError("log grid needs 0 < --t-min < --t-max");
          }
          const double step = std::log(*th_tmax / th_tmin) / (th_points - 1);
          for (int i = 0; i < th_points; ++i) {
            ts.push_back(i + 1 == th_points ? *th_tmax
                                            : th_tmin * std::exp(step * i));
          }
        } else {
          throw CliUsageError("--grid must be linear or log");
        }
        if (th_out.empty()) {
          throw CliUsageError("curve output needs --out PATH");
        }
      }

      const SurvivalCurve curve =
          survival_curve(params, th_n, ts, method, mc, th_trunc);
      if (th_t && th_out.empty()) {
        out << format_double(curve.points.front().survival) << '\n';
      } else {
        write_text_atomic(th_out, format_curve_csv(curve));
      }
      return 0;
    }

    if (gof_cmd->parsed()) {
      const ModelParams params = make_params(gof_alpha, gof_beta, gof_b);
      const std::uint64_t seed =
          resolve_seed(gof_cmd->count("--seed") > 0, gof_seed);
      const auto [text, options] = resolve_ingest(gof_ingest, seed);
      const IngestedSeries series = parse_timestamps(text, options);
      const GofReport report = rescale_and_test(series.stream, params);
      emit(gof_out, format_gof_record(report), out);
      return 0;
    }

    if (reg->parsed()) {
      const ModelParams params = make_params(reg_alpha, reg_beta, reg_b);
      out << regime_name(classify_regime(params)) << '\n';
      return 0;
    }

    err << "error: no subcommand given\n";
    return 1;
  } catch (const CliUsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace waning
