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
//
// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with its measured quantities; run with a criterion number (1-9) to execute
// one of them, with no number for all. `--cli PATH` points criterion 9 at
// the installed binary; without it the command layer is driven in-process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "waning/cli.hpp"
#include "waning/inference.hpp"
#include "waning/io.hpp"
#include "waning/model.hpp"
#include "waning/quadrature.hpp"
#include "waning/rng.hpp"
#include "waning/simulate.hpp"
#include "waning/stats.hpp"
#include "waning/theory.hpp"

namespace {

using namespace waning;
namespace fs = std::filesystem;

const ModelParams kRef(1.0, 0.1, 0.2);

// Pinned tolerances and trial counts.
constexpr std::size_t kFirstGapStreams = 100000;  // criterion 1
constexpr double kDkwDelta = 0.01;
constexpr double kRatioLo = 0.9;                  // criterion 2 window
constexpr double kRatioHi = 1.1;
constexpr double kWindowSurvival = 1e-3;          // defines T*
constexpr int kSeedTrials = 100;                  // criteria 3, 4, 7, 8
constexpr int kRegimePassMin = 97;                // criterion 3
constexpr int kSamplerPassMin = 97;               // criterion 4
constexpr std::size_t kFigGapStreams = 50000;     // criterion 5
constexpr double kGammaTol = 0.1;
constexpr double kBetaTol = 0.01;
constexpr double kNoiselessTol = 1e-4;
constexpr double kNestedTol = 1e-6;               // criterion 6
constexpr double kMleBandRel = 0.1;               // criterion 7
constexpr int kMlePassMin = 90;
constexpr std::size_t kMleEvents = 10000;
constexpr int kGofPassMin = 97;                   // criterion 8
constexpr int kMisfitFailMin = 95;
constexpr std::size_t kGofEvents = 2000;

std::string g_cli;  // path to the command-line binary, may be empty

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// ---------------------------------------------------------------------------
// 1. First-interarrival law: empirical CCDF of T_1 against the closed form,
//    sup deviation within the 1% DKW band.
bool criterion_1(std::ostream& log) {
  std::vector<double> gaps;
  gaps.reserve(kFirstGapStreams);
  for (std::size_t i = 0; i < kFirstGapStreams; ++i) {
    const auto spec = SimulationSpec::until_count(kRef, 1, derive_seed(101, i));
    gaps.push_back(sample_stream_inversion(spec).times.front());
  }
  std::sort(gaps.begin(), gaps.end());
  const double n = static_cast<double>(gaps.size());
  double dev = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double s = conditional_survival(kRef, 0.0, gaps[i]);
    dev = std::max(dev, s - (n - (i + 1)) / n);
    dev = std::max(dev, (n - i) / n - s);
  }
  const double bound = dkw_bound(kFirstGapStreams, kDkwDelta);
  log << "sup|ccdf - closed form| = " << fmt(dev) << " vs DKW bound "
      << fmt(bound) << " at n = " << kFirstGapStreams;
  return dev <= bound;
}

// ---------------------------------------------------------------------------
// 2. Deep-tail asymptote: marginal_survival(n=5) over asymptotic_survival
//    within [0.9, 1.1] on [T*, 2T*], T* set by asymptote = 1e-3.
bool criterion_2(std::ostream& log) {
  const unsigned n = 5;
  const double c = asymptotic_constant(kRef, n);
  const AsymptoticForm form = AsymptoticForm::from_model(kRef, c);

  double lo = 0.1, hi = 1e4;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (asymptotic_survival(form, mid) > kWindowSurvival ? lo : hi) = mid;
  }
  const double t_star = 0.5 * (lo + hi);

  double r_min = 1e300, r_max = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double t = t_star * (1.0 + i / 10.0);
    const double ratio =
        marginal_survival_quadrature(kRef, n, t) / asymptotic_survival(form, t);
    r_min = std::min(r_min, ratio);
    r_max = std::max(r_max, ratio);
  }
  log << "c(5) = " << fmt(c) << ", T* = " << fmt(t_star) << ", ratio in ["
      << fmt(r_min) << ", " << fmt(r_max) << "] vs required [" << kRatioLo
      << ", " << kRatioHi << "]";
  return r_min >= kRatioLo && r_max <= kRatioHi;
}

// ---------------------------------------------------------------------------
// 3. Exponential regime collapse: simulated gaps pass KS against the stated
//    rate in at least 97 of 100 seeded trials, for all three regimes.
bool criterion_3(std::ostream& log) {
  struct Regime {
    ModelParams params;
    double rate;
    double horizon;
    const char* name;
  };
  const Regime regimes[] = {
      {ModelParams(0.0, 1.0, 5.0), 1.0, 2000.0, "beta"},
      {ModelParams(2.0, 0.0, 0.0), 2.0, 1000.0, "alpha"},
      {ModelParams(1.0, 1.0, 0.0), 2.0, 1000.0, "alpha+beta"},
  };
  bool ok = true;
  for (std::size_t r = 0; r < 3; ++r) {
    int passes = 0;
    for (int s = 0; s < kSeedTrials; ++s) {
      const auto spec = SimulationSpec::until_horizon(
          regimes[r].params, regimes[r].horizon, derive_seed(300 + r, s));
      const auto gaps = interarrivals(sample_stream_inversion(spec)).values;
      const double rate = regimes[r].rate;
      const double d = ks_statistic(
          gaps, [rate](double x) { return -std::expm1(-rate * x); });
      passes += d < ks_critical_1pct(gaps.size());
    }
    log << "rate " << regimes[r].name << ": " << passes << "/" << kSeedTrials
        << "  ";
    ok = ok && passes >= kRegimePassMin;
  }
  log << "(need >= " << kRegimePassMin << " each)";
  return ok;
}

// ---------------------------------------------------------------------------
// 4. Sampler equivalence: inversion vs thinning gap samples pass the 1%
//    two-sample KS in at least 97 of 100 seeded trials.
bool criterion_4(std::ostream& log) {
  int passes = 0;
  for (int s = 0; s < kSeedTrials; ++s) {
    const auto inv = SimulationSpec::until_horizon(
        kRef, 2000.0, derive_seed(derive_seed(400, s), 0));
    const auto thin = SimulationSpec::until_horizon(
        kRef, 2000.0, derive_seed(derive_seed(400, s), 1));
    const auto a = interarrivals(sample_stream_inversion(inv)).values;
    const auto b = interarrivals(sample_stream_thinning(thin)).values;
    const double d = ks_two_sample(a, b);
    passes += d < ks_two_sample_critical_1pct(a.size(), b.size());
  }
  log << passes << "/" << kSeedTrials << " seeds below the 1% critical value"
      << " (need >= " << kSamplerPassMin << ")";
  return passes >= kSamplerPassMin;
}

// ---------------------------------------------------------------------------
// 5. Reference-curve round trip: (a) first-gap ensembles from the primary
//    reference parameters refit to gamma = 0.5 +- 0.1, beta = 0.065 +- 0.01
//    (median over ensembles; a single 5e4-gap fit has sigma_gamma ~ 0.11, so
//    the median is what tests calibration rather than draw luck);
//    (b) noiseless samples of all four reference forms refit to 1e-4.
bool criterion_5(std::ostream& log) {
  const double b = 1.0 / 7.7;
  const ModelParams truth(0.5 * b, 0.065, b);
  std::vector<double> gammas, betas;
  for (int ensemble = 0; ensemble < 8; ++ensemble) {
    InterarrivalSample sample;
    sample.values.reserve(kFigGapStreams);
    for (std::size_t i = 0; i < kFigGapStreams; ++i) {
      const auto spec = SimulationSpec::until_count(
          truth, 1, derive_seed(505 + ensemble, i));
      sample.values.push_back(sample_stream_inversion(spec).times.front());
    }
    const EmpiricalCcdf ccdf = empirical_ccdf(sample);
    // Delta-method weights for log-survival regression: Var[ln S_hat] is
    // proportional to (1 - S) / S, so weight by its inverse.
    CcdfFitOptions options;
    for (const CcdfPoint& p : ccdf.points) {
      options.weights.push_back(
          p.survival > 0.0 && p.survival < 1.0
              ? p.survival / (1.0 - p.survival)
              : 0.0);
    }
    const CutoffPowerLawFit fit = fit_ccdf(ccdf, options);
    gammas.push_back(fit.gamma);
    betas.push_back(fit.beta);
  }
  const auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]);
  };
  const double gamma_med = median(gammas);
  const double beta_med = median(betas);
  const bool ensemble_ok = std::abs(gamma_med - 0.5) <= kGammaTol &&
                           std::abs(beta_med - 0.065) <= kBetaTol;
  log << "median of 8 ensembles: gamma = " << fmt(gamma_med) << " (0.5 +- "
      << kGammaTol << "), beta = " << fmt(beta_med) << " (0.065 +- "
      << kBetaTol << "); ";

  const double forms[4][4] = {{1.85, 0.5, 7.7, 0.065},
                              {1.19, 0.16, 4.0, 0.04},
                              {1.95, 0.45, 3.0, 0.15},
                              {1.08, 0.2, 1.6, 0.125}};
  double worst = 0.0;
  for (const auto& f : forms) {
    EmpiricalCcdf curve;
    curve.sample_size = 80;
    for (int i = 0; i < 80; ++i) {
      const double t = 0.1 * std::pow(60.0 / 0.1, i / 79.0);
      curve.points.push_back(
          {t, f[0] * std::pow(t + f[2], -f[1]) * std::exp(-f[3] * t)});
    }
    const CutoffPowerLawFit exact = fit_ccdf(curve);
    const double fitted[4] = {exact.prefactor, exact.gamma, exact.t0,
                              exact.beta};
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(fitted[k] - f[k]) / f[k]);
    }
  }
  log << "noiseless worst relative error = " << fmt(worst) << " (need <= "
      << kNoiselessTol << ")";
  return ensemble_ok && worst <= kNoiselessTol;
}

// ---------------------------------------------------------------------------
// 6. Nested-integral reduction: the 1-D c(n) against direct 2-D and 3-D
//    nested quadrature that only ever touches the intensity function.
bool criterion_6(std::ostream& log) {
  const double x_top = 400.0;  // exp(-beta x) < 5e-18 beyond
  const auto lambda = [&](double x) { return intensity(kRef, x); };
  const auto inner1 = [&](double x2) {
    return integrate(lambda, 0.0, x2, 1e-9).value;
  };
  const double c2_nested =
      integrate(
          [&](double x2) {
            return std::exp(-kRef.beta * x2) * lambda(x2) * inner1(x2);
          },
          0.0, x_top, 1e-9)
          .value;
  const auto inner2 = [&](double x3) {
    return integrate([&](double x2) { return lambda(x2) * inner1(x2); }, 0.0,
                     x3, 1e-8)
        .value;
  };
  const double c3_nested =
      integrate(
          [&](double x3) {
            return std::exp(-kRef.beta * x3) * lambda(x3) * inner2(x3);
          },
          0.0, x_top, 1e-8)
          .value;

  const double err2 =
      std::abs(asymptotic_constant(kRef, 2) - c2_nested) / c2_nested;
  const double err3 =
      std::abs(asymptotic_constant(kRef, 3) - c3_nested) / c3_nested;
  log << "relative gap: n=2 " << fmt(err2) << ", n=3 " << fmt(err3)
      << " (need <= " << kNestedTol << ")";
  return err2 <= kNestedTol && err3 <= kNestedTol;
}

// ---------------------------------------------------------------------------
// 7. MLE recovery: the fitted intensity within 10% of the truth across the
//    whole observation window in at least 90 of 100 seeded trials.
bool criterion_7(std::ostream& log) {
  int passes = 0;
  double worst_sum = 0.0;
  for (int s = 0; s < kSeedTrials; ++s) {
    const auto spec =
        SimulationSpec::until_count(kRef, kMleEvents, derive_seed(707, s));
    const EventStream stream = sample_stream_inversion(spec);
    const MleFit fit = fit_mle(stream);
    double worst = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const double t = stream.horizon * k / 50.0;
      worst = std::max(worst, std::abs(intensity(fit.params, t) /
                                           intensity(kRef, t) -
                                       1.0));
    }
    worst_sum += worst;
    passes += worst <= kMleBandRel;
  }
  log << passes << "/" << kSeedTrials << " fits inside the 10% band (need >= "
      << kMlePassMin << "); mean worst deviation = "
      << fmt(worst_sum / kSeedTrials);
  return passes >= kMlePassMin;
}

// ---------------------------------------------------------------------------
// 8. Time-rescaling GOF: true parameters pass in >= 97/100 trials and the
//    constant-rate misfit at lambda(0) fails in >= 95/100.
bool criterion_8(std::ostream& log) {
  const ModelParams misfit(0.0, kRef.alpha + kRef.beta, 0.0);
  int true_passes = 0;
  int misfit_fails = 0;
  for (int s = 0; s < kSeedTrials; ++s) {
    const auto spec =
        SimulationSpec::until_count(kRef, kGofEvents, derive_seed(808, s));
    const EventStream stream = sample_stream_inversion(spec);
    true_passes += rescale_and_test(stream, kRef).pass;
    misfit_fails += !rescale_and_test(stream, misfit).pass;
  }
  log << "true params pass " << true_passes << "/" << kSeedTrials
      << " (need >= " << kGofPassMin << "), constant-rate misfit fails "
      << misfit_fails << "/" << kSeedTrials << " (need >= " << kMisfitFailMin
      << ")";
  return true_passes >= kGofPassMin && misfit_fails >= kMisfitFailMin;
}

// ---------------------------------------------------------------------------
// 9. CLI determinism: every seeded invocation is byte-identical on a rerun.
struct CliCase {
  std::string name;
  std::vector<std::string> args;  // with OUT placeholder for file output
  bool to_stdout;
};

std::string run_cli_capture(const std::vector<std::string>& args,
                            const std::string& stdout_file) {
  if (g_cli.empty()) {
    std::ostringstream out, err;
    const int status = run_command(args, out, err);
    if (status != 0) {
      throw std::runtime_error("command failed: " + err.str());
    }
    return out.str();
  }
  std::string cmd = "'" + g_cli + "'";
  for (const auto& a : args) {
    cmd += " '" + a + "'";
  }
  cmd += " > '" + stdout_file + "'";
  if (std::system(cmd.c_str()) != 0) {
    throw std::runtime_error("command failed: " + cmd);
  }
  return read_text_file(stdout_file);
}

bool criterion_9(std::ostream& log) {
  const fs::path dir = fs::temp_directory_path() / "waning-acceptance";
  fs::create_directories(dir);
  const std::string sim = (dir / "stream.csv").string();
  run_cli_capture({"simulate", "--alpha", "1", "--beta", "0.1", "--b", "0.2",
                   "--events", "400", "--seed", "11", "--out", sim},
                  (dir / "null").string());

  const std::vector<CliCase> cases = {
      {"simulate-horizon",
       {"simulate", "--alpha", "1", "--beta", "0.1", "--b", "0.2",
        "--horizon", "500", "--seed", "42", "--out", "OUT"},
       false},
      {"simulate-thinning",
       {"simulate", "--alpha", "1", "--beta", "0.1", "--b", "0.2", "--events",
        "200", "--sampler", "thinning", "--seed", "7", "--out", "OUT"},
       false},
      {"theory-mc",
       {"theory", "--alpha", "1", "--beta", "0.1", "--b", "0.2", "--n", "2",
        "--t", "3", "--method", "mc", "--reps", "20000", "--seed", "9"},
       true},
      {"theory-curve",
       {"theory", "--alpha", "1", "--beta", "0.1", "--b", "0.2", "--n", "1",
        "--t-min", "0", "--t-max", "50", "--points", "11", "--out", "OUT"},
       false},
      {"ccdf",
       {"ccdf", "--input", sim, "--column", "time_days", "--log-bins", "20",
        "--out", "OUT"},
       false},
      {"fit-ccdf",
       {"fit", "--input", sim, "--column", "time_days", "--method", "ccdf",
        "--out", "OUT"},
       false},
      {"fit-mle",
       {"fit", "--input", sim, "--column", "time_days", "--method", "mle",
        "--out", "OUT"},
       false},
      {"gof",
       {"gof", "--input", sim, "--column", "time_days", "--alpha", "1",
        "--beta", "0.1", "--b", "0.2", "--out", "OUT"},
       false},
      {"regime", {"regime", "--alpha", "1", "--beta", "0.1", "--b", "0.2"},
       true},
  };

  bool ok = true;
  for (const auto& c : cases) {
    std::string first, second;
    for (int round = 0; round < 2; ++round) {
      const std::string out_file =
          (dir / (c.name + "-" + std::to_string(round))).string();
      std::vector<std::string> args = c.args;
      for (auto& a : args) {
        if (a == "OUT") {
          a = out_file;
        }
      }
      const std::string captured = run_cli_capture(args, out_file + ".stdout");
      const std::string result =
          c.to_stdout ? captured : read_text_file(out_file);
      (round == 0 ? first : second) = result;
    }
    if (first != second || first.empty()) {
      log << c.name << " differs between reruns; ";
      ok = false;
    }
  }
  if (ok) {
    log << cases.size() << "/" << cases.size()
        << " seeded invocations byte-identical across reruns";
  }
  log << (g_cli.empty() ? " (in-process)" : " (subprocess)");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else {
      only = std::atoi(arg.c_str());
      if (only < 1 || only > 9) {
        std::cerr << "usage: waning_acceptance [1-9] [--cli PATH]\n";
        return 2;
      }
    }
  }

  struct Entry {
    int id;
    const char* title;
    std::function<bool(std::ostream&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "first-interarrival law vs closed form", criterion_1},
      {2, "deep-tail asymptote window", criterion_2},
      {3, "exponential regime collapse", criterion_3},
      {4, "sampler equivalence", criterion_4},
      {5, "reference-curve round trip", criterion_5},
      {6, "nested-integral reduction", criterion_6},
      {7, "mle intensity recovery", criterion_7},
      {8, "time-rescaling goodness of fit", criterion_8},
      {9, "cli determinism", criterion_9},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    if (only != 0 && entry.id != only) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool pass = false;
    try {
      pass = entry.fn(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << "criterion " << entry.id << " ["
              << (pass ? "PASS" : "FAIL") << "] " << entry.title << ": "
              << detail.str() << " [" << fmt(secs) << "s]\n";
    failures += !pass;
  }
  return failures == 0 ? 0 : 1;
}
