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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "waning/cli.hpp"
#include "waning/errors.hpp"
#include "waning/inference.hpp"
#include "waning/ingest.hpp"
#include "waning/io.hpp"
#include "waning/model.hpp"
#include "waning/rng.hpp"
#include "waning/simulate.hpp"
#include "waning/stats.hpp"
#include "waning/theory.hpp"

namespace py = pybind11;
using namespace waning;

namespace {

EventStream simulate(const ModelParams& params, std::optional<double> horizon,
                     std::optional<std::size_t> events, std::uint64_t seed,
                     const std::string& sampler) {
  SimulationSpec spec{params, horizon, events, seed};
  if (sampler == "inversion") {
    return sample_stream_inversion(spec);
  }
  if (sampler == "thinning") {
    return sample_stream_thinning(spec);
  }
  throw std::invalid_argument("sampler must be 'inversion' or 'thinning'");
}

SourceFormat format_from_name(const std::string& name) {
  if (name == "iso") {
    return SourceFormat::kIso8601Lines;
  }
  if (name == "numeric") {
    return SourceFormat::kNumericLines;
  }
  if (name == "csv") {
    return SourceFormat::kCsvColumn;
  }
  throw std::invalid_argument("format must be 'iso', 'numeric' or 'csv'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Waning-interest point process toolkit (time unit: days)";

  py::register_exception<EmptySampleError>(m, "EmptySampleError");
  py::register_exception<TooFewEventsError>(m, "TooFewEventsError");
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError");
  py::register_exception<UnsupportedConfigError>(m, "UnsupportedConfigError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<IoError>(m, "IoError");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, double>(), py::arg("alpha"),
           py::arg("beta"), py::arg("b"))
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("beta", &ModelParams::beta)
      .def_readonly("b", &ModelParams::b)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream out;
        out << "ModelParams(alpha=" << p.alpha << ", beta=" << p.beta
            << ", b=" << p.b << ")";
        return out.str();
      });

  py::enum_<RegimeClass>(m, "RegimeClass")
      .value("EXPONENTIAL_BETA", RegimeClass::kExponentialBeta)
      .value("EXPONENTIAL_ALPHA", RegimeClass::kExponentialAlpha)
      .value("EXPONENTIAL_ALPHA_PLUS_BETA",
             RegimeClass::kExponentialAlphaPlusBeta)
      .value("PURE_FAT_TAIL", RegimeClass::kPureFatTail)
      .value("POWER_LAW_EXP_CUTOFF", RegimeClass::kPowerLawExpCutoff);

  m.def("intensity", &intensity, py::arg("params"), py::arg("t"));
  m.def("cumulative_intensity", &cumulative_intensity, py::arg("params"),
        py::arg("t"));
  m.def("inverse_cumulative_intensity", &inverse_cumulative_intensity,
        py::arg("params"), py::arg("y"));
  m.def("conditional_survival", &conditional_survival, py::arg("params"),
        py::arg("x"), py::arg("t"));
  m.def("classify_regime", &classify_regime, py::arg("params"));
  m.def("regime_name", &regime_name, py::arg("regime"));
  m.def("homogeneous_rate", &homogeneous_rate, py::arg("params"));
  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("index"));

  py::class_<EventStream>(m, "EventStream")
      .def(py::init([](std::vector<double> times, double horizon,
                       std::optional<std::string> origin_label) {
             EventStream s{std::move(times), horizon, std::move(origin_label)};
             s.validate();
             return s;
           }),
           py::arg("times"), py::arg("horizon"),
           py::arg("origin_label") = std::nullopt)
      .def_readonly("times", &EventStream::times)
      .def_readonly("horizon", &EventStream::horizon)
      .def_readonly("origin_label", &EventStream::origin_label)
      .def("__len__", &EventStream::size);

  m.def("simulate", &simulate, py::arg("params"),
        py::arg("horizon") = std::nullopt, py::arg("events") = std::nullopt,
        py::arg("seed") = 1, py::arg("sampler") = "inversion",
        "Sample a stream; stop at a horizon or an event count.");

  py::class_<InterarrivalSample>(m, "InterarrivalSample")
      .def(py::init<std::vector<double>, std::size_t>(), py::arg("values"),
           py::arg("zero_count") = 0)
      .def_readonly("values", &InterarrivalSample::values)
      .def_readonly("zero_count", &InterarrivalSample::zero_count);

  m.def("interarrivals", &interarrivals, py::arg("stream"),
        py::arg("include_first") = false);

  py::class_<CcdfPoint>(m, "CcdfPoint")
      .def_readonly("t", &CcdfPoint::t)
      .def_readonly("survival", &CcdfPoint::survival);

  py::class_<EmpiricalCcdf>(m, "EmpiricalCcdf")
      .def_readonly("points", &EmpiricalCcdf::points)
      .def_readonly("sample_size", &EmpiricalCcdf::sample_size);

  m.def("empirical_ccdf", &empirical_ccdf, py::arg("sample"),
        py::arg("log_bins") = std::nullopt);

  m.def("ks_statistic", &ks_statistic, py::arg("values"), py::arg("cdf"));
  m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"));
  m.def("ks_critical_1pct", &ks_critical_1pct, py::arg("n"));
  m.def("ks_two_sample_critical_1pct", &ks_two_sample_critical_1pct,
        py::arg("n"), py::arg("m"));
  m.def("dkw_bound", &dkw_bound, py::arg("n"), py::arg("delta"));

  py::class_<GofReport>(m, "GofReport")
      .def_readonly("ks_statistic", &GofReport::ks_statistic)
      .def_readonly("sample_size", &GofReport::sample_size)
      .def_readonly("critical_value_1pct", &GofReport::critical_value_1pct)
      .def_readonly("pass_", &GofReport::pass)
      .def("__repr__", [](const GofReport& r) {
        return format_gof_record(r);
      });

  m.def("rescale_and_test", &rescale_and_test, py::arg("stream"),
        py::arg("params"));

  m.def("arrival_time_density", &arrival_time_density, py::arg("params"),
        py::arg("n"), py::arg("x"));
  m.def("marginal_survival_quadrature", &marginal_survival_quadrature,
        py::arg("params"), py::arg("n"), py::arg("t"),
        py::arg("truncation") = std::nullopt);
  m.def(
      "marginal_survival_monte_carlo",
      [](const ModelParams& params, unsigned n, double t, std::size_t reps,
         std::uint64_t seed) {
        const McEstimate est =
            marginal_survival_monte_carlo(params, n, t, {reps, seed});
        return py::make_tuple(est.value, est.std_error);
      },
      py::arg("params"), py::arg("n"), py::arg("t"),
      py::arg("reps") = 100000, py::arg("seed") = 1,
      "Returns (estimate, standard_error).");
  m.def("asymptotic_constant", &asymptotic_constant, py::arg("params"),
        py::arg("n"));

  py::class_<AsymptoticForm>(m, "AsymptoticForm")
      .def(py::init<double, double, double, double>(), py::arg("c"),
           py::arg("alpha_over_b"), py::arg("one_over_b"), py::arg("beta"))
      .def_static("from_model", &AsymptoticForm::from_model, py::arg("params"),
                  py::arg("c"))
      .def_static("from_prefactor", &AsymptoticForm::from_prefactor,
                  py::arg("prefactor"), py::arg("gamma"), py::arg("t0"),
                  py::arg("beta"))
      .def_readonly("c", &AsymptoticForm::c)
      .def_readonly("alpha_over_b", &AsymptoticForm::alpha_over_b)
      .def_readonly("one_over_b", &AsymptoticForm::one_over_b)
      .def_readonly("beta", &AsymptoticForm::beta)
      .def("prefactor", &AsymptoticForm::prefactor);

  m.def("asymptotic_survival", &asymptotic_survival, py::arg("form"),
        py::arg("t"));

  m.def("log_likelihood", &log_likelihood, py::arg("params"),
        py::arg("stream"));

  py::class_<MleFit>(m, "MleFit")
      .def_readonly("params", &MleFit::params)
      .def_readonly("log_likelihood", &MleFit::log_likelihood)
      .def_readonly("converged", &MleFit::converged)
      .def_readonly("iterations", &MleFit::iterations);

  m.def("fit_mle", &fit_mle, py::arg("stream"),
        py::arg("init") = std::nullopt);

  py::class_<CutoffPowerLawFit>(m, "CutoffPowerLawFit")
      .def_readonly("prefactor", &CutoffPowerLawFit::prefactor)
      .def_readonly("gamma", &CutoffPowerLawFit::gamma)
      .def_readonly("t0", &CutoffPowerLawFit::t0)
      .def_readonly("beta", &CutoffPowerLawFit::beta)
      .def_readonly("sse", &CutoffPowerLawFit::sse)
      .def_readonly("n_points", &CutoffPowerLawFit::n_points)
      .def("to_model_params", &CutoffPowerLawFit::to_model_params);

  m.def(
      "fit_ccdf",
      [](const EmpiricalCcdf& ccdf, std::vector<double> weights,
         int exclude_largest) {
        return fit_ccdf(ccdf, {std::move(weights), exclude_largest});
      },
      py::arg("ccdf"), py::arg("weights") = std::vector<double>{},
      py::arg("exclude_largest") = 2);

  m.def("simplify_params", &simplify_params, py::arg("stream"),
        py::arg("params"), py::arg("delta") = 0.5);

  py::class_<IngestedSeries>(m, "IngestedSeries")
      .def_readonly("stream", &IngestedSeries::stream)
      .def_readonly("raw_count", &IngestedSeries::raw_count)
      .def_readonly("dropped_duplicates", &IngestedSeries::dropped_duplicates);

  m.def(
      "parse_timestamps",
      [](const std::string& text, const std::string& format,
         const std::string& csv_column, bool include_first,
         const std::string& dedup, double jitter_resolution,
         std::uint64_t jitter_seed, std::optional<double> horizon) {
        IngestOptions options;
        options.format = format_from_name(format);
        options.csv_column = csv_column;
        options.include_first = include_first;
        if (dedup == "drop") {
          options.dedup = DedupPolicy::kDrop;
        } else if (dedup == "jitter") {
          options.dedup = DedupPolicy::kJitter;
        } else {
          throw std::invalid_argument("dedup must be 'drop' or 'jitter'");
        }
        options.jitter_resolution = jitter_resolution;
        options.jitter_seed = jitter_seed;
        options.horizon = horizon;
        return parse_timestamps(text, options);
      },
      py::arg("text"), py::arg("format") = "numeric",
      py::arg("csv_column") = "", py::arg("include_first") = false,
      py::arg("dedup") = "drop", py::arg("jitter_resolution") = 1.0,
      py::arg("jitter_seed") = 1, py::arg("horizon") = std::nullopt);

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) { return run_command(args); },
      py::arg("args"), "Run a CLI invocation in-process; returns exit code.");
}
