// Copyright 2026 The tocost Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Measured-energy side of the pipeline: power traces -> joules, repeated
// run aggregation, the TOs -> energy linear fit, and prediction scoring.

#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tocost {

struct PowerSample {
    double t = 0.0;  // seconds
    double p = 0.0;  // watts
};

struct PowerTrace {
    std::vector<PowerSample> samples;

    /// Throws ArgumentError (< 2 samples) or DataError naming the first bad
    /// sample (time not strictly increasing, negative or non-finite power).
    void validate() const;
};

/// Trapezoidal integral of power over time, in joules.
double integrate_power(const PowerTrace& trace);

/// Mean after dropping the k largest and k smallest samples.
double trimmed_mean(std::span<const double> samples, std::size_t k);

struct EnergySample {
    std::string model_id;
    std::string run_id;
    double joules = 0.0;

    friend bool operator==(const EnergySample&, const EnergySample&) = default;
};

struct FitPoint {
    double tos = 0.0;
    double joules = 0.0;
};

/// energy = intercept + slope * TOs
struct LinearModel {
    double intercept = 0.0;  // J
    double slope = 0.0;      // J per TO
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

/// Ordinary least squares.  Throws DegenerateFitError with fewer than two
/// points or when every TOs value is equal.
LinearModel fit(std::span<const FitPoint> points);

inline double predict(const LinearModel& model, double tos) { return model.intercept + model.slope * tos; }

struct ErrorReport {
    std::vector<double> precision_pct;  // 100 * (1 - |pred - actual| / actual), per model
    double avg_error = 0.0;             // mean |pred - actual|
    double max_error = 0.0;             // signed pred - actual of largest magnitude (first wins ties)
};

ErrorReport error_metrics(std::span<const double> predicted, std::span<const double> actual);

struct TradeoffCandidate {
    std::string model_id;
    double energy = 0.0;
    double loss = 0.0;
};

/// argmin of alpha * energy + (1 - alpha) * loss on raw values; first
/// occurrence wins ties.
const TradeoffCandidate& tradeoff_select(std::span<const TradeoffCandidate> candidates, double alpha);

// ---------------------------------------------------------------------------
// File formats

/// Maps a vendor power log onto the canonical trace.  Timestamps are
/// converted to seconds and rebased so the first row is t = 0.
struct TraceAdapter {
    std::string time_column = "elapsed_s";
    double time_scale = 1.0;  // multiplier to seconds (e.g. 1e-3 for ms)
    std::string power_column = "power_w";
    double power_scale = 1.0;  // multiplier to watts (e.g. 1e-3 for mW)
    char delimiter = ',';
    bool rebase_time = false;

    static TraceAdapter canonical() { return {}; }
};

/// JSON object with keys time_column, time_unit (s|ms|us|ns),
/// power_column, power_unit (W|mW|uW), delimiter; all optional.
TraceAdapter parse_trace_adapter(std::string_view text);

/// Parses a trace.  Errors are DataError with the 1-based file row.
PowerTrace parse_power_trace(std::string_view text, const TraceAdapter& adapter = TraceAdapter::canonical());
std::string format_power_trace(const PowerTrace& trace);

std::vector<EnergySample> parse_energy_samples(std::string_view text);
std::string format_energy_samples(std::span<const EnergySample> samples);

/// Header `tos,joules`; a `flops` column stands in for `tos` when present
/// instead, so the same fit serves the FLOPs baseline.
std::vector<FitPoint> parse_fit_points(std::string_view text);

LinearModel parse_linear_model(std::string_view text);
std::string format_linear_model(const LinearModel& model);

/// model_id,energy_j,loss
std::vector<TradeoffCandidate> parse_tradeoff_candidates(std::string_view text);

/// Per-model values from a CSV with a `model_id` column and the first of
/// `value_columns` present in the header.
struct ModelValue {
    std::string model_id;
    double value = 0.0;
};
std::vector<ModelValue> parse_model_values(std::string_view text,
                                           std::initializer_list<std::string_view> value_columns);

std::string read_text_file(const std::string& path);

}  // namespace tocost
