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

#include "tocost/energy_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "tocost/errors.hpp"

namespace tocost {

void PowerTrace::validate() const {
    if (samples.size() < 2)
        throw ArgumentError("power trace needs at least 2 samples, got " + std::to_string(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.p))
            throw DataError("power trace sample " + std::to_string(i) + " is not finite", i);
        if (s.p < 0.0) throw DataError("power trace sample " + std::to_string(i) + " has negative power", i);
        if (i > 0 && !(s.t > samples[i - 1].t))
            throw DataError("power trace time is not strictly increasing at sample " + std::to_string(i), i);
    }
}

double integrate_power(const PowerTrace& trace) {
    trace.validate();
    double joules = 0.0;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        const auto& a = trace.samples[i - 1];
        const auto& b = trace.samples[i];
        joules += (b.t - a.t) * (a.p + b.p) / 2.0;
    }
    return joules;
}

double trimmed_mean(std::span<const double> samples, std::size_t k) {
    if (samples.size() <= 2 * k)
        throw ArgumentError("trimmed mean: " + std::to_string(samples.size()) +
                            " samples cannot drop " + std::to_string(k) + " from each end");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto first = sorted.begin() + static_cast<std::ptrdiff_t>(k);
    const auto last = sorted.end() - static_cast<std::ptrdiff_t>(k);
    return std::accumulate(first, last, 0.0) / static_cast<double>(last - first);
}

LinearModel fit(std::span<const FitPoint> points) {
    if (points.size() < 2)
        throw DegenerateFitError("linear fit needs at least 2 points, got " + std::to_string(points.size()));
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.tos;
        my += p.joules;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = p.tos - mx, dy = p.joules - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DegenerateFitError("linear fit: all TOs values are equal");

    LinearModel m;
    m.slope = sxy / sxx;
    m.intercept = my - m.slope * mx;
    m.n_points = points.size();
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (const auto& p : points) {
            const double r = p.joules - predict(m, p.tos);
            ss_res += r * r;
        }
        m.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    } else {
        m.r_squared = 1.0;  // constant response is fitted exactly
    }
    return m;
}

ErrorReport error_metrics(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw ArgumentError("error metrics: " + std::to_string(predicted.size()) + " predictions vs " +
                            std::to_string(actual.size()) + " actual values");
    if (actual.empty()) throw ArgumentError("error metrics: no values");
    ErrorReport r;
    double sum_abs = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0)) throw ArgumentError("error metrics: actual value " + std::to_string(i) + " is not positive");
        const double e = predicted[i] - actual[i];
        r.precision_pct.push_back(100.0 * (1.0 - std::abs(e) / actual[i]));
        sum_abs += std::abs(e);
        if (std::abs(e) > std::abs(r.max_error)) r.max_error = e;
    }
    r.avg_error = sum_abs / static_cast<double>(actual.size());
    return r;
}

const TradeoffCandidate& tradeoff_select(std::span<const TradeoffCandidate> candidates, double alpha) {
    if (candidates.empty()) throw ArgumentError("trade-off: no candidates");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("trade-off: alpha must lie in [0, 1]");
    const TradeoffCandidate* best = &candidates.front();
    double best_score = alpha * best->energy + (1.0 - alpha) * best->loss;
    for (const auto& c : candidates.subspan(1)) {
        const double score = alpha * c.energy + (1.0 - alpha) * c.loss;
        if (score < best_score) {
            best = &c;
            best_score = score;
        }
    }
    return *best;
}

// ---------------------------------------------------------------------------
// File formats

namespace {

struct CsvRow {
    std::size_t line = 0;  // 1-based
    std::vector<std::string> cells;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<CsvRow> split_csv(std::string_view text, char delim) {
    std::vector<CsvRow> rows;
    std::size_t line = 0, pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line;
        auto raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (trim(raw).empty()) continue;
        CsvRow row{line, {}};
        std::size_t start = 0;
        while (true) {
            auto d = raw.find(delim, start);
            row.cells.push_back(trim(raw.substr(start, d == std::string_view::npos ? raw.npos : d - start)));
            if (d == std::string_view::npos) break;
            start = d + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t column(const CsvRow& header, const std::string& name, const char* what) {
    auto it = std::find(header.cells.begin(), header.cells.end(), name);
    if (it == header.cells.end())
        throw DataError(std::string(what) + ": header row has no column '" + name + "'", header.line);
    return static_cast<std::size_t>(it - header.cells.begin());
}

const std::string& cell(const CsvRow& row, std::size_t col, const char* what) {
    if (col >= row.cells.size())
        throw DataError(std::string(what) + ": row " + std::to_string(row.line) + " has too few columns", row.line);
    return row.cells[col];
}

double number(const CsvRow& row, std::size_t col, const char* what) {
    const auto& s = cell(row, col, what);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw DataError(std::string(what) + ": row " + std::to_string(row.line) + ": '" + s + "' is not a number",
                        row.line);
    return v;
}

std::string fmt_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

TraceAdapter parse_trace_adapter(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("trace adapter: ") + e.what(), 0, "");
    }
    if (!doc.is_object()) throw ParseError("trace adapter must be an object", 0, "");
    TraceAdapter a;
    a.rebase_time = true;
    auto str = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_string()) throw ParseError("expected a string", 0, key);
        return v.get<std::string>();
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "time_column") {
            a.time_column = str(v, key);
        } else if (key == "power_column") {
            a.power_column = str(v, key);
        } else if (key == "time_unit") {
            const auto u = str(v, key);
            if (u == "s") a.time_scale = 1.0;
            else if (u == "ms") a.time_scale = 1e-3;
            else if (u == "us") a.time_scale = 1e-6;
            else if (u == "ns") a.time_scale = 1e-9;
            else throw EnumerationError("trace adapter: unknown time_unit '" + u + "' (expected s|ms|us|ns)");
        } else if (key == "power_unit") {
            const auto u = str(v, key);
            if (u == "W") a.power_scale = 1.0;
            else if (u == "mW") a.power_scale = 1e-3;
            else if (u == "uW") a.power_scale = 1e-6;
            else throw EnumerationError("trace adapter: unknown power_unit '" + u + "' (expected W|mW|uW)");
        } else if (key == "delimiter") {
            const auto d = str(v, key);
            if (d.size() != 1) throw ParseError("delimiter must be a single character", 0, key);
            a.delimiter = d[0];
        } else {
            throw ParseError("unknown key", 0, key);
        }
    }
    return a;
}

PowerTrace parse_power_trace(std::string_view text, const TraceAdapter& adapter) {
    constexpr const char* what = "power trace";
    const auto rows = split_csv(text, adapter.delimiter);
    if (rows.empty()) throw DataError("power trace: empty file", 0);
    const auto tcol = column(rows.front(), adapter.time_column, what);
    const auto pcol = column(rows.front(), adapter.power_column, what);

    PowerTrace trace;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        trace.samples.push_back({number(rows[i], tcol, what) * adapter.time_scale,
                                 number(rows[i], pcol, what) * adapter.power_scale});
    }
    if (adapter.rebase_time && !trace.samples.empty()) {
        const double t0 = trace.samples.front().t;
        for (auto& s : trace.samples) s.t -= t0;
    }
    try {
        trace.validate();
    } catch (const DataError& e) {
        const std::size_t row = rows[e.index() + 1].line;
        throw DataError(std::string(what) + ": row " + std::to_string(row) + ": " + e.what(), row);
    }
    return trace;
}

std::string format_power_trace(const PowerTrace& trace) {
    std::string out = "elapsed_s,power_w\n";
    for (const auto& s : trace.samples) out += fmt_real(s.t) + "," + fmt_real(s.p) + "\n";
    return out;
}

std::vector<EnergySample> parse_energy_samples(std::string_view text) {
    constexpr const char* what = "energy samples";
    const auto rows = split_csv(text, ',');
    if (rows.empty()) throw DataError("energy samples: empty file", 0);
    const auto mcol = column(rows.front(), "model_id", what);
    const auto rcol = column(rows.front(), "run_id", what);
    const auto jcol = column(rows.front(), "joules", what);
    std::vector<EnergySample> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EnergySample s{cell(rows[i], mcol, what), cell(rows[i], rcol, what), number(rows[i], jcol, what)};
        if (s.joules < 0.0)
            throw DataError("energy samples: row " + std::to_string(rows[i].line) + ": negative energy", rows[i].line);
        out.push_back(std::move(s));
    }
    return out;
}

std::string format_energy_samples(std::span<const EnergySample> samples) {
    std::string out = "model_id,run_id,joules\n";
    for (const auto& s : samples) out += s.model_id + "," + s.run_id + "," + fmt_real(s.joules) + "\n";
    return out;
}

std::vector<FitPoint> parse_fit_points(std::string_view text) {
    constexpr const char* what = "fit points";
    const auto rows = split_csv(text, ',');
    if (rows.empty()) throw DataError("fit points: empty file", 0);
    const auto& header = rows.front().cells;
    const bool flops = std::find(header.begin(), header.end(), "tos") == header.end() &&
                       std::find(header.begin(), header.end(), "flops") != header.end();
    const auto tcol = column(rows.front(), flops ? "flops" : "tos", what);
    const auto jcol = column(rows.front(), "joules", what);
    std::vector<FitPoint> out;
    for (std::size_t i = 1; i < rows.size(); ++i)
        out.push_back({number(rows[i], tcol, what), number(rows[i], jcol, what)});
    return out;
}

LinearModel parse_linear_model(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("fitted model: ") + e.what(), 0, "");
    }
    if (!doc.is_object()) throw ParseError("fitted model must be an object", 0, "");
    LinearModel m;
    bool have_a = false, have_b = false;
    for (const auto& [key, v] : doc.items()) {
        if (key == "n_points") {
            if (!v.is_number_unsigned()) throw ParseError("expected a non-negative integer", 0, key);
            m.n_points = v.get<std::size_t>();
            continue;
        }
        if (!v.is_number()) throw ParseError("expected a number", 0, key);
        if (key == "intercept_j") m.intercept = v.get<double>(), have_a = true;
        else if (key == "slope_j_per_to") m.slope = v.get<double>(), have_b = true;
        else if (key == "r_squared") m.r_squared = v.get<double>();
        else throw ParseError("unknown key", 0, key);
    }
    if (!have_a) throw ParseError("missing required key", 0, "intercept_j");
    if (!have_b) throw ParseError("missing required key", 0, "slope_j_per_to");
    return m;
}

std::string format_linear_model(const LinearModel& m) {
    nlohmann::ordered_json doc;
    doc["intercept_j"] = m.intercept;
    doc["slope_j_per_to"] = m.slope;
    doc["r_squared"] = m.r_squared;
    doc["n_points"] = m.n_points;
    return doc.dump(2) + "\n";
}

std::vector<TradeoffCandidate> parse_tradeoff_candidates(std::string_view text) {
    constexpr const char* what = "trade-off candidates";
    const auto rows = split_csv(text, ',');
    if (rows.empty()) throw DataError("trade-off candidates: empty file", 0);
    const auto mcol = column(rows.front(), "model_id", what);
    const auto ecol = column(rows.front(), "energy_j", what);
    const auto lcol = column(rows.front(), "loss", what);
    std::vector<TradeoffCandidate> out;
    for (std::size_t i = 1; i < rows.size(); ++i)
        out.push_back({cell(rows[i], mcol, what), number(rows[i], ecol, what), number(rows[i], lcol, what)});
    return out;
}

std::vector<ModelValue> parse_model_values(std::string_view text,
                                           std::initializer_list<std::string_view> value_columns) {
    constexpr const char* what = "model values";
    const auto rows = split_csv(text, ',');
    if (rows.empty()) throw DataError("model values: empty file", 0);
    const auto& header = rows.front().cells;
    std::string value_name;
    for (auto name : value_columns) {
        if (std::find(header.begin(), header.end(), name) != header.end()) {
            value_name = name;
            break;
        }
    }
    if (value_name.empty()) throw DataError("model values: header row has no value column", rows.front().line);
    const auto mcol = column(rows.front(), "model_id", what);
    const auto vcol = column(rows.front(), value_name, what);
    std::vector<ModelValue> out;
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back({cell(rows[i], mcol, what), number(rows[i], vcol, what)});
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace tocost
