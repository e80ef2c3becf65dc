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

#include "tocost/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tocost/bo_counter.hpp"
#include "tocost/energy_lab.hpp"
#include "tocost/errors.hpp"
#include "tocost/opcount_oracle.hpp"

namespace tocost::cli {

namespace fs = std::filesystem;

std::vector<Count> parse_widths(std::string_view text) {
    auto to_count = [&](std::string_view s) -> Count {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ArgumentError("bad width '" + std::string(s) + "' in '" + std::string(text) + "'");
        return std::stoull(std::string(s));
    };
    std::vector<Count> widths;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        const Count lo = to_count(text.substr(0, dots));
        const Count hi = to_count(text.substr(dots + 2));
        for (Count w = lo; w <= hi; ++w) widths.push_back(w);  // lo > hi yields an empty range
        return widths;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (!part.empty() || comma != std::string_view::npos) widths.push_back(to_count(part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return widths;
}

std::vector<Activation> parse_activations(std::string_view text) {
    std::vector<Activation> acts;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (!part.empty()) acts.push_back(parse_activation(part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return acts;
}

namespace {

enum class Scale { Instance, Run };
enum class Basis { Tos, Flops };

struct Common {
    std::string level = "inference";
    std::string format;  // empty: keep the model file's format
    std::string cost_table;
    std::string out;
    std::string scale = "instance";
    bool raw = false;
};

class Printer {
public:
    explicit Printer(bool raw) : raw_(raw) {}

    std::string operator()(double v) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, raw_ ? "%.17g" : "%.6g", v);
        return buf;
    }
    std::string operator()(ToCount v) const { return (*this)(v.value); }

private:
    bool raw_;
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ArgumentError("cannot write '" + path + "'");
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

ModelSpec load(const std::string& path, const Common& c) {
    ModelSpec m = load_model(path);
    if (!c.format.empty()) m.float_format = parse_float_format(c.format);
    return m;
}

CostTable cost_table(const Common& c) {
    if (!c.cost_table.empty()) return load_cost_table(c.cost_table);
    if (const char* env = std::getenv(kCostTableEnv); env && *env) return load_cost_table(env);
    return CostTable{};
}

Scale parse_scale(const std::string& s) {
    if (s == "instance") return Scale::Instance;
    if (s == "run") return Scale::Run;
    throw EnumerationError("unknown scale '" + s + "' (expected instance|run)");
}

Basis parse_basis(const std::string& s) {
    if (s == "tos") return Basis::Tos;
    if (s == "flops") return Basis::Flops;
    throw EnumerationError("unknown basis '" + s + "' (expected tos|flops)");
}

/// The regression input for one model: TOs or FLOPs at the chosen scale.
double workload(const ModelSpec& m, AnalysisLevel level, const CostTable& table, Scale scale, Basis basis) {
    if (basis == Basis::Flops) {
        const auto f = flops_model(m, level);
        return static_cast<double>(scale == Scale::Run ? f.per_run.flops : f.per_instance.flops);
    }
    const auto p = analyze(m, level, table);
    return scale == Scale::Run ? p.per_run.total.value : p.per_instance.total.value;
}

void print_counts_row(std::ostream& os, const std::string& a, const std::string& b, const BasicOpCounts& c) {
    os << a << ',' << b;
    for (auto v : c.as_array()) os << ',' << v;
    os << '\n';
}

void add_common(CLI::App* sub, Common& c, bool with_cost) {
    sub->add_option("--level", c.level, "inference|validation|training")->capture_default_str();
    sub->add_option("--format", c.format, "fp16|fp32|fp64 (overrides the model file)");
    if (with_cost)
        sub->add_option("--cost-table", c.cost_table,
                        std::string("cost-table file (default: $") + kCostTableEnv + " or built-in)");
    sub->add_option("--out", c.out, "write the table to this file instead of stdout");
    sub->add_flag("--raw", c.raw, "print full machine precision");
}

// ---------------------------------------------------------------------------

int cmd_count(const std::string& path, const Common& c, std::ostream& out) {
    const auto model = load(path, c);
    const auto level = parse_level(c.level);
    const auto bos = count_model(model, level);
    Sink sink(c.out, out);
    auto& os = *sink;
    os << "layer,phase,add,sub,mul,div,root\n";
    for (std::size_t i = 0; i < bos.layers.size(); ++i) {
        const auto id = std::to_string(i + 1);
        print_counts_row(os, id, "forward", bos.layers[i].forward);
        if (level == AnalysisLevel::Training) {
            print_counts_row(os, id, "backprop", bos.layers[i].backprop);
            print_counts_row(os, id, "update_per_batch", bos.layers[i].update_per_batch);
        }
    }
    if (level != AnalysisLevel::Inference) print_counts_row(os, "loss", "loss", bos.loss);
    print_counts_row(os, "total", "per_instance", bos.per_instance);
    if (level == AnalysisLevel::Training) print_counts_row(os, "total", "update_per_step", bos.update_per_step);
    print_counts_row(os, "total", "per_run", bos.per_run);
    return kExitOk;
}

int cmd_tos(const std::string& path, const Common& c, std::ostream& out) {
    const auto model = load(path, c);
    const auto level = parse_level(c.level);
    const auto table = cost_table(c);
    const auto p = analyze(model, level, table);
    const Printer num(c.raw);
    Sink sink(c.out, out);
    auto& os = *sink;
    os << "item,scope,tos\n";
    for (auto k : kAllOpKinds)
        os << "fp_" << to_string(k) << ",per_op," << num(fp_op_tos(k, model.float_format, table)) << '\n';
    for (std::size_t i = 0; i < p.layer_forward.size(); ++i) {
        os << "layer" << i + 1 << ",forward," << num(p.layer_forward[i]) << '\n';
        if (level == AnalysisLevel::Training) os << "layer" << i + 1 << ",backprop," << num(p.layer_backprop[i]) << '\n';
    }
    auto totals = [&](const ToTotals& t, const char* scope) {
        os << "d_f_total," << scope << ',' << num(t.forward) << '\n';
        os << "d_bp_total," << scope << ',' << num(t.backprop) << '\n';
        os << "d_loss," << scope << ',' << num(t.loss) << '\n';
        os << "d_update," << scope << ',' << num(t.update) << '\n';
        os << "d_total," << scope << ',' << num(t.total) << '\n';
    };
    totals(p.per_instance, "per_instance");
    if (level == AnalysisLevel::Training) os << "update_per_step,per_step," << num(p.update_per_step) << '\n';
    totals(p.per_run, "per_run");
    os << "nonlinear_share,per_instance," << num(p.nonlinear_share_instance) << '\n';
    os << "nonlinear_share,per_run," << num(p.nonlinear_share_run) << '\n';
    return kExitOk;
}

struct IngestOptions {
    std::vector<std::string> traces;
    std::string adapter;
    std::size_t trim_k = 5;
    std::string out;
    bool raw = false;
};

int cmd_ingest(const IngestOptions& o, std::ostream& out) {
    const TraceAdapter adapter =
        o.adapter.empty() ? TraceAdapter::canonical() : parse_trace_adapter(read_text_file(o.adapter));
    std::vector<EnergySample> samples;
    for (const auto& file : o.traces) {
        const fs::path p(file);
        PowerTrace trace;
        try {
            trace = parse_power_trace(read_text_file(file), adapter);
        } catch (const DataError& e) {
            throw DataError(file + ": " + e.what(), e.index());
        } catch (const ArgumentError& e) {
            throw ArgumentError(file + ": " + e.what());
        }
        auto model_id = p.parent_path().filename().string();
        if (model_id.empty()) model_id = "default";
        samples.push_back({model_id, p.stem().string(), integrate_power(trace)});
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ArgumentError("cannot write '" + o.out + "'");
        f << format_energy_samples(samples);
    }

    // Per-model trimmed means, models in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> by_model;
    for (const auto& s : samples) {
        if (!by_model.contains(s.model_id)) order.push_back(s.model_id);
        by_model[s.model_id].push_back(s.joules);
    }
    const Printer num(o.raw);
    std::ostringstream table;
    table << "model_id,runs,trimmed_mean_j\n";
    for (const auto& id : order) {
        const auto& v = by_model[id];
        double mean;
        try {
            mean = trimmed_mean(v, o.trim_k);
        } catch (const ArgumentError& e) {
            throw ArgumentError("model '" + id + "': " + e.what());
        }
        table << id << ',' << v.size() << ',' << num(mean) << '\n';
    }
    out << table.str();
    return kExitOk;
}

int cmd_fit(const std::string& pairs, const std::string& out_path, std::ostream& out) {
    const auto points = parse_fit_points(read_text_file(pairs));
    const auto model = fit(points);
    Sink sink(out_path, out);
    *sink << format_linear_model(model);
    return kExitOk;
}

struct FamilyOptions {
    std::string widths;
    std::string activations;
};

std::vector<ModelSpec> expand(const ModelSpec& base, const FamilyOptions& f) {
    if (f.widths.empty() && f.activations.empty()) return {base};
    std::vector<Count> widths;
    if (f.widths.empty()) {
        widths.push_back(std::get<FullyConnected>(base.layers.front().kind).outputs);
    } else {
        widths = parse_widths(f.widths);
    }
    std::vector<Activation> acts;
    if (f.activations.empty()) {
        acts.push_back(base.layers.front().activation);
    } else {
        acts = parse_activations(f.activations);
    }
    return model_family(base, widths, acts);
}

int cmd_estimate(const std::vector<std::string>& files, const std::string& fit_file, const FamilyOptions& fam,
                 const std::string& basis_name, const Common& c, std::ostream& out) {
    const auto level = parse_level(c.level);
    const auto table = cost_table(c);
    const auto scale = parse_scale(c.scale);
    const auto basis = parse_basis(basis_name);
    const auto lr = parse_linear_model(read_text_file(fit_file));
    const Printer num(c.raw);
    std::ostringstream os;
    os << "model_id," << (basis == Basis::Tos ? "tos" : "flops") << ",predicted_j\n";
    for (const auto& file : files) {
        for (const auto& m : expand(load(file, c), fam)) {
            const double x = workload(m, level, table, scale, basis);
            os << m.name << ',' << num(x) << ',' << num(predict(lr, x)) << '\n';
        }
    }
    Sink sink(c.out, out);
    *sink << os.str();
    return kExitOk;
}

std::string render_svg(const std::vector<SweepRow>& rows) {
    constexpr double W = 640, H = 400, M = 50;
    double wmin = 1e300, wmax = -1e300, tmax = 0;
    for (const auto& r : rows) {
        wmin = std::min(wmin, static_cast<double>(r.width));
        wmax = std::max(wmax, static_cast<double>(r.width));
        tmax = std::max(tmax, r.tos.value);
    }
    if (wmax == wmin) wmax = wmin + 1;
    if (tmax <= 0) tmax = 1;
    auto px = [&](double w) { return M + (w - wmin) / (wmax - wmin) * (W - 2 * M); };
    auto py = [&](double t) { return H - M - t / tmax * (H - 2 * M); };
    const std::map<Activation, const char*> colors = {{Activation::None, "#555555"},
                                                      {Activation::Sigmoid, "#1f77b4"},
                                                      {Activation::Tanh, "#ff7f0e"},
                                                      {Activation::GELU, "#2ca02c"}};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">width</text>\n";
    os << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
       << ")\" text-anchor=\"middle\">theoretical TOs</text>\n";
    int legend = 0;
    for (const auto& [act, color] : colors) {
        std::string pts;
        for (const auto& r : rows) {
            if (r.activation != act) continue;
            pts += std::to_string(px(static_cast<double>(r.width))) + "," + std::to_string(py(r.tos.value)) + " ";
        }
        if (pts.empty()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << pts << "\"/>\n";
        os << "<text x=\"" << M + 10 << "\" y=\"" << M + 15 * ++legend << "\" fill=\"" << color << "\">"
           << to_string(act) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int cmd_sweep(const std::string& base_file, const FamilyOptions& fam, const std::string& fit_file,
              const std::string& plot, const Common& c, std::ostream& out) {
    const auto base = load(base_file, c);
    const auto level = parse_level(c.level);
    const auto table = cost_table(c);
    const auto scale = parse_scale(c.scale);
    if (fam.widths.empty()) throw ArgumentError("sweep: --widths is required");
    const auto widths = parse_widths(fam.widths);
    const auto acts = fam.activations.empty() ? std::vector<Activation>{Activation::Sigmoid}
                                              : parse_activations(fam.activations);
    std::optional<LinearModel> lr;
    if (!fit_file.empty()) lr = parse_linear_model(read_text_file(fit_file));

    const auto family = model_family(base, widths, acts);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& m = family[i];
        SweepRow r;
        r.width = widths[i / acts.size()];
        r.activation = acts[i % acts.size()];
        r.tos = ToCount{workload(m, level, table, scale, Basis::Tos)};
        const auto f = flops_model(m, level);
        r.flops = scale == Scale::Run ? f.per_run : f.per_instance;
        if (lr) r.predicted_energy = predict(*lr, r.tos.value);
        rows.push_back(r);
    }

    const Printer num(c.raw);
    std::ostringstream os;
    os << "width,activation,tos,macs,flops,predicted_j\n";
    for (const auto& r : rows) {
        os << r.width << ',' << to_string(r.activation) << ',' << num(r.tos) << ',' << r.flops.macs << ','
           << r.flops.flops << ',' << (r.predicted_energy ? num(*r.predicted_energy) : "") << '\n';
    }
    Sink sink(c.out, out);
    *sink << os.str();
    if (!plot.empty()) {
        std::ofstream f(plot, std::ios::binary);
        if (!f) throw ArgumentError("cannot write '" + plot + "'");
        f << render_svg(rows);
    }
    return kExitOk;
}

int cmd_compare(const std::string& tos_file, const std::string& flops_file, const std::string& actual_file,
                const std::string& out_path, bool raw, std::ostream& out) {
    const auto actual = parse_model_values(read_text_file(actual_file), {"joules", "trimmed_mean_j", "actual_j"});
    const auto tos = parse_model_values(read_text_file(tos_file), {"predicted_j", "joules"});
    const auto flops = parse_model_values(read_text_file(flops_file), {"predicted_j", "joules"});
    if (tos.size() != actual.size() || flops.size() != actual.size())
        throw ArgumentError("compare: mismatched lengths (actual " + std::to_string(actual.size()) + ", tos " +
                            std::to_string(tos.size()) + ", flops " + std::to_string(flops.size()) + ")");
    auto lookup = [](const std::vector<ModelValue>& v, const std::string& id, const char* what) {
        auto it = std::find_if(v.begin(), v.end(), [&](const ModelValue& m) { return m.model_id == id; });
        if (it == v.end()) throw ArgumentError(std::string("compare: no ") + what + " prediction for '" + id + "'");
        return it->value;
    };
    std::vector<double> a, pt, pf;
    for (const auto& m : actual) {
        a.push_back(m.value);
        pt.push_back(lookup(tos, m.model_id, "TOs"));
        pf.push_back(lookup(flops, m.model_id, "FLOPs"));
    }
    const auto rt = error_metrics(pt, a);
    const auto rf = error_metrics(pf, a);

    const Printer num(raw);
    std::ostringstream os;
    os << "model_id,actual_j,tos_pred_j,tos_precision_pct,flops_pred_j,flops_precision_pct\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        os << actual[i].model_id << ',' << num(a[i]) << ',' << num(pt[i]) << ',' << num(rt.precision_pct[i]) << ','
           << num(pf[i]) << ',' << num(rf.precision_pct[i]) << '\n';
    }
    os << "\nmethod,min_precision_pct,max_precision_pct,avg_error_j,max_error_j\n";
    auto summary = [&](const char* name, const ErrorReport& r) {
        const auto [lo, hi] = std::minmax_element(r.precision_pct.begin(), r.precision_pct.end());
        os << name << ',' << num(*lo) << ',' << num(*hi) << ',' << num(r.avg_error) << ',' << num(r.max_error) << '\n';
    };
    summary("flops", rf);
    summary("tos", rt);
    Sink sink(out_path, out);
    *sink << os.str();
    return kExitOk;
}

int cmd_tradeoff(const std::string& file, double alpha, std::ostream& out) {
    const auto candidates = parse_tradeoff_candidates(read_text_file(file));
    out << tradeoff_select(candidates, alpha).model_id << '\n';
    return kExitOk;
}

int cmd_oracle(const std::string& path, const Common& c, std::uint64_t seed, std::ostream& out) {
    const auto model = load(path, c);
    const auto level = parse_level(c.level);
    oracle::Network net(model, seed);
    const auto& first = std::get<FullyConnected>(model.layers.front().kind);
    const auto& last = std::get<FullyConnected>(model.layers.back().kind);
    std::vector<double> input(first.inputs), target(last.outputs, 0.5);
    for (std::size_t i = 0; i < input.size(); ++i) input[i] = 0.1 * static_cast<double>(i + 1);

    Sink sink(c.out, out);
    auto& os = *sink;
    os << "segment,scope,add,sub,mul,div,root\n";
    if (level == AnalysisLevel::Inference) {
        const auto r = net.run_forward(input);
        for (std::size_t i = 0; i < r.per_layer.size(); ++i) print_counts_row(os, "forward", std::to_string(i + 1), r.per_layer[i]);
        print_counts_row(os, "total", "per_instance", r.tally);
        return kExitOk;
    }
    const auto t = net.run_training_step(input, target);
    for (std::size_t i = 0; i < t.layer_forward.size(); ++i) print_counts_row(os, "forward", std::to_string(i + 1), t.layer_forward[i]);
    print_counts_row(os, "loss", "all", t.loss);
    if (level == AnalysisLevel::Training) {
        for (std::size_t i = 0; i < t.layer_backprop.size(); ++i)
            print_counts_row(os, "backprop", std::to_string(i + 1), t.layer_backprop[i]);
        for (std::size_t i = 0; i < t.layer_update.size(); ++i)
            print_counts_row(os, "update", std::to_string(i + 1), t.layer_update[i]);
        print_counts_row(os, "total", "per_instance", t.forward + t.loss + t.backprop);
        print_counts_row(os, "total", "update_per_step", t.update);
    } else {
        print_counts_row(os, "total", "per_instance", t.forward + t.loss);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transistor-operation cost model for feed-forward networks", "tocost"};
    app.require_subcommand(1);
    app.fallthrough();

    Common count_opts, tos_opts, est_opts, sweep_opts, oracle_opts;
    std::string model_file;

    auto* count = app.add_subcommand("count", "per-layer basic-operation counts");
    count->add_option("model", model_file, "model file")->required();
    add_common(count, count_opts, false);

    auto* tos = app.add_subcommand("tos", "theoretical transistor operations");
    tos->add_option("model", model_file, "model file")->required();
    add_common(tos, tos_opts, true);

    IngestOptions ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "integrate power traces into energy samples");
    ingest->add_option("traces", ingest_opts.traces, "trace files (<model_id>/<run_id>.csv)")->required();
    ingest->add_option("--adapter", ingest_opts.adapter, "vendor column-mapping config");
    ingest->add_option("--trim-k", ingest_opts.trim_k, "drop the k highest and k lowest runs")->capture_default_str();
    ingest->add_option("--out", ingest_opts.out, "write per-run energy samples here");
    ingest->add_flag("--raw", ingest_opts.raw, "print full machine precision");

    std::string pairs_file, fit_out;
    auto* fit_cmd = app.add_subcommand("fit", "fit energy = a + b * TOs");
    fit_cmd->add_option("pairs", pairs_file, "CSV with tos,joules")->required();
    fit_cmd->add_option("--out", fit_out, "write the fitted model here");

    std::vector<std::string> model_files;
    std::string fit_file, basis = "tos";
    FamilyOptions est_family;
    auto* estimate = app.add_subcommand("estimate", "predict energy from a fitted model");
    estimate->add_option("models", model_files, "model files")->required();
    estimate->add_option("--fit", fit_file, "fitted model file")->required();
    estimate->add_option("--basis", basis, "tos|flops")->capture_default_str();
    estimate->add_option("--scale", est_opts.scale, "instance|run")->capture_default_str();
    estimate->add_option("--widths", est_family.widths, "expand each model into a width family (a..b or csv)");
    estimate->add_option("--activations", est_family.activations, "hidden activations for the family (csv)");
    add_common(estimate, est_opts, true);

    FamilyOptions sweep_family;
    std::string sweep_fit, plot;
    auto* sweep = app.add_subcommand("sweep", "TOs/FLOPs over a width x activation grid");
    sweep->add_option("base", model_file, "base model file")->required();
    sweep->add_option("--widths", sweep_family.widths, "a..b or csv")->required();
    sweep->add_option("--activations", sweep_family.activations, "csv (default sigmoid)");
    sweep->add_option("--fit", sweep_fit, "fitted model for predicted energy");
    sweep->add_option("--plot", plot, "also write an SVG plot");
    sweep->add_option("--scale", sweep_opts.scale, "instance|run")->capture_default_str();
    add_common(sweep, sweep_opts, true);

    std::string cmp_tos, cmp_flops, cmp_actual, cmp_out;
    bool cmp_raw = false;
    auto* compare = app.add_subcommand("compare", "TOs vs FLOPs prediction accuracy");
    compare->add_option("--tos", cmp_tos, "TOs-based predictions (model_id,predicted_j)")->required();
    compare->add_option("--flops", cmp_flops, "FLOPs-based predictions (model_id,predicted_j)")->required();
    compare->add_option("--actual", cmp_actual, "measured energy (model_id,joules)")->required();
    compare->add_option("--out", cmp_out, "write the report here");
    compare->add_flag("--raw", cmp_raw, "print full machine precision");

    std::string cand_file;
    double alpha = 0.5;
    auto* tradeoff = app.add_subcommand("tradeoff", "pick the model minimizing alpha*E + (1-alpha)*loss");
    tradeoff->add_option("candidates", cand_file, "CSV with model_id,energy_j,loss")->required();
    tradeoff->add_option("--alpha", alpha, "weight on energy in [0, 1]")->required();

    std::uint64_t seed = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "");  // hidden: instrumented execution
    oracle_cmd->group("");
    oracle_cmd->add_option("model", model_file, "model file")->required();
    oracle_cmd->add_option("--seed", seed, "weight seed");
    add_common(oracle_cmd, oracle_opts, false);

    app.require_subcommand(1);

    std::vector<const char*> argv{"tocost"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*count) return cmd_count(model_file, count_opts, out);
        if (*tos) return cmd_tos(model_file, tos_opts, out);
        if (*ingest) return cmd_ingest(ingest_opts, out);
        if (*fit_cmd) return cmd_fit(pairs_file, fit_out, out);
        if (*estimate) return cmd_estimate(model_files, fit_file, est_family, basis, est_opts, out);
        if (*sweep) return cmd_sweep(model_file, sweep_family, sweep_fit, plot, sweep_opts, out);
        if (*compare) return cmd_compare(cmp_tos, cmp_flops, cmp_actual, cmp_out, cmp_raw, out);
        if (*tradeoff) return cmd_tradeoff(cand_file, alpha, out);
        if (*oracle_cmd) return cmd_oracle(model_file, oracle_opts, seed, out);
    } catch (const UnsupportedError& e) {
        err << "tocost: unsupported: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const Error& e) {
        err << "tocost: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "tocost: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace tocost::cli
