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

#include "tocost/to_calculator.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tocost/bo_counter.hpp"
#include "tocost/errors.hpp"

namespace tocost {

using nlohmann::json;

void CostTable::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("cost table: ") + name + " must be a positive finite number");
    };
    positive(fa_transistors, "fa");
    positive(ha_transistors, "ha");
    positive(xor_transistors, "xor");
    positive(mult_ref.transistors, "mult_ref_transistors");
    positive(div_ref.transistors, "div_ref_transistors");
    positive(scaling_exponent, "scaling_exponent");
    if (mult_ref.ref_bits == 0) throw ValidationError("cost table: mult_ref_bits must be > 0");
    if (div_ref.ref_bits == 0) throw ValidationError("cost table: div_ref_bits must be > 0");
    if (newton_iterations == 0) throw ValidationError("cost table: newton_iterations must be >= 1");
}

CostTable parse_cost_table(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("cost table: ") + e.what(), 0, "");
    }
    if (!doc.is_object()) throw ParseError("cost table must be an object", 0, "");

    CostTable t;
    auto real = [](const json& v, const std::string& key) {
        if (!v.is_number()) throw ParseError("expected a number", 0, key);
        return v.get<double>();
    };
    auto count = [](const json& v, const std::string& key) -> Count {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
            throw ParseError("expected a non-negative integer", 0, key);
        return v.get<Count>();
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "fa") t.fa_transistors = real(v, key);
        else if (key == "ha") t.ha_transistors = real(v, key);
        else if (key == "xor") t.xor_transistors = real(v, key);
        else if (key == "mult_ref_bits") t.mult_ref.ref_bits = count(v, key);
        else if (key == "mult_ref_transistors") t.mult_ref.transistors = real(v, key);
        else if (key == "div_ref_bits") t.div_ref.ref_bits = count(v, key);
        else if (key == "div_ref_transistors") t.div_ref.transistors = real(v, key);
        else if (key == "scaling_exponent") t.scaling_exponent = real(v, key);
        else if (key == "newton_iterations") t.newton_iterations = count(v, key);
        else throw ParseError("unknown key", 0, key);
    }
    t.validate();
    return t;
}

CostTable load_cost_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open cost table '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_cost_table(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line(), e.field());
    }
}

ToCount adder_tos(Count bits, const CostTable& table) {
    if (bits == 0) throw ArgumentError("adder width must be >= 1 bit");
    return {static_cast<double>(bits - 1) * table.fa_transistors + table.ha_transistors};
}

ToCount scaled_unit_tos(Count bits, const ReferenceCircuit& ref, double gamma) {
    if (bits == 0) throw ArgumentError("unit width must be >= 1 bit");
    if (ref.ref_bits == 0) throw ArgumentError("reference width must be >= 1 bit");
    if (bits == ref.ref_bits) return {ref.transistors};
    const double ratio = static_cast<double>(bits) / static_cast<double>(ref.ref_bits);
    return {ref.transistors * std::pow(ratio, gamma)};
}

ToCount fp_op_tos(OpKind op, const FloatFormat& fmt, const CostTable& table) {
    fmt.validate();
    const Count significand = fmt.fraction_bits + 1;  // hidden bit
    const Count exponent = fmt.exponent_bits;
    const double xor_cost = table.xor_transistors * static_cast<double>(fmt.sign_bits);

    const ToCount add = adder_tos(significand, table);
    auto mul = [&] {
        return ToCount{xor_cost} + scaled_unit_tos(significand, table.mult_ref, table.scaling_exponent) +
               adder_tos(exponent, table);
    };
    auto div = [&] {
        return ToCount{xor_cost} + scaled_unit_tos(significand, table.div_ref, table.scaling_exponent) +
               adder_tos(exponent, table);
    };

    switch (op) {
        case OpKind::Add:
        case OpKind::Sub: return add;
        case OpKind::Mul: return mul();
        case OpKind::Div: return div();
        case OpKind::Root:
            return (div() + mul() + add) * static_cast<double>(table.newton_iterations);
    }
    return {};
}

ToCount tos_from_bos(const BasicOpCounts& bos, const FloatFormat& fmt, const CostTable& table) {
    ToCount total;
    for (auto k : kAllOpKinds) {
        if (bos[k] == 0) continue;
        total += fp_op_tos(k, fmt, table) * static_cast<double>(bos[k]);
    }
    return total;
}

namespace {

double share_outside(ToCount linear, ToCount total) {
    return total.value > 0.0 ? 1.0 - linear.value / total.value : 0.0;
}

}  // namespace

ToProfile analyze(const ModelSpec& model, AnalysisLevel level, const CostTable& table) {
    table.validate();
    const ModelBoCounts bos = count_model(model, level);
    const FloatFormat& fmt = model.float_format;
    auto lower = [&](const BasicOpCounts& c) { return tos_from_bos(c, fmt, table); };

    ToProfile p;
    p.level = level;
    p.format = fmt;
    BasicOpCounts linear;
    for (std::size_t i = 0; i < bos.layers.size(); ++i) {
        const auto& layer = bos.layers[i];
        p.layer_forward.push_back(lower(layer.forward));
        p.layer_backprop.push_back(lower(layer.backprop));
        p.per_instance.forward += p.layer_forward.back();
        p.per_instance.backprop += p.layer_backprop.back();
        linear += count_forward_linear(model.layers[i]);
        if (level == AnalysisLevel::Training) linear += count_backprop_linear(model.layers[i], i == 0);
    }
    p.per_instance.loss = lower(bos.loss);
    p.per_instance.total = p.per_instance.forward + p.per_instance.backprop + p.per_instance.loss;
    p.update_per_step = lower(bos.update_per_step);

    const auto n = static_cast<double>(bos.instances_per_run);
    const auto steps = static_cast<double>(bos.update_steps_per_run);
    p.per_run.forward = p.per_instance.forward * n;
    p.per_run.backprop = p.per_instance.backprop * n;
    p.per_run.loss = p.per_instance.loss * n;
    p.per_run.update = p.update_per_step * steps;
    p.per_run.total = p.per_run.forward + p.per_run.backprop + p.per_run.loss + p.per_run.update;

    const ToCount linear_tos = lower(linear);
    p.nonlinear_share_instance = share_outside(linear_tos, p.per_instance.total);
    p.nonlinear_share_run = share_outside(linear_tos * n, p.per_run.total);
    return p;
}

}  // namespace tocost
