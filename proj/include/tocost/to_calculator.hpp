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

// Lowering of basic operations to transistor operations (TOs).
//
// An FP add (or sub, via two's complement) is a (fraction+1)-bit ripple
// adder: (bits-1) full adders and one half adder; exponent alignment is
// not charged.  An FP mul/div is a sign XOR, a (fraction+1)-bit multiplier
// or divider, and an exponent-width adder.  Multiplier and divider costs
// are scaled from 64-bit reference circuits by (bits/ref_bits)^gamma.  A
// root (or exponential) runs `newton_iterations` Newton-Raphson steps, each
// a div, a mul and an add.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tocost/basic_ops.hpp"
#include "tocost/model_ir.hpp"

namespace tocost {

struct ReferenceCircuit {
    Count ref_bits = 64;
    double transistors = 0.0;

    friend bool operator==(const ReferenceCircuit&, const ReferenceCircuit&) = default;
};

struct CostTable {
    double fa_transistors = 10.0;
    double ha_transistors = 5.0;
    double xor_transistors = 6.0;
    ReferenceCircuit mult_ref{64, 90000.0};  // Booth-Wallace multiplier
    ReferenceCircuit div_ref{64, 110000.0};  // SRT divider
    double scaling_exponent = 2.0;
    Count newton_iterations = 3;

    void validate() const;

    friend bool operator==(const CostTable&, const CostTable&) = default;
};

/// Parses a cost-table document (JSON object, every key optional, unknown
/// keys rejected).
CostTable parse_cost_table(std::string_view text);
CostTable load_cost_table(const std::string& path);

/// Real-valued transistor-operation workload.
struct ToCount {
    double value = 0.0;

    ToCount& operator+=(ToCount o) {
        value += o.value;
        return *this;
    }
    friend ToCount operator+(ToCount a, ToCount b) { return a += b; }
    friend ToCount operator*(ToCount a, double k) { return {a.value * k}; }
    friend ToCount operator*(double k, ToCount a) { return {a.value * k}; }
    friend auto operator<=>(const ToCount&, const ToCount&) = default;
};

ToCount adder_tos(Count bits, const CostTable& table);
ToCount scaled_unit_tos(Count bits, const ReferenceCircuit& ref, double gamma);
ToCount fp_op_tos(OpKind op, const FloatFormat& fmt, const CostTable& table);
ToCount tos_from_bos(const BasicOpCounts& bos, const FloatFormat& fmt, const CostTable& table);

/// TOs of one analysis at one scale (a single instance, or a whole run).
struct ToTotals {
    ToCount forward;   // d_f_total
    ToCount backprop;  // d_bp_total
    ToCount loss;      // d_loss
    ToCount update;    // d_update; always zero per instance
    ToCount total;     // d_total = forward + backprop + loss + update
};

struct ToProfile {
    AnalysisLevel level = AnalysisLevel::Inference;
    FloatFormat format;
    std::vector<ToCount> layer_forward;   // D_f, per instance
    std::vector<ToCount> layer_backprop;  // D_bp, per instance
    ToCount update_per_step;              // one batch step of parameter updates
    ToTotals per_instance;
    ToTotals per_run;

    /// Share of per-instance / per-run TOs spent outside the linear
    /// multiply/accumulate work of FC and conv layers (activations, their
    /// derivatives, loss, parameter updates).
    double nonlinear_share_instance = 0.0;
    double nonlinear_share_run = 0.0;
};

ToProfile analyze(const ModelSpec& model, AnalysisLevel level, const CostTable& table);

}  // namespace tocost
