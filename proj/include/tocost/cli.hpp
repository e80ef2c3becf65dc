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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tocost/flops_baseline.hpp"
#include "tocost/model_ir.hpp"
#include "tocost/to_calculator.hpp"

namespace tocost::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitUnsupported = 3;

/// Environment variable naming the default cost-table file.
inline constexpr const char* kCostTableEnv = "TOCOST_COST_TABLE";

/// Entry point shared by the `tocost` binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "4..13", "4,6,8" or "5".
std::vector<Count> parse_widths(std::string_view text);
/// "sigmoid,tanh,gelu"
std::vector<Activation> parse_activations(std::string_view text);

struct SweepRow {
    Count width = 0;
    Activation activation = Activation::None;
    ToCount tos;
    FlopsCount flops;
    std::optional<double> predicted_energy;
};

}  // namespace tocost::cli
