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

// Conventional FLOPs/MACs baseline: only the multiply-accumulates of FC and
// conv layers count.  Activations, loss and updates are invisible to it.

#pragma once

#include <cstdint>

#include "tocost/model_ir.hpp"

namespace tocost {

struct FlopsCount {
    std::uint64_t macs = 0;
    std::uint64_t flops = 0;  // always 2 * macs

    static FlopsCount from_macs(std::uint64_t macs) { return {macs, 2 * macs}; }
    friend bool operator==(const FlopsCount&, const FlopsCount&) = default;
};

FlopsCount flops_forward(const LayerSpec& layer);

struct ModelFlops {
    FlopsCount per_instance;  // forward MACs, x3 at Training level
    FlopsCount per_run;       // per_instance x dataset_len x epochs
};

ModelFlops flops_model(const ModelSpec& model, AnalysisLevel level);

}  // namespace tocost
