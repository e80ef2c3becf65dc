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

// Closed-form basic-operation census of a model, per single data instance.
//
// Activation costs per unit ([add, sub, mul, div, root]):
//   sigmoid  1/(1+e^-x)            [1,1,0,1,1]
//   gelu     x * sigmoid(1.702x)   [1,1,2,1,1]
//   tanh     2*sigmoid(2x) - 1     [1,2,2,1,1]
//
// Backprop costs per output unit for the activation derivative, including
// the multiply by the upstream gradient:
//   sigmoid  g*y*(1-y)             [0,1,2,0,0]
//   tanh     g*(1-y*y)             [0,1,2,0,0]
//   gelu     g*(s + u*s*s*e^-u)    [0,2,5,1,1]
//            u = 1.702x, s = 1/den with den kept from the forward pass,
//            the sum written as s - (0-u)*... so it costs a sub, not an add
//   none     g*1                   [0,0,1,0,0]

#pragma once

#include <vector>

#include "tocost/basic_ops.hpp"
#include "tocost/model_ir.hpp"

namespace tocost {

struct LayerBoProfile {
    BasicOpCounts forward;
    BasicOpCounts backprop;          // zero below Training level
    BasicOpCounts update_per_batch;  // zero below Training level
};

struct ModelBoCounts {
    std::vector<LayerBoProfile> layers;
    BasicOpCounts loss;  // zero at Inference level

    // Per single data instance: forward (+ loss) (+ backprop).
    BasicOpCounts forward_total;
    BasicOpCounts backprop_total;
    BasicOpCounts per_instance;
    // Parameter updates for one batch step.
    BasicOpCounts update_per_step;

    // Whole run: per-instance counts x dataset_len x epochs, plus update
    // counts x ceil(dataset_len / batch_size) x epochs.
    std::uint64_t instances_per_run = 0;
    std::uint64_t update_steps_per_run = 0;
    BasicOpCounts per_run;
};

BasicOpCounts count_activation(Activation act, Count units);
BasicOpCounts count_forward(const LayerSpec& layer);
BasicOpCounts count_loss(const LayerSpec& output_layer, LossKind loss);
BasicOpCounts count_backprop(const LayerSpec& layer, bool is_first_layer);
BasicOpCounts count_update(const LayerSpec& layer);

/// Per-unit activation-derivative cost used by count_backprop.
BasicOpCounts count_activation_derivative(Activation act, Count units);

/// The multiply/accumulate part of a layer's forward pass (weights and
/// bias), i.e. everything count_forward charges that is not activation.
BasicOpCounts count_forward_linear(const LayerSpec& layer);
/// Weight/bias gradient accumulation and input-delta propagation: the
/// part of count_backprop that is not activation derivative.
BasicOpCounts count_backprop_linear(const LayerSpec& layer, bool is_first_layer);

ModelBoCounts count_model(const ModelSpec& model, AnalysisLevel level);

}  // namespace tocost
