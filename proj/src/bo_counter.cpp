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

#include "tocost/bo_counter.hpp"

#include <limits>
#include <ostream>

#include "tocost/errors.hpp"

namespace tocost {

namespace {

constexpr BasicOpCounts per_unit_activation(Activation act) {
    switch (act) {
        case Activation::None: return {0, 0, 0, 0, 0};
        case Activation::Sigmoid: return {1, 1, 0, 1, 1};
        case Activation::GELU: return {1, 1, 2, 1, 1};
        case Activation::Tanh: return {1, 2, 2, 1, 1};
    }
    return {};
}

constexpr BasicOpCounts per_unit_derivative(Activation act) {
    switch (act) {
        case Activation::None: return {0, 0, 1, 0, 0};
        case Activation::Sigmoid: return {0, 1, 2, 0, 0};
        case Activation::Tanh: return {0, 1, 2, 0, 0};
        case Activation::GELU: return {0, 2, 5, 1, 1};
    }
    return {};
}

const FullyConnected& require_fc(const LayerSpec& layer, const char* what) {
    const auto* fc = layer.as_fc();
    if (!fc) throw UnsupportedError(std::string(what) + " is not modeled for convolutional layers");
    return *fc;
}

}  // namespace

BasicOpCounts count_activation(Activation act, Count units) {
    return per_unit_activation(act).scaled(units);
}

BasicOpCounts count_activation_derivative(Activation act, Count units) {
    return per_unit_derivative(act).scaled(units);
}

BasicOpCounts count_forward_linear(const LayerSpec& layer) {
    // I multiplies and (I-1) accumulations per output, plus the bias add.
    Count macs;
    if (const auto* fc = layer.as_fc()) {
        macs = fc->inputs * fc->outputs;
    } else {
        const auto& cv = *layer.as_conv();
        macs = cv.out_width * cv.out_width * cv.out_channels * cv.in_channels * cv.kernel * cv.kernel;
    }
    return {macs, 0, macs, 0, 0};
}

BasicOpCounts count_forward(const LayerSpec& layer) {
    return count_forward_linear(layer) + count_activation(layer.activation, layer.output_units());
}

BasicOpCounts count_loss(const LayerSpec& output_layer, LossKind loss) {
    if (loss != LossKind::MSE) throw EnumerationError("unsupported loss kind");
    const Count o = output_layer.output_units();
    // diff, square, sum over outputs, mean.
    return {o - 1, o, o, 1, 0};
}

BasicOpCounts count_backprop_linear(const LayerSpec& layer, bool is_first_layer) {
    const auto& fc = require_fc(layer, "backpropagation");
    const Count io = fc.inputs * fc.outputs;
    BasicOpCounts out{io + fc.outputs, 0, io, 0, 0};  // weight + bias gradient accumulation
    if (!is_first_layer) out += BasicOpCounts{fc.inputs * (fc.outputs - 1), 0, io, 0, 0};
    return out;
}

BasicOpCounts count_backprop(const LayerSpec& layer, bool is_first_layer) {
    const auto& fc = require_fc(layer, "backpropagation");
    return count_activation_derivative(layer.activation, fc.outputs) +
           count_backprop_linear(layer, is_first_layer);
}

BasicOpCounts count_update(const LayerSpec& layer) {
    const auto& fc = require_fc(layer, "parameter update");
    const Count params = fc.inputs * fc.outputs + fc.outputs;
    return {0, params, params, 0, 0};
}

ModelBoCounts count_model(const ModelSpec& model, AnalysisLevel level) {
    model.validate();
    const bool training = level == AnalysisLevel::Training;
    if (training) {
        for (std::size_t i = 0; i < model.layers.size(); ++i) {
            if (!model.layers[i].is_fully_connected())
                throw UnsupportedError("training-level analysis: layer " + std::to_string(i + 1) +
                                       " is convolutional; convolutional backpropagation is not modeled");
        }
    }

    ModelBoCounts out;
    out.layers.reserve(model.layers.size());
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& layer = model.layers[i];
        LayerBoProfile p;
        p.forward = count_forward(layer);
        if (training) {
            p.backprop = count_backprop(layer, i == 0);
            p.update_per_batch = count_update(layer);
        }
        out.forward_total += p.forward;
        out.backprop_total += p.backprop;
        out.update_per_step += p.update_per_batch;
        out.layers.push_back(p);
    }
    if (level != AnalysisLevel::Inference) out.loss = count_loss(model.layers.back(), model.loss);

    out.per_instance = out.forward_total + out.loss + out.backprop_total;

    const auto& t = model.training;
    if (t.epochs != 0 && t.dataset_len > std::numeric_limits<std::uint64_t>::max() / t.epochs)
        throw ArgumentError("run size overflow");
    out.instances_per_run = t.dataset_len * t.epochs;
    out.update_steps_per_run = training ? model.batches_per_epoch() * t.epochs : 0;
    out.per_run = out.per_instance.scaled(out.instances_per_run) +
                  out.update_per_step.scaled(out.update_steps_per_run);
    return out;
}

}  // namespace tocost
