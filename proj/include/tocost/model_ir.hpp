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

// Architecture description of a feed-forward network: the analyzer's input.
// Nothing here executes a network; it only describes one.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tocost {

using Count = std::uint64_t;

/// IEEE-754 binary layout.  The sign field is always one bit.
struct FloatFormat {
    Count sign_bits = 1;
    Count exponent_bits = 8;
    Count fraction_bits = 23;

    static constexpr FloatFormat fp16() { return {1, 5, 10}; }
    static constexpr FloatFormat fp32() { return {1, 8, 23}; }
    static constexpr FloatFormat fp64() { return {1, 11, 52}; }

    void validate() const;

    friend bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

enum class Activation { None, Sigmoid, Tanh, GELU };

enum class LossKind { MSE };

/// Which run steps are counted.  Each level includes every step of the
/// levels before it.
enum class AnalysisLevel { Inference, Validation, Training };

struct FullyConnected {
    Count inputs = 1;
    Count outputs = 1;

    friend bool operator==(const FullyConnected&, const FullyConnected&) = default;
};

struct Convolutional {
    Count out_width = 1;
    Count kernel = 1;
    Count in_channels = 1;
    Count out_channels = 1;

    friend bool operator==(const Convolutional&, const Convolutional&) = default;
};

struct LayerSpec {
    std::variant<FullyConnected, Convolutional> kind;
    Activation activation = Activation::None;

    static LayerSpec fc(Count inputs, Count outputs, Activation act) {
        return {FullyConnected{inputs, outputs}, act};
    }
    static LayerSpec conv(Count out_width, Count kernel, Count in_channels, Count out_channels,
                          Activation act) {
        return {Convolutional{out_width, kernel, in_channels, out_channels}, act};
    }

    bool is_fully_connected() const { return std::holds_alternative<FullyConnected>(kind); }
    const FullyConnected* as_fc() const { return std::get_if<FullyConnected>(&kind); }
    const Convolutional* as_conv() const { return std::get_if<Convolutional>(&kind); }

    /// Number of activation units (values produced per instance).
    Count output_units() const;

    void validate() const;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct TrainingConfig {
    Count dataset_len = 1;
    Count batch_size = 1;
    Count epochs = 1;

    friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

struct ModelSpec {
    std::string name;
    FloatFormat float_format = FloatFormat::fp32();
    std::vector<LayerSpec> layers;
    LossKind loss = LossKind::MSE;
    TrainingConfig training;

    /// Throws ValidationError (or DimensionMismatchError) on the first
    /// violated invariant.
    void validate() const;

    /// Number of parameter-update steps per epoch, ceil(N / B).
    Count batches_per_epoch() const;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Enumeration names as they appear in model documents and CLI flags.
std::string_view to_string(Activation act);
std::string_view to_string(LossKind loss);
std::string_view to_string(AnalysisLevel level);
std::string_view format_name(const FloatFormat& fmt);  // "fp32", or "custom"

Activation parse_activation(std::string_view name);
LossKind parse_loss(std::string_view name);
AnalysisLevel parse_level(std::string_view name);
FloatFormat parse_float_format(std::string_view name);

/// Parses and validates a model document (JSON, strict keys).
ModelSpec parse_model(std::string_view text);
ModelSpec load_model(const std::string& path);

/// Inverse of parse_model; output parses back to an equal ModelSpec.
std::string serialize_model(const ModelSpec& model);

/// Width/activation sweep over the hidden layers of `base`.  Width-major
/// ordering, activations in the order given.  The first layer's inputs, the
/// last layer's outputs and the last layer's activation are kept.
std::vector<ModelSpec> model_family(const ModelSpec& base, std::span<const Count> widths,
                                    std::span<const Activation> activations);

}  // namespace tocost
