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

// Brute-force operation census.  Executes a small fully-connected network
// on scalars that bump a shared tally on every arithmetic operation, so the
// closed forms in bo_counter can be checked against what actually runs.
// Independent of bo_counter by construction: it only shares the tally type.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tocost/basic_ops.hpp"
#include "tocost/model_ir.hpp"

namespace tocost::oracle {

/// Accumulator owned by a single run.
class Tally {
public:
    void bump(OpKind k) { ++counts_[k]; }
    const BasicOpCounts& counts() const { return counts_; }

private:
    BasicOpCounts counts_;
};

/// A real value whose every +, -, *, / and exp/sqrt evaluation is tallied.
/// Mixed operations with plain doubles (constants) count the same way.
class CountingScalar {
public:
    CountingScalar() = default;
    CountingScalar(double value, Tally& tally) : value_(value), tally_(&tally) {}

    double value() const { return value_; }
    Tally* tally() const { return tally_; }

    friend CountingScalar operator+(const CountingScalar& a, const CountingScalar& b);
    friend CountingScalar operator-(const CountingScalar& a, const CountingScalar& b);
    friend CountingScalar operator*(const CountingScalar& a, const CountingScalar& b);
    friend CountingScalar operator/(const CountingScalar& a, const CountingScalar& b);

    friend CountingScalar operator+(double a, const CountingScalar& b);
    friend CountingScalar operator-(double a, const CountingScalar& b);
    friend CountingScalar operator-(const CountingScalar& a, double b);
    friend CountingScalar operator*(double a, const CountingScalar& b);
    friend CountingScalar operator/(double a, const CountingScalar& b);
    friend CountingScalar operator/(const CountingScalar& a, double b);

    friend CountingScalar exp(const CountingScalar& a);
    friend CountingScalar sqrt(const CountingScalar& a);

private:
    double value_ = 0.0;
    Tally* tally_ = nullptr;
};

/// Executed activation and its derivative, in the decomposed forms whose
/// tallies define the activation rows of the census.
struct ActivationTrace {
    CountingScalar pre;          // pre-activation xi
    CountingScalar out;          // y
    CountingScalar denominator;  // 1 + e^-(.) for sigmoid-based forms
};

ActivationTrace apply_activation(Activation act, const CountingScalar& xi);
/// Upstream gradient times f'(xi).
CountingScalar activation_backward(Activation act, const ActivationTrace& trace, const CountingScalar& grad);

/// Fixed pseudo-random weights for an FC-only model.
class Network {
public:
    /// Throws UnsupportedError on non-FC layers.
    Network(const ModelSpec& model, std::uint64_t seed);

    const ModelSpec& model() const { return model_; }

    struct ForwardResult {
        std::vector<double> output;
        BasicOpCounts tally;
        std::vector<BasicOpCounts> per_layer;
    };
    ForwardResult run_forward(std::span<const double> input) const;

    struct TrainingTally {
        BasicOpCounts forward;
        BasicOpCounts loss;
        BasicOpCounts backprop;
        BasicOpCounts update;
        std::vector<BasicOpCounts> layer_forward;
        std::vector<BasicOpCounts> layer_backprop;
        std::vector<BasicOpCounts> layer_update;
        BasicOpCounts total;
        double loss_value = 0.0;
    };
    /// One instance forward + MSE loss + backprop, then one SGD update.
    /// Weights are updated in place.
    TrainingTally run_training_step(std::span<const double> input, std::span<const double> target,
                                    double learning_rate = 0.01);

    /// Loss gradient w.r.t. every weight and bias as computed by the last
    /// training step, flattened layer by layer ([w(i,j) row-major, b(j)]).
    /// Scaled by O/2 relative to d(mean squared error)/d(param).
    const std::vector<double>& last_gradient() const { return last_gradient_; }
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);

    /// Uncounted double-precision mean squared error, for finite differences.
    double loss(std::span<const double> input, std::span<const double> target) const;

private:
    struct Layer {
        std::size_t inputs = 0, outputs = 0;
        Activation act = Activation::None;
        std::vector<double> weights;  // inputs x outputs, row-major by input
        std::vector<double> bias;
    };

    ModelSpec model_;
    std::vector<Layer> layers_;
    std::vector<double> last_gradient_;
};

/// Convenience wrappers with a default weight seed.
Network::ForwardResult run_forward(const ModelSpec& model, std::span<const double> input,
                                   std::uint64_t seed = 1);
Network::TrainingTally run_training_step(const ModelSpec& model, std::span<const double> input,
                                         std::span<const double> target, std::uint64_t seed = 1);

}  // namespace tocost::oracle
