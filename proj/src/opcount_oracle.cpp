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

#include "tocost/opcount_oracle.hpp"

#include <cmath>
#include <random>

#include "tocost/errors.hpp"

namespace tocost::oracle {

namespace {

Tally& tally_of(const CountingScalar& a, const CountingScalar& b) {
    Tally* t = a.tally() ? a.tally() : b.tally();
    if (!t) throw ArgumentError("counting scalar without a tally");
    return *t;
}

Tally& tally_of(const CountingScalar& a) {
    if (!a.tally()) throw ArgumentError("counting scalar without a tally");
    return *a.tally();
}

CountingScalar counted(double v, Tally& t, OpKind k) {
    t.bump(k);
    return {v, t};
}

BasicOpCounts diff(const BasicOpCounts& after, const BasicOpCounts& before) {
    BasicOpCounts d;
    for (auto k : kAllOpKinds) d[k] = after[k] - before[k];
    return d;
}

constexpr double kGeluSlope = 1.702;

}  // namespace

CountingScalar operator+(const CountingScalar& a, const CountingScalar& b) {
    return counted(a.value_ + b.value_, tally_of(a, b), OpKind::Add);
}
CountingScalar operator-(const CountingScalar& a, const CountingScalar& b) {
    return counted(a.value_ - b.value_, tally_of(a, b), OpKind::Sub);
}
CountingScalar operator*(const CountingScalar& a, const CountingScalar& b) {
    return counted(a.value_ * b.value_, tally_of(a, b), OpKind::Mul);
}
CountingScalar operator/(const CountingScalar& a, const CountingScalar& b) {
    return counted(a.value_ / b.value_, tally_of(a, b), OpKind::Div);
}
CountingScalar operator+(double a, const CountingScalar& b) {
    return counted(a + b.value_, tally_of(b), OpKind::Add);
}
CountingScalar operator-(double a, const CountingScalar& b) {
    return counted(a - b.value_, tally_of(b), OpKind::Sub);
}
CountingScalar operator-(const CountingScalar& a, double b) {
    return counted(a.value_ - b, tally_of(a), OpKind::Sub);
}
CountingScalar operator*(double a, const CountingScalar& b) {
    return counted(a * b.value_, tally_of(b), OpKind::Mul);
}
CountingScalar operator/(double a, const CountingScalar& b) {
    return counted(a / b.value_, tally_of(b), OpKind::Div);
}
CountingScalar operator/(const CountingScalar& a, double b) {
    return counted(a.value_ / b, tally_of(a), OpKind::Div);
}
CountingScalar exp(const CountingScalar& a) { return counted(std::exp(a.value_), tally_of(a), OpKind::Root); }
CountingScalar sqrt(const CountingScalar& a) { return counted(std::sqrt(a.value_), tally_of(a), OpKind::Root); }

ActivationTrace apply_activation(Activation act, const CountingScalar& xi) {
    ActivationTrace tr{xi, xi, {}};
    switch (act) {
        case Activation::None:
            break;
        case Activation::Sigmoid: {
            auto e = exp(0.0 - xi);
            tr.denominator = 1.0 + e;
            tr.out = 1.0 / tr.denominator;
            break;
        }
        case Activation::Tanh: {  // 2 * sigmoid(2x) - 1
            auto e = exp(0.0 - 2.0 * xi);
            tr.denominator = 1.0 + e;
            auto s = 1.0 / tr.denominator;
            tr.out = 2.0 * s - 1.0;
            break;
        }
        case Activation::GELU: {  // x * sigmoid(1.702x)
            auto e = exp(0.0 - kGeluSlope * xi);
            tr.denominator = 1.0 + e;
            auto s = 1.0 / tr.denominator;
            tr.out = xi * s;
            break;
        }
    }
    return tr;
}

CountingScalar activation_backward(Activation act, const ActivationTrace& tr, const CountingScalar& grad) {
    switch (act) {
        case Activation::None:
            return grad * CountingScalar(1.0, tally_of(grad));
        case Activation::Sigmoid:
            return grad * (tr.out * (1.0 - tr.out));
        case Activation::Tanh:
            return grad * (1.0 - tr.out * tr.out);
        case Activation::GELU: {
            // d/dx x*s(u), u = 1.702x:  s + u*s*(1-s), and 1-s = s*e^-u.
            auto nu = 0.0 - kGeluSlope * tr.pre;
            auto e = exp(nu);
            auto s = 1.0 / tr.denominator;
            auto q = nu * (s * s * e);
            return grad * (s - q);
        }
    }
    return grad;
}

Network::Network(const ModelSpec& model, std::uint64_t seed) : model_(model) {
    model_.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t i = 0; i < model_.layers.size(); ++i) {
        const auto* fc = model_.layers[i].as_fc();
        if (!fc)
            throw UnsupportedError("oracle: layer " + std::to_string(i + 1) +
                                   " is convolutional; only fully-connected layers are executed");
        Layer l;
        l.inputs = fc->inputs;
        l.outputs = fc->outputs;
        l.act = model_.layers[i].activation;
        l.weights.resize(l.inputs * l.outputs);
        l.bias.resize(l.outputs);
        for (auto& w : l.weights) w = dist(rng);
        for (auto& b : l.bias) b = dist(rng);
        layers_.push_back(std::move(l));
    }
}

Network::ForwardResult Network::run_forward(std::span<const double> input) const {
    if (input.size() != layers_.front().inputs)
        throw ArgumentError("oracle: input has " + std::to_string(input.size()) + " values, model expects " +
                            std::to_string(layers_.front().inputs));
    Tally tally;
    ForwardResult r;
    std::vector<CountingScalar> x;
    for (double v : input) x.emplace_back(v, tally);

    for (const auto& l : layers_) {
        const auto before = tally.counts();
        std::vector<CountingScalar> y;
        for (std::size_t j = 0; j < l.outputs; ++j) {
            auto acc = l.weights[j] * x[0];
            for (std::size_t i = 1; i < l.inputs; ++i) acc = acc + l.weights[i * l.outputs + j] * x[i];
            auto xi = acc + CountingScalar(l.bias[j], tally);
            y.push_back(apply_activation(l.act, xi).out);
        }
        r.per_layer.push_back(diff(tally.counts(), before));
        x = std::move(y);
    }
    for (const auto& v : x) r.output.push_back(v.value());
    r.tally = tally.counts();
    return r;
}

Network::TrainingTally Network::run_training_step(std::span<const double> input, std::span<const double> target,
                                                  double learning_rate) {
    if (model_.loss != LossKind::MSE) throw UnsupportedError("oracle: only MSE loss is executed");
    if (input.size() != layers_.front().inputs)
        throw ArgumentError("oracle: input size does not match the first layer");
    if (target.size() != layers_.back().outputs)
        throw ArgumentError("oracle: target size does not match the last layer");

    Tally tally;
    TrainingTally out;
    const std::size_t depth = layers_.size();

    // Forward, keeping every layer's input and activation trace.
    std::vector<std::vector<CountingScalar>> inputs(depth);
    std::vector<std::vector<ActivationTrace>> traces(depth);
    std::vector<CountingScalar> x;
    for (double v : input) x.emplace_back(v, tally);
    for (std::size_t li = 0; li < depth; ++li) {
        const auto& l = layers_[li];
        const auto before = tally.counts();
        inputs[li] = x;
        std::vector<CountingScalar> y;
        for (std::size_t j = 0; j < l.outputs; ++j) {
            auto acc = l.weights[j] * x[0];
            for (std::size_t i = 1; i < l.inputs; ++i) acc = acc + l.weights[i * l.outputs + j] * x[i];
            auto xi = acc + CountingScalar(l.bias[j], tally);
            traces[li].push_back(apply_activation(l.act, xi));
            y.push_back(traces[li].back().out);
        }
        out.layer_forward.push_back(diff(tally.counts(), before));
        x = std::move(y);
    }
    out.forward = tally.counts();

    // Mean squared error.  The residual doubles as the output gradient; the
    // constant 2/O is folded into the learning rate.
    std::vector<CountingScalar> grad;
    {
        const auto before = tally.counts();
        CountingScalar sum;
        for (std::size_t j = 0; j < x.size(); ++j) {
            auto d = x[j] - target[j];
            auto sq = d * d;
            sum = j == 0 ? sq : sum + sq;
            grad.push_back(d);
        }
        auto mean = sum / static_cast<double>(x.size());
        out.loss_value = mean.value();
        out.loss = diff(tally.counts(), before);
    }

    // Backprop, last layer first.
    std::vector<std::vector<CountingScalar>> grad_w(depth), grad_b(depth);
    out.layer_backprop.resize(depth);
    for (std::size_t li = depth; li-- > 0;) {
        const auto& l = layers_[li];
        const auto before = tally.counts();
        grad_w[li].assign(l.inputs * l.outputs, CountingScalar(0.0, tally));
        grad_b[li].assign(l.outputs, CountingScalar(0.0, tally));

        std::vector<CountingScalar> delta;
        for (std::size_t j = 0; j < l.outputs; ++j) delta.push_back(activation_backward(l.act, traces[li][j], grad[j]));
        for (std::size_t i = 0; i < l.inputs; ++i)
            for (std::size_t j = 0; j < l.outputs; ++j)
                grad_w[li][i * l.outputs + j] = grad_w[li][i * l.outputs + j] + delta[j] * inputs[li][i];
        for (std::size_t j = 0; j < l.outputs; ++j) grad_b[li][j] = grad_b[li][j] + delta[j];

        if (li > 0) {
            std::vector<CountingScalar> upstream;
            for (std::size_t i = 0; i < l.inputs; ++i) {
                auto acc = l.weights[i * l.outputs] * delta[0];
                for (std::size_t j = 1; j < l.outputs; ++j) acc = acc + l.weights[i * l.outputs + j] * delta[j];
                upstream.push_back(acc);
            }
            grad = std::move(upstream);
        }
        out.layer_backprop[li] = diff(tally.counts(), before);
    }
    const auto before_update = tally.counts();
    out.backprop = diff(before_update, out.loss + out.forward);

    // SGD step: p <- p - lr * g.
    last_gradient_.clear();
    for (std::size_t li = 0; li < depth; ++li) {
        auto& l = layers_[li];
        const auto before = tally.counts();
        for (std::size_t k = 0; k < l.weights.size(); ++k) {
            last_gradient_.push_back(grad_w[li][k].value());
            auto w = CountingScalar(l.weights[k], tally) - learning_rate * grad_w[li][k];
            l.weights[k] = w.value();
        }
        for (std::size_t j = 0; j < l.bias.size(); ++j) {
            last_gradient_.push_back(grad_b[li][j].value());
            auto b = CountingScalar(l.bias[j], tally) - learning_rate * grad_b[li][j];
            l.bias[j] = b.value();
        }
        out.layer_update.push_back(diff(tally.counts(), before));
    }
    out.update = diff(tally.counts(), before_update);
    out.total = tally.counts();
    return out;
}

std::vector<double> Network::parameters() const {
    std::vector<double> p;
    for (const auto& l : layers_) {
        p.insert(p.end(), l.weights.begin(), l.weights.end());
        p.insert(p.end(), l.bias.begin(), l.bias.end());
    }
    return p;
}

void Network::set_parameters(std::span<const double> params) {
    std::size_t k = 0;
    for (auto& l : layers_) {
        for (auto& w : l.weights) w = params[k++];
        for (auto& b : l.bias) b = params[k++];
    }
    if (k != params.size()) throw ArgumentError("oracle: parameter vector has the wrong length");
}

double Network::loss(std::span<const double> input, std::span<const double> target) const {
    std::vector<double> x(input.begin(), input.end());
    for (const auto& l : layers_) {
        std::vector<double> y(l.outputs);
        for (std::size_t j = 0; j < l.outputs; ++j) {
            double xi = l.bias[j];
            for (std::size_t i = 0; i < l.inputs; ++i) xi += l.weights[i * l.outputs + j] * x[i];
            switch (l.act) {
                case Activation::None: y[j] = xi; break;
                case Activation::Sigmoid: y[j] = 1.0 / (1.0 + std::exp(-xi)); break;
                case Activation::Tanh: y[j] = std::tanh(xi); break;
                case Activation::GELU: y[j] = xi / (1.0 + std::exp(-kGeluSlope * xi)); break;
            }
        }
        x = std::move(y);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) sum += (x[j] - target[j]) * (x[j] - target[j]);
    return sum / static_cast<double>(x.size());
}

Network::ForwardResult run_forward(const ModelSpec& model, std::span<const double> input, std::uint64_t seed) {
    return Network(model, seed).run_forward(input);
}

Network::TrainingTally run_training_step(const ModelSpec& model, std::span<const double> input,
                                         std::span<const double> target, std::uint64_t seed) {
    Network net(model, seed);
    return net.run_training_step(input, target);
}

}  // namespace tocost::oracle
