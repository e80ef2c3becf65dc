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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tocost/bo_counter.hpp"
#include "tocost/errors.hpp"
#include "tocost/opcount_oracle.hpp"

namespace tocost {
namespace {

using C = BasicOpCounts;

ModelSpec single(Count i, Count o, Activation act) {
    ModelSpec m;
    m.name = "single";
    m.layers = {LayerSpec::fc(i, o, act)};
    return m;
}

ModelSpec depth3(Count width, Activation act = Activation::Sigmoid) {
    ModelSpec m;
    m.name = "w" + std::to_string(width);
    m.training = {1372, 64, 2000};
    m.layers = {LayerSpec::fc(4, width, act), LayerSpec::fc(width, width, act), LayerSpec::fc(width, width, act),
                LayerSpec::fc(width, 1, Activation::Sigmoid)};
    return m;
}

std::vector<double> ramp(std::size_t n, double scale = 0.1) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = scale * static_cast<double>(i + 1);
    return v;
}

TEST(CountingScalar, EveryOperatorIsTallied) {
    oracle::Tally t;
    const oracle::CountingScalar a(2.0, t), b(3.0, t);
    auto r = a + b;
    r = r - a;
    r = r * b;
    r = r / a;
    r = 1.0 + r;
    r = 1.0 - r;
    r = r - 1.0;
    r = 2.0 * r;
    r = 1.0 / r;
    r = r / 2.0;
    r = exp(r);
    r = sqrt(exp(a));
    EXPECT_EQ(t.counts(), (C{2, 3, 2, 3, 3}));
}

TEST(Oracle, ForwardExamples) {
    EXPECT_EQ(oracle::run_forward(single(4, 5, Activation::Sigmoid), ramp(4)).tally, (C{25, 5, 20, 5, 5}));
    EXPECT_EQ(oracle::run_forward(single(1, 1, Activation::None), ramp(1)).tally, (C{1, 0, 1, 0, 0}));
    EXPECT_EQ(oracle::run_forward(depth3(4), ramp(4)).tally, (C{65, 13, 52, 13, 13}));
}

TEST(Oracle, TrainingSegments) {
    ModelSpec m;
    m.name = "two";
    m.layers = {LayerSpec::fc(3, 4, Activation::Sigmoid), LayerSpec::fc(4, 5, Activation::Sigmoid),
                LayerSpec::fc(5, 1, Activation::Sigmoid)};
    const std::vector<double> target{0.5};
    const auto t = oracle::run_training_step(m, ramp(3), target);
    EXPECT_EQ(t.layer_backprop[1], (C{41, 5, 50, 0, 0}));
    EXPECT_EQ(t.layer_update[1], (C{0, 25, 25, 0, 0}));
    EXPECT_EQ(t.loss, (C{0, 1, 1, 1, 0}));
    EXPECT_EQ(t.total, t.forward + t.loss + t.backprop + t.update);

    const std::vector<double> one{0.0};
    EXPECT_EQ(oracle::run_training_step(single(1, 1, Activation::None), ramp(1), one).backprop, (C{2, 0, 2, 0, 0}));
}

// Counts depend on shapes only, never on weights or inputs.
TEST(Oracle, TallyIsIndependentOfValues) {
    const auto m = depth3(6, Activation::GELU);
    const std::vector<double> target{0.2};
    const auto ref_f = oracle::run_forward(m, ramp(4), 1).tally;
    const auto ref_t = oracle::run_training_step(m, ramp(4), target, 1);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3, 3);
    for (std::uint64_t seed = 2; seed <= 11; ++seed) {
        std::vector<double> x(4);
        for (auto& v : x) v = u(rng);
        const std::vector<double> y{u(rng)};
        EXPECT_EQ(oracle::run_forward(m, x, seed).tally, ref_f);
        const auto t = oracle::run_training_step(m, x, y, seed);
        EXPECT_EQ(t.forward, ref_t.forward);
        EXPECT_EQ(t.backprop, ref_t.backprop);
        EXPECT_EQ(t.update, ref_t.update);
    }
}

// The closed-form census agrees with the executed one on random models.
TEST(Oracle, AgreesWithClosedFormsOnRandomModels) {
    std::mt19937 rng(33);
    std::uniform_int_distribution<int> dim(1, 9), depth(1, 5), act(0, 3);
    for (int t = 0; t < 50; ++t) {
        ModelSpec m;
        m.name = "r" + std::to_string(t);
        m.training = {100, 10, 3};
        Count in = static_cast<Count>(dim(rng));
        const Count first_in = in;
        for (int l = 0, n = depth(rng); l < n; ++l) {
            const Count out = static_cast<Count>(dim(rng));
            m.layers.push_back(LayerSpec::fc(in, out, static_cast<Activation>(act(rng))));
            in = out;
        }
        const auto x = ramp(first_in, 0.3);
        const std::vector<double> y(in, 0.25);

        const auto inf = count_model(m, AnalysisLevel::Inference);
        const auto fr = oracle::run_forward(m, x, t + 1);
        ASSERT_EQ(fr.tally, inf.per_instance) << m.name;

        const auto val = count_model(m, AnalysisLevel::Validation);
        const auto tr = count_model(m, AnalysisLevel::Training);
        const auto step = oracle::run_training_step(m, x, y, t + 1);
        EXPECT_EQ(step.forward + step.loss, val.per_instance) << m.name;
        EXPECT_EQ(step.forward + step.loss + step.backprop, tr.per_instance) << m.name;
        EXPECT_EQ(step.update, tr.update_per_step) << m.name;
        for (std::size_t i = 0; i < m.layers.size(); ++i) {
            EXPECT_EQ(step.layer_forward[i], count_forward(m.layers[i]));
            EXPECT_EQ(step.layer_backprop[i], count_backprop(m.layers[i], i == 0));
            EXPECT_EQ(step.layer_update[i], count_update(m.layers[i]));
        }
    }
}

// The counted backward pass is a real gradient: compare against central
// finite differences of the uncounted loss.
TEST(Oracle, GradientMatchesFiniteDifferences) {
    for (auto act : {Activation::None, Activation::Sigmoid, Activation::Tanh, Activation::GELU}) {
        ModelSpec m;
        m.name = "fd";
        m.layers = {LayerSpec::fc(3, 4, act), LayerSpec::fc(4, 2, act)};
        oracle::Network net(m, 5);
        const auto x = ramp(3, 0.4);
        const std::vector<double> y{0.3, -0.2};
        const auto p0 = net.parameters();
        net.run_training_step(x, y, 0.0);
        const auto g = net.last_gradient();
        ASSERT_EQ(g.size(), p0.size());
        const double out_scale = 2.0 / 2.0;  // 2 / outputs
        for (std::size_t k = 0; k < p0.size(); ++k) {
            auto p = p0;
            const double h = 1e-6;
            p[k] = p0[k] + h;
            net.set_parameters(p);
            const double up = net.loss(x, y);
            p[k] = p0[k] - h;
            net.set_parameters(p);
            const double down = net.loss(x, y);
            const double fd = (up - down) / (2 * h);
            EXPECT_NEAR(g[k] * out_scale, fd, 1e-6) << to_string(act) << " param " << k;
        }
        net.set_parameters(p0);
    }
}

TEST(Oracle, RejectsConvolution) {
    ModelSpec m;
    m.name = "cnn";
    m.layers = {LayerSpec::conv(2, 3, 1, 2, Activation::GELU)};
    EXPECT_THROW(oracle::Network(m, 1), UnsupportedError);
}

}  // namespace
}  // namespace tocost
