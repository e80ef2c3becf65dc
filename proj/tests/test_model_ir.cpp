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

#include <random>

#include "tocost/errors.hpp"
#include "tocost/model_ir.hpp"

namespace tocost {
namespace {

const char* kBanknote = R"({
  "name": "banknote",
  "float_format": "fp32",
  "loss": "mse",
  "training": { "dataset_len": 1372, "batch_size": 64, "epochs": 2000 },
  "layers": [
    { "kind": "fully_connected", "inputs": 4,  "outputs": 13, "activation": "sigmoid" },
    { "kind": "fully_connected", "inputs": 13, "outputs": 13, "activation": "sigmoid" },
    { "kind": "fully_connected", "inputs": 13, "outputs": 13, "activation": "sigmoid" },
    { "kind": "fully_connected", "inputs": 13, "outputs": 1,  "activation": "sigmoid" }
  ]
})";

TEST(ModelIr, ParsesThreeHiddenLayerModel) {
    const auto m = parse_model(kBanknote);
    EXPECT_EQ(m.name, "banknote");
    EXPECT_EQ(m.float_format, FloatFormat::fp32());
    ASSERT_EQ(m.layers.size(), 4u);
    EXPECT_EQ(m.layers[0], LayerSpec::fc(4, 13, Activation::Sigmoid));
    EXPECT_EQ(m.layers[1], LayerSpec::fc(13, 13, Activation::Sigmoid));
    EXPECT_EQ(m.layers[2], LayerSpec::fc(13, 13, Activation::Sigmoid));
    EXPECT_EQ(m.layers[3], LayerSpec::fc(13, 1, Activation::Sigmoid));
    EXPECT_EQ(m.training, (TrainingConfig{1372, 64, 2000}));
    EXPECT_EQ(m.batches_per_epoch(), 22u);
}

TEST(ModelIr, ParsesMinimalModelWithDefaults) {
    const auto m = parse_model(R"({"name":"m","layers":[{"kind":"fully_connected","inputs":1,"outputs":1,"activation":"none"}]})");
    ASSERT_EQ(m.layers.size(), 1u);
    EXPECT_EQ(m.layers[0], LayerSpec::fc(1, 1, Activation::None));
    EXPECT_EQ(m.float_format, FloatFormat::fp32());
    EXPECT_EQ(m.loss, LossKind::MSE);
}

TEST(ModelIr, DimensionMismatchNamesBothLayers) {
    const char* doc = R"({"name":"bad","layers":[
        {"kind":"fully_connected","inputs":4,"outputs":13,"activation":"sigmoid"},
        {"kind":"fully_connected","inputs":12,"outputs":13,"activation":"sigmoid"}]})";
    try {
        parse_model(doc);
        FAIL() << "expected a dimension mismatch";
    } catch (const DimensionMismatchError& e) {
        EXPECT_EQ(e.first_layer(), 1u);
        EXPECT_EQ(e.second_layer(), 2u);
        EXPECT_NE(std::string(e.what()).find("layer 1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("layer 2"), std::string::npos);
    }
}

TEST(ModelIr, MalformedJsonReportsLine) {
    const char* doc = "{\n  \"name\": \"x\",\n  \"layers\": [ oops ]\n}";
    try {
        parse_model(doc);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ModelIr, FieldErrorsCarryPath) {
    try {
        parse_model(R"({"name":"x","layers":[{"kind":"fully_connected","inputs":"4","outputs":1}]})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "layers[0].inputs");
    }
    try {
        parse_model(R"({"name":"x","layers":[{"kind":"fully_connected","inputs":-4,"outputs":1}]})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "layers[0].inputs");
    }
}

TEST(ModelIr, UnknownKeysAreRejected) {
    EXPECT_THROW(parse_model(R"({"name":"x","layerz":[]})"), ParseError);
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[{"kind":"fully_connected","inputs":1,"outputs":1,"act":"none"}]})"),
                 ParseError);
    EXPECT_THROW(parse_model(R"({"name":"x","training":{"dataset_len":1,"batch_size":1,"epochs":1,"lr":0.1},
                                "layers":[{"kind":"fully_connected","inputs":1,"outputs":1}]})"),
                 ParseError);
}

TEST(ModelIr, UnknownEnumerationsAreEnumerationErrors) {
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[{"kind":"fully_connected","inputs":1,"outputs":1,"activation":"relu"}]})"),
                 EnumerationError);
    EXPECT_THROW(parse_model(R"({"name":"x","loss":"xent","layers":[{"kind":"fully_connected","inputs":1,"outputs":1}]})"),
                 EnumerationError);
    EXPECT_THROW(parse_model(R"({"name":"x","float_format":"bf16","layers":[{"kind":"fully_connected","inputs":1,"outputs":1}]})"),
                 EnumerationError);
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[{"kind":"pooling"}]})"), EnumerationError);
}

TEST(ModelIr, ValidationFailures) {
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[]})"), ValidationError);
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[{"kind":"fully_connected","inputs":0,"outputs":1}]})"),
                 ValidationError);
    EXPECT_THROW(parse_model(R"({"name":"x","training":{"dataset_len":10,"batch_size":64,"epochs":1},
                                "layers":[{"kind":"fully_connected","inputs":1,"outputs":1}]})"),
                 ValidationError);
    EXPECT_THROW(parse_model(R"({"name":"x","layers":[{"kind":"convolutional","out_width":0,"kernel":3,
                                "in_channels":1,"out_channels":1}]})"),
                 ValidationError);
}

TEST(ModelIr, FloatFormatPresets) {
    EXPECT_EQ(FloatFormat::fp16(), (FloatFormat{1, 5, 10}));
    EXPECT_EQ(FloatFormat::fp32(), (FloatFormat{1, 8, 23}));
    EXPECT_EQ(FloatFormat::fp64(), (FloatFormat{1, 11, 52}));
    EXPECT_THROW((FloatFormat{2, 8, 23}.validate()), ValidationError);
    EXPECT_THROW((FloatFormat{1, 0, 23}.validate()), ValidationError);
}

TEST(ModelIr, ParseIsDeterministic) {
    EXPECT_EQ(parse_model(kBanknote), parse_model(kBanknote));
}

// Round trip over randomly generated valid models.
TEST(ModelIr, SerializeParseRoundTrip) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 40), depth(1, 6), act(0, 3), kind(0, 3), fmt(0, 2);
    const FloatFormat formats[] = {FloatFormat::fp16(), FloatFormat::fp32(), FloatFormat::fp64()};
    for (int trial = 0; trial < 200; ++trial) {
        ModelSpec m;
        m.name = "rt" + std::to_string(trial);
        m.float_format = formats[fmt(rng)];
        m.training = {static_cast<Count>(40 + dim(rng) * 10), static_cast<Count>(dim(rng)), static_cast<Count>(dim(rng))};
        Count width = static_cast<Count>(dim(rng));
        for (int l = 0, n = depth(rng); l < n; ++l) {
            const auto a = static_cast<Activation>(act(rng));
            if (kind(rng) == 0) {
                m.layers.push_back(LayerSpec::conv(dim(rng), dim(rng) % 5 + 1, dim(rng), dim(rng), a));
            } else {
                const Count next = static_cast<Count>(dim(rng));
                m.layers.push_back(LayerSpec::fc(width, next, a));
                width = next;
            }
        }
        // Re-chain FC dimensions so the model is valid.
        for (std::size_t i = 1; i < m.layers.size(); ++i) {
            auto* prev = std::get_if<FullyConnected>(&m.layers[i - 1].kind);
            auto* cur = std::get_if<FullyConnected>(&m.layers[i].kind);
            if (prev && cur) cur->inputs = prev->outputs;
        }
        ASSERT_NO_THROW(m.validate());
        EXPECT_EQ(parse_model(serialize_model(m)), m);
    }
}

ModelSpec depth3(Count width) {
    ModelSpec m;
    m.name = "base";
    m.training = {1372, 64, 2000};
    m.layers = {LayerSpec::fc(4, width, Activation::Sigmoid), LayerSpec::fc(width, width, Activation::Sigmoid),
                LayerSpec::fc(width, width, Activation::Sigmoid), LayerSpec::fc(width, 1, Activation::Sigmoid)};
    return m;
}

TEST(ModelFamily, TrainingWidthSweepHasTenModels) {
    std::vector<Count> widths;
    for (Count w = 4; w <= 13; ++w) widths.push_back(w);
    const Activation acts[] = {Activation::Sigmoid};
    const auto fam = model_family(depth3(7), widths, acts);
    ASSERT_EQ(fam.size(), 10u);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& m = fam[i];
        EXPECT_EQ(std::get<FullyConnected>(m.layers.front().kind).inputs, 4u);
        EXPECT_EQ(std::get<FullyConnected>(m.layers.back().kind).outputs, 1u);
        EXPECT_EQ(std::get<FullyConnected>(m.layers[1].kind).outputs, widths[i]);
        EXPECT_NO_THROW(m.validate());
    }
}

TEST(ModelFamily, VerificationSweepOrderIsWidthMajor) {
    const Count widths[] = {14, 15, 16, 17, 18};
    const Activation acts[] = {Activation::Sigmoid, Activation::Tanh, Activation::GELU};
    auto base = depth3(5);
    base.layers.back().activation = Activation::None;
    const auto fam = model_family(base, widths, acts);
    ASSERT_EQ(fam.size(), 15u);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto w = widths[i / 3];
        const auto a = acts[i % 3];
        for (std::size_t l = 0; l + 1 < fam[i].layers.size(); ++l) {
            EXPECT_EQ(fam[i].layers[l].activation, a);
            EXPECT_EQ(std::get<FullyConnected>(fam[i].layers[l].kind).outputs, w);
        }
        EXPECT_EQ(fam[i].layers.back().activation, Activation::None);  // output layer untouched
    }
}

TEST(ModelFamily, SingletonEqualsManualWidth) {
    const Count widths[] = {5};
    const Activation acts[] = {Activation::Sigmoid};
    const auto fam = model_family(depth3(9), widths, acts);
    ASSERT_EQ(fam.size(), 1u);
    auto manual = depth3(5);
    manual.name = fam[0].name;
    EXPECT_EQ(fam[0], manual);
}

TEST(ModelFamily, ArgumentErrors) {
    const Count widths[] = {5};
    const Activation acts[] = {Activation::Sigmoid};
    EXPECT_THROW(model_family(depth3(4), std::span<const Count>{}, acts), ArgumentError);
    EXPECT_THROW(model_family(depth3(4), widths, std::span<const Activation>{}), ArgumentError);
    ModelSpec single;
    single.name = "s";
    single.layers = {LayerSpec::fc(4, 1, Activation::None)};
    EXPECT_THROW(model_family(single, widths, acts), ArgumentError);
}

}  // namespace
}  // namespace tocost
