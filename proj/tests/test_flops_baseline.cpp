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

#include "tocost/flops_baseline.hpp"

namespace tocost {
namespace {

ModelSpec depth3(Count width, Activation act = Activation::Sigmoid) {
    ModelSpec m;
    m.name = "w" + std::to_string(width);
    m.training = {1372, 64, 2000};
    m.layers = {LayerSpec::fc(4, width, act), LayerSpec::fc(width, width, act), LayerSpec::fc(width, width, act),
                LayerSpec::fc(width, 1, Activation::Sigmoid)};
    return m;
}

TEST(FlopsForward, LayerExamples) {
    EXPECT_EQ(flops_forward(LayerSpec::fc(4, 5, Activation::Sigmoid)), (FlopsCount{20, 40}));
    EXPECT_EQ(flops_forward(LayerSpec::conv(2, 3, 1, 2, Activation::GELU)), (FlopsCount{72, 144}));
    EXPECT_EQ(flops_forward(LayerSpec::fc(1, 1, Activation::None)), (FlopsCount{1, 2}));
}

TEST(FlopsModel, InferenceAndTraining) {
    const auto inf = flops_model(depth3(4), AnalysisLevel::Inference);
    EXPECT_EQ(inf.per_instance.macs, 16u + 16 + 16 + 4);
    EXPECT_EQ(inf.per_instance.flops, 2 * inf.per_instance.macs);
    EXPECT_EQ(inf.per_run.macs, inf.per_instance.macs * 1372 * 2000);
    EXPECT_EQ(flops_model(depth3(4), AnalysisLevel::Validation).per_instance, inf.per_instance);
    const auto tr = flops_model(depth3(4), AnalysisLevel::Training);
    EXPECT_EQ(tr.per_instance.macs, 3 * inf.per_instance.macs);
}

// The baseline cannot tell activation functions apart.
TEST(FlopsModel, BlindToActivation) {
    for (Count w = 4; w <= 18; ++w)
        for (auto level : {AnalysisLevel::Inference, AnalysisLevel::Validation, AnalysisLevel::Training}) {
            const auto s = flops_model(depth3(w, Activation::Sigmoid), level);
            EXPECT_EQ(flops_model(depth3(w, Activation::Tanh), level).per_run, s.per_run);
            EXPECT_EQ(flops_model(depth3(w, Activation::GELU), level).per_run, s.per_run);
            EXPECT_EQ(flops_model(depth3(w, Activation::None), level).per_instance, s.per_instance);
        }
}

}  // namespace
}  // namespace tocost
