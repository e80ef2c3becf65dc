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

#include "tocost/flops_baseline.hpp"

#include <limits>

#include "tocost/errors.hpp"

namespace tocost {

FlopsCount flops_forward(const LayerSpec& layer) {
    if (const auto* fc = layer.as_fc()) return FlopsCount::from_macs(fc->inputs * fc->outputs);
    const auto& cv = *layer.as_conv();
    return FlopsCount::from_macs(cv.out_width * cv.out_width * cv.out_channels * cv.in_channels *
                                 cv.kernel * cv.kernel);
}

ModelFlops flops_model(const ModelSpec& model, AnalysisLevel level) {
    model.validate();
    std::uint64_t macs = 0;
    for (const auto& layer : model.layers) macs += flops_forward(layer).macs;
    // forward + two backward passes (activation and weight gradients)
    if (level == AnalysisLevel::Training) macs *= 3;

    const std::uint64_t n = model.training.dataset_len * model.training.epochs;
    if (n != 0 && macs > std::numeric_limits<std::uint64_t>::max() / (2 * n))
        throw ArgumentError("FLOPs count overflow");
    return {FlopsCount::from_macs(macs), FlopsCount::from_macs(macs * n)};
}

}  // namespace tocost
