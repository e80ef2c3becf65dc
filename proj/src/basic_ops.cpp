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

#include "tocost/basic_ops.hpp"

#include <limits>
#include <ostream>

#include "tocost/errors.hpp"

namespace tocost {

std::string_view to_string(OpKind kind) {
    switch (kind) {
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::Div: return "div";
        case OpKind::Root: return "root";
    }
    return "root";
}

BasicOpCounts BasicOpCounts::scaled(std::uint64_t factor) const {
    BasicOpCounts out;
    for (auto k : kAllOpKinds) {
        auto v = (*this)[k];
        if (factor != 0 && v > std::numeric_limits<std::uint64_t>::max() / factor)
            throw ArgumentError("basic-operation count overflow while scaling");
        out[k] = v * factor;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const BasicOpCounts& c) {
    return os << '[' << c.n_add << ',' << c.n_sub << ',' << c.n_mul << ',' << c.n_div << ','
              << c.n_root << ']';
}

}  // namespace tocost
