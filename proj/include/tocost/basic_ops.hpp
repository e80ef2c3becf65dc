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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace tocost {

/// The five basic-operation categories.  `Root` also covers e^x.
enum class OpKind : std::size_t { Add = 0, Sub = 1, Mul = 2, Div = 3, Root = 4 };

inline constexpr std::array<OpKind, 5> kAllOpKinds = {OpKind::Add, OpKind::Sub, OpKind::Mul,
                                                       OpKind::Div, OpKind::Root};

std::string_view to_string(OpKind kind);

/// Basic-operation tally, always ordered [add, sub, mul, div, root].
struct BasicOpCounts {
    std::uint64_t n_add = 0;
    std::uint64_t n_sub = 0;
    std::uint64_t n_mul = 0;
    std::uint64_t n_div = 0;
    std::uint64_t n_root = 0;

    constexpr std::uint64_t& operator[](OpKind k) {
        switch (k) {
            case OpKind::Add: return n_add;
            case OpKind::Sub: return n_sub;
            case OpKind::Mul: return n_mul;
            case OpKind::Div: return n_div;
            case OpKind::Root: break;
        }
        return n_root;
    }
    constexpr std::uint64_t operator[](OpKind k) const {
        return const_cast<BasicOpCounts&>(*this)[k];
    }

    constexpr std::array<std::uint64_t, 5> as_array() const {
        return {n_add, n_sub, n_mul, n_div, n_root};
    }
    constexpr std::uint64_t total() const { return n_add + n_sub + n_mul + n_div + n_root; }
    constexpr bool is_zero() const { return total() == 0; }

    constexpr BasicOpCounts& operator+=(const BasicOpCounts& o) {
        n_add += o.n_add;
        n_sub += o.n_sub;
        n_mul += o.n_mul;
        n_div += o.n_div;
        n_root += o.n_root;
        return *this;
    }
    friend constexpr BasicOpCounts operator+(BasicOpCounts a, const BasicOpCounts& b) { return a += b; }

    /// Non-negative integer scaling; throws ArgumentError on overflow.
    BasicOpCounts scaled(std::uint64_t factor) const;

    friend constexpr bool operator==(const BasicOpCounts&, const BasicOpCounts&) = default;
};

std::ostream& operator<<(std::ostream& os, const BasicOpCounts& c);

}  // namespace tocost
