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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tocost {

/// Root of every error raised by the library.  The CLI maps subclasses
/// onto exit codes: UnsupportedError -> 3, everything else -> 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document.  Carries the 1-based line (0 if unknown) and the
/// field path (e.g. "layers[1].inputs") where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::string field);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Unknown enumeration name (activation, loss, float format, level).
class EnumerationError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input that violates a semantic invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Layer dimension mismatch between two consecutive layers (1-based indices).
class DimensionMismatchError : public ValidationError {
public:
    DimensionMismatchError(std::size_t first, std::size_t second, const std::string& message)
        : ValidationError(message), first_(first), second_(second) {}

    std::size_t first_layer() const noexcept { return first_; }
    std::size_t second_layer() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Bad measurement data (e.g. non-monotone trace time).  `index` is the
/// 0-based sample or row that triggered it.
class DataError : public Error {
public:
    DataError(const std::string& message, std::size_t index)
        : Error(message), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class DegenerateFitError : public Error {
public:
    using Error::Error;
};

/// A valid request the analyzer does not model (e.g. convolutional backprop).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace tocost
