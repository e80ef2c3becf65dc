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

#include "tocost/model_ir.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "tocost/errors.hpp"

namespace tocost {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line, std::string field)
    : Error([&] {
          std::string where;
          if (line > 0) where += "line " + std::to_string(line);
          if (!field.empty()) where += (where.empty() ? "" : ", ") + std::string("field '") + field + "'";
          return where.empty() ? message : where + ": " + message;
      }()),
      line_(line),
      field_(std::move(field)) {}

void FloatFormat::validate() const {
    if (sign_bits != 1) throw ValidationError("float format: sign_bits must be 1");
    if (exponent_bits < 1) throw ValidationError("float format: exponent_bits must be >= 1");
    if (fraction_bits < 1) throw ValidationError("float format: fraction_bits must be >= 1");
}

Count LayerSpec::output_units() const {
    if (const auto* fc = as_fc()) return fc->outputs;
    const auto& cv = std::get<Convolutional>(kind);
    return cv.out_width * cv.out_width * cv.out_channels;
}

void LayerSpec::validate() const {
    if (const auto* fc = as_fc()) {
        if (fc->inputs < 1 || fc->outputs < 1)
            throw ValidationError("fully_connected layer dimensions must be >= 1");
        return;
    }
    const auto& cv = std::get<Convolutional>(kind);
    if (cv.out_width < 1 || cv.kernel < 1 || cv.in_channels < 1 || cv.out_channels < 1)
        throw ValidationError("convolutional layer dimensions must be >= 1");
}

void ModelSpec::validate() const {
    float_format.validate();
    if (layers.empty()) throw ValidationError("model '" + name + "' has no layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        try {
            layers[i].validate();
        } catch (const ValidationError& e) {
            throw ValidationError("layer " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    for (std::size_t i = 1; i < layers.size(); ++i) {
        const auto* prev = layers[i - 1].as_fc();
        const auto* cur = layers[i].as_fc();
        if (prev && cur && prev->outputs != cur->inputs) {
            throw DimensionMismatchError(
                i, i + 1,
                "dimension mismatch between layer " + std::to_string(i) + " (outputs " +
                    std::to_string(prev->outputs) + ") and layer " + std::to_string(i + 1) +
                    " (inputs " + std::to_string(cur->inputs) + ")");
        }
    }
    if (training.dataset_len < 1 || training.batch_size < 1 || training.epochs < 1)
        throw ValidationError("training counts must be >= 1");
    if (training.batch_size > training.dataset_len)
        throw ValidationError("batch_size (" + std::to_string(training.batch_size) +
                              ") exceeds dataset_len (" + std::to_string(training.dataset_len) + ")");
}

Count ModelSpec::batches_per_epoch() const {
    return (training.dataset_len + training.batch_size - 1) / training.batch_size;
}

std::string_view to_string(Activation act) {
    switch (act) {
        case Activation::None: return "none";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
        case Activation::GELU: return "gelu";
    }
    return "none";
}

std::string_view to_string(LossKind) { return "mse"; }

std::string_view to_string(AnalysisLevel level) {
    switch (level) {
        case AnalysisLevel::Inference: return "inference";
        case AnalysisLevel::Validation: return "validation";
        case AnalysisLevel::Training: return "training";
    }
    return "inference";
}

std::string_view format_name(const FloatFormat& fmt) {
    if (fmt == FloatFormat::fp16()) return "fp16";
    if (fmt == FloatFormat::fp32()) return "fp32";
    if (fmt == FloatFormat::fp64()) return "fp64";
    return "custom";
}

Activation parse_activation(std::string_view name) {
    for (auto act : {Activation::None, Activation::Sigmoid, Activation::Tanh, Activation::GELU})
        if (name == to_string(act)) return act;
    throw EnumerationError("unknown activation '" + std::string(name) +
                           "' (expected none|sigmoid|tanh|gelu)");
}

LossKind parse_loss(std::string_view name) {
    if (name == "mse") return LossKind::MSE;
    throw EnumerationError("unknown loss '" + std::string(name) + "' (expected mse)");
}

AnalysisLevel parse_level(std::string_view name) {
    for (auto lvl : {AnalysisLevel::Inference, AnalysisLevel::Validation, AnalysisLevel::Training})
        if (name == to_string(lvl)) return lvl;
    throw EnumerationError("unknown analysis level '" + std::string(name) +
                           "' (expected inference|validation|training)");
}

FloatFormat parse_float_format(std::string_view name) {
    if (name == "fp16") return FloatFormat::fp16();
    if (name == "fp32") return FloatFormat::fp32();
    if (name == "fp64") return FloatFormat::fp64();
    throw EnumerationError("unknown float format '" + std::string(name) +
                           "' (expected fp16|fp32|fp64)");
}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError("unknown key", 0, path.empty() ? key : path + "." + key);
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing required key", 0, path.empty() ? key : path + "." + key);
    return *it;
}

Count as_count(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ParseError("expected an integer", 0, field);
    if (v.is_number_unsigned()) return v.get<Count>();
    auto s = v.get<std::int64_t>();
    if (s < 0) throw ParseError("expected a non-negative integer", 0, field);
    return static_cast<Count>(s);
}

std::string as_string(const json& v, const std::string& field) {
    if (!v.is_string()) throw ParseError("expected a string", 0, field);
    return v.get<std::string>();
}

template <typename F>
auto enum_field(const json& v, const std::string& field, F&& parse) {
    auto s = as_string(v, field);
    try {
        return parse(s);
    } catch (const EnumerationError& e) {
        throw EnumerationError("field '" + field + "': " + e.what());
    }
}

LayerSpec parse_layer(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError("expected an object", 0, path);
    auto kind = as_string(require(j, "kind", path), path + ".kind");
    auto act = Activation::None;
    if (auto it = j.find("activation"); it != j.end())
        act = enum_field(*it, path + ".activation", parse_activation);

    if (kind == "fully_connected") {
        reject_unknown_keys(j, {"kind", "inputs", "outputs", "activation"}, path);
        return LayerSpec::fc(as_count(require(j, "inputs", path), path + ".inputs"),
                             as_count(require(j, "outputs", path), path + ".outputs"), act);
    }
    if (kind == "convolutional") {
        reject_unknown_keys(j, {"kind", "out_width", "kernel", "in_channels", "out_channels", "activation"},
                            path);
        return LayerSpec::conv(as_count(require(j, "out_width", path), path + ".out_width"),
                               as_count(require(j, "kernel", path), path + ".kernel"),
                               as_count(require(j, "in_channels", path), path + ".in_channels"),
                               as_count(require(j, "out_channels", path), path + ".out_channels"), act);
    }
    throw EnumerationError("field '" + path + ".kind': unknown layer kind '" + kind +
                           "' (expected fully_connected|convolutional)");
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1), "");
    }
    if (!doc.is_object()) throw ParseError("model document must be an object", 1, "");
    reject_unknown_keys(doc, {"name", "float_format", "loss", "training", "layers"}, "");

    ModelSpec model;
    model.name = as_string(require(doc, "name", ""), "name");
    if (auto it = doc.find("float_format"); it != doc.end())
        model.float_format = enum_field(*it, "float_format", parse_float_format);
    if (auto it = doc.find("loss"); it != doc.end()) model.loss = enum_field(*it, "loss", parse_loss);
    if (auto it = doc.find("training"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("expected an object", 0, "training");
        reject_unknown_keys(*it, {"dataset_len", "batch_size", "epochs"}, "training");
        model.training.dataset_len = as_count(require(*it, "dataset_len", "training"), "training.dataset_len");
        model.training.batch_size = as_count(require(*it, "batch_size", "training"), "training.batch_size");
        model.training.epochs = as_count(require(*it, "epochs", "training"), "training.epochs");
    }
    const auto& layers = require(doc, "layers", "");
    if (!layers.is_array()) throw ParseError("expected an array", 0, "layers");
    for (std::size_t i = 0; i < layers.size(); ++i)
        model.layers.push_back(parse_layer(layers[i], "layers[" + std::to_string(i) + "]"));

    model.validate();
    return model;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_model(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line(), e.field());
    }
}

std::string serialize_model(const ModelSpec& model) {
    json doc;
    doc["name"] = model.name;
    auto fmt = format_name(model.float_format);
    if (fmt == "custom") throw ArgumentError("only fp16/fp32/fp64 formats can be serialized");
    doc["float_format"] = fmt;
    doc["loss"] = to_string(model.loss);
    doc["training"] = {{"dataset_len", model.training.dataset_len},
                       {"batch_size", model.training.batch_size},
                       {"epochs", model.training.epochs}};
    json layers = json::array();
    for (const auto& layer : model.layers) {
        json l;
        if (const auto* fc = layer.as_fc()) {
            l["kind"] = "fully_connected";
            l["inputs"] = fc->inputs;
            l["outputs"] = fc->outputs;
        } else {
            const auto& cv = *layer.as_conv();
            l["kind"] = "convolutional";
            l["out_width"] = cv.out_width;
            l["kernel"] = cv.kernel;
            l["in_channels"] = cv.in_channels;
            l["out_channels"] = cv.out_channels;
        }
        l["activation"] = to_string(layer.activation);
        layers.push_back(std::move(l));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2) + "\n";
}

std::vector<ModelSpec> model_family(const ModelSpec& base, std::span<const Count> widths,
                                    std::span<const Activation> activations) {
    if (widths.empty()) throw ArgumentError("model_family: width range is empty");
    if (activations.empty()) throw ArgumentError("model_family: activation set is empty");
    if (base.layers.size() < 2) throw ArgumentError("model_family: base model has no hidden layer");
    if (!std::all_of(base.layers.begin(), base.layers.end(),
                     [](const LayerSpec& l) { return l.is_fully_connected(); }))
        throw UnsupportedError("model_family: width sweeps require a fully-connected base model");

    std::vector<ModelSpec> family;
    family.reserve(widths.size() * activations.size());
    const std::size_t last = base.layers.size() - 1;
    for (Count w : widths) {
        for (Activation act : activations) {
            ModelSpec m = base;
            m.name = base.name + "_w" + std::to_string(w) + "_" + std::string(to_string(act));
            for (std::size_t i = 0; i < m.layers.size(); ++i) {
                auto& fc = std::get<FullyConnected>(m.layers[i].kind);
                if (i > 0) fc.inputs = w;
                if (i < last) {
                    fc.outputs = w;
                    m.layers[i].activation = act;
                }
            }
            m.validate();
            family.push_back(std::move(m));
        }
    }
    return family;
}

}  // namespace tocost
