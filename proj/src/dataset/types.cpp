// Copyright 2026 The osod-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osod/dataset/types.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kEval: return "evaluation error";
  }
  return "error";
}

BoundingBox::BoundingBox(double x_min, double y_min, double x_max,
                         double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(y_min) ||
      !std::isfinite(x_max) || !std::isfinite(y_max)) {
    throw SchemaError("box coordinates must be finite");
  }
  if (!(x_max > x_min)) {
    throw SchemaError(fmt::format("box x_max ({}) must exceed x_min ({})",
                                  x_max, x_min));
  }
  if (!(y_max > y_min)) {
    throw SchemaError(fmt::format("box y_max ({}) must exceed y_min ({})",
                                  y_max, y_min));
  }
}

ClassTaxonomy::ClassTaxonomy(std::string super_class,
                             std::vector<std::string> class_names)
    : super_class_(std::move(super_class)), names_(std::move(class_names)) {
  if (names_.empty()) {
    throw SchemaError("taxonomy must declare at least one class");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw SchemaError(fmt::format("taxonomy class #{} has an empty name", i));
    }
    auto [it, inserted] =
        index_.emplace(names_[i], static_cast<ClassId>(i));
    if (!inserted) {
      throw SchemaError(
          fmt::format("duplicate class name '{}' in taxonomy", names_[i]));
    }
  }
}

std::optional<ClassId> ClassTaxonomy::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SplitSpec::is_known(ClassId id) const {
  return std::binary_search(known_classes.begin(), known_classes.end(), id);
}

bool SplitSpec::is_unknown(ClassId id) const {
  return std::binary_search(unknown_classes.begin(), unknown_classes.end(),
                            id);
}

const char* ToString(Subset subset) {
  switch (subset) {
    case Subset::kTrain: return "train";
    case Subset::kVal: return "val";
    case Subset::kTest: return "test";
  }
  return "?";
}

const char* ToString(SplitProtocol protocol) {
  return protocol == SplitProtocol::kKeepUnknownTrainImages ? "keep" : "drop";
}

const char* ToString(ValueKind kind) {
  return kind == ValueKind::kLogits ? "logits" : "probabilities";
}

const char* ToString(HeadKind kind) {
  return kind == HeadKind::kSoftmax ? "softmax" : "sigmoid";
}

}  // namespace osod
