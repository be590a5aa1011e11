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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "osod/dataset/box.hpp"

namespace osod {

// Dense class index, assigned from the taxonomy's declaration order.
using ClassId = std::int32_t;
using ImageId = std::string;

class ClassTaxonomy {
 public:
  ClassTaxonomy() = default;
  // Throws SchemaError on an empty list or duplicate names.
  ClassTaxonomy(std::string super_class, std::vector<std::string> class_names);

  const std::string& super_class() const { return super_class_; }
  const std::vector<std::string>& class_names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool contains(ClassId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < names_.size();
  }
  const std::string& name(ClassId id) const { return names_.at(id); }
  std::optional<ClassId> find(std::string_view name) const;

  friend bool operator==(const ClassTaxonomy& a, const ClassTaxonomy& b) {
    return a.super_class_ == b.super_class_ && a.names_ == b.names_;
  }

 private:
  std::string super_class_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, ClassId> index_;
};

enum class Subset { kTrain, kVal, kTest };

struct ImageInfo {
  ImageId id;
  // Zero when the annotation file does not state the dimension.
  double width = 0.0;
  double height = 0.0;
  // Original dataset subset, when the source provides one.
  std::optional<Subset> subset;

  friend bool operator==(const ImageInfo&, const ImageInfo&) = default;
};

struct GroundTruthInstance {
  ImageId image_id;
  BoundingBox box;
  ClassId class_id;

  friend bool operator==(const GroundTruthInstance&,
                         const GroundTruthInstance&) = default;
};

enum class SplitProtocol {
  kKeepUnknownTrainImages,  // strip non-known annotations, keep the image
  kDropUnknownTrainImages,  // drop any train image showing a non-known class
};

struct SplitProvenance {
  std::string method;  // "random", "ncut", "manual", ...
  std::uint64_t seed = 0;
  SplitProtocol protocol = SplitProtocol::kKeepUnknownTrainImages;
  std::optional<double> ncut_value;
  std::vector<std::string> notes;

  friend bool operator==(const SplitProvenance&,
                         const SplitProvenance&) = default;
};

// Known/unknown class sets plus the image lists of each subset. Class sets
// are kept sorted ascending.
struct SplitSpec {
  std::string name;
  std::vector<ClassId> known_classes;
  std::vector<ClassId> unknown_classes;
  std::vector<ImageId> train_images;
  std::vector<ImageId> val_images;
  std::vector<ImageId> test_images;
  SplitProvenance provenance;

  bool is_known(ClassId id) const;
  bool is_unknown(ClassId id) const;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

struct DatasetView {
  ClassTaxonomy taxonomy;
  std::vector<ImageInfo> images;
  std::vector<GroundTruthInstance> instances;
  // Set by ApplySplit; a view with a split holds filtered annotations.
  std::optional<SplitSpec> split;

  friend bool operator==(const DatasetView&, const DatasetView&) = default;
};

enum class ValueKind { kLogits, kProbabilities };
enum class HeadKind { kSoftmax, kSigmoid };

// Per-box class scores straight from a closed-set detector. Entry i belongs
// to the i-th known class in ascending class-id order.
struct RawPrediction {
  ImageId image_id;
  BoundingBox box;
  std::vector<double> values;
  ValueKind value_kind = ValueKind::kProbabilities;
  HeadKind head_kind = HeadKind::kSigmoid;
};

class DetectionLabel {
 public:
  static DetectionLabel Known(ClassId id) { return DetectionLabel(id); }
  static DetectionLabel Unknown() { return DetectionLabel(-1); }

  bool is_unknown() const { return class_id_ < 0; }
  bool is_known() const { return class_id_ >= 0; }
  // Only meaningful for known labels.
  ClassId class_id() const { return class_id_; }

  friend bool operator==(DetectionLabel, DetectionLabel) = default;

 private:
  explicit DetectionLabel(ClassId id) : class_id_(id) {}
  ClassId class_id_;
};

struct Detection {
  ImageId image_id;
  BoundingBox box;
  DetectionLabel label;
  double score;

  friend bool operator==(const Detection&, const Detection&) = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

const char* ToString(Subset subset);
const char* ToString(SplitProtocol protocol);
const char* ToString(ValueKind kind);
const char* ToString(HeadKind kind);

}  // namespace osod
