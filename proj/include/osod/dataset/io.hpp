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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

enum class GroundTruthFormat { kNative, kCocoLike };

struct ParsedDataset {
  DatasetView view;
  // Non-fatal findings, e.g. dropped crowd/group-of annotations.
  std::vector<Diagnostic> warnings;
};

// Parses a ground-truth document. Instance order follows document order.
// Throws ParseError (with line/column) for malformed JSON and SchemaError for
// unknown class names, duplicate image ids, bad boxes and the like.
ParsedDataset ParseGroundTruth(std::string_view source, GroundTruthFormat format);

// Native format only. ParseGroundTruth(SerializeGroundTruth(v)) == v for any
// view without a split.
std::string SerializeGroundTruth(const DatasetView& view);

// What a detection file is checked against: class names resolve through the
// taxonomy and raw score vectors must have one entry per known class.
struct DetectionSchema {
  const ClassTaxonomy* taxonomy = nullptr;
  std::vector<ClassId> known_classes;  // ascending
};

std::vector<Detection> ParseLabeledDetections(std::string_view source,
                                              const DetectionSchema& schema);
std::vector<RawPrediction> ParseRawPredictions(std::string_view source,
                                               const DetectionSchema& schema);

std::string SerializeDetections(std::span<const Detection> detections,
                                const ClassTaxonomy& taxonomy);
std::string SerializeRawPredictions(std::span<const RawPrediction> predictions);

// Throws IoError naming the path when it cannot be read.
std::string ReadFile(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// Field-level checks shared by the parsers and by in-memory construction.
// Throw SchemaError describing the violation.
void CheckRawPrediction(const RawPrediction& pred, std::size_t num_known);
void CheckDetectionScore(double score);

}  // namespace osod
