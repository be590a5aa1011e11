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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

struct BaselineConfig {
  double gamma = 4.0;
  // Divides softmax logits; +inf flattens every score vector to uniform.
  double temperature = 1.0;
  // Number of top class scores summed into an unknown score.
  int top_m = 3;

  // Throws ConfigError unless gamma > 0, temperature > 0 and top_m >= 1.
  void Validate() const;
};

struct ClassScores {
  std::vector<double> values;
  // Set when the temperature had no effect (sigmoid heads).
  std::optional<std::string> warning;
};

// softmax(z / T) for softmax logits, the elementwise logistic for sigmoid
// logits, and the values unchanged for probabilities (which require T == 1).
ClassScores ScoresFromRaw(const RawPrediction& pred, double temperature);

// Top-1/top-2 ratio rule. With s(1) >= s(2) >= ... the sorted scores and
// r = s(1) / s(2) (+inf when s(2) == 0): r < gamma gives Unknown with score
// s(1) + ... + s(top_m); otherwise Known(argmax) with score s(1). Ties in the
// ranking go to the lower class index. For softmax logits r is evaluated as
// exp((z(1) - z(2)) / T), which equals the probability ratio without the
// underflow.
//
// `known_classes` maps score index to class id; when empty the index is the
// class id. Throws ConfigError for fewer than two scores, or top_m larger
// than the number of scores.
Detection Relabel(const RawPrediction& pred, const BaselineConfig& config,
                  std::span<const ClassId> known_classes = {});

// Elementwise Relabel in input order. Errors name the offending record. The
// sigmoid temperature warning is reported once per call.
std::vector<Detection> RelabelAll(std::span<const RawPrediction> preds,
                                  const BaselineConfig& config,
                                  std::span<const ClassId> known_classes = {},
                                  std::vector<Diagnostic>* warnings = nullptr,
                                  int threads = 1);

// Greedy suppression across the known/unknown boundary only: on one image a
// box is removed when a higher-ranked box of the other kind overlaps it with
// IoU >= iou_threshold. Ranking is by score, Known before Unknown on equal
// scores, then input order. Survivors keep their input order. Throws
// ConfigError unless iou_threshold is in (0, 1].
std::vector<Detection> CrossLabelNms(std::span<const Detection> dets,
                                     double iou_threshold);

}  // namespace osod
