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

#include "osod/baseline/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "osod/dataset/io.hpp"
#include "osod/error.hpp"
#include "osod/parallel.hpp"

namespace osod {

void BaselineConfig::Validate() const {
  if (!(gamma > 0.0)) {
    throw ConfigError(fmt::format("gamma must be positive, got {}", gamma));
  }
  if (!(temperature > 0.0)) {
    throw ConfigError(
        fmt::format("temperature must be positive, got {}", temperature));
  }
  if (top_m < 1) {
    throw ConfigError(fmt::format("top_m must be at least 1, got {}", top_m));
  }
}

ClassScores ScoresFromRaw(const RawPrediction& pred, double temperature) {
  if (!(temperature > 0.0)) {
    throw ConfigError(
        fmt::format("temperature must be positive, got {}", temperature));
  }
  ClassScores out;
  if (pred.value_kind == ValueKind::kProbabilities) {
    if (temperature != 1.0) {
      throw ConfigError(fmt::format(
          "temperature {} needs logits; the prediction holds probabilities",
          temperature));
    }
    out.values = pred.values;
    return out;
  }
  const auto& z = pred.values;
  out.values.resize(z.size());
  if (pred.head_kind == HeadKind::kSigmoid) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      out.values[i] = 1.0 / (1.0 + std::exp(-z[i]));
    }
    if (temperature != 1.0) {
      out.warning = fmt::format(
          "temperature {} ignored for sigmoid logits", temperature);
    }
    return out;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (double v : z) top = std::max(top, v / temperature);
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out.values[i] = std::exp(z[i] / temperature - top);
    sum += out.values[i];
  }
  for (double& v : out.values) v /= sum;
  return out;
}

namespace {

Detection RelabelScores(const RawPrediction& pred, const ClassScores& scores,
                        const BaselineConfig& config,
                        std::span<const ClassId> known_classes) {
  const auto& s = scores.values;
  const bool logits = pred.value_kind == ValueKind::kLogits;
  // Logits rank identically to their scores but never saturate.
  const auto& key = logits ? pred.values : s;
  std::vector<int> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key[a] > key[b]; });

  const int first = order[0];
  const int second = order[1];
  double ratio;
  if (logits && pred.head_kind == HeadKind::kSoftmax) {
    ratio = std::exp((pred.values[first] - pred.values[second]) /
                     config.temperature);
  } else if (s[second] == 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  } else {
    ratio = s[first] / s[second];
  }

  if (ratio < config.gamma) {
    double sum = 0.0;
    for (int i = 0; i < config.top_m; ++i) sum += s[order[i]];
    return {pred.image_id, pred.box, DetectionLabel::Unknown(), sum};
  }
  const ClassId id = known_classes.empty() ? first : known_classes[first];
  return {pred.image_id, pred.box, DetectionLabel::Known(id), s[first]};
}

void CheckShape(const RawPrediction& pred, const BaselineConfig& config,
                std::span<const ClassId> known_classes) {
  const std::size_t n = pred.values.size();
  if (n < 2) {
    throw ConfigError(fmt::format(
        "the ratio rule needs at least 2 class scores, got {}", n));
  }
  if (static_cast<std::size_t>(config.top_m) > n) {
    throw ConfigError(fmt::format("top_m {} exceeds the {} class scores",
                                  config.top_m, n));
  }
  if (!known_classes.empty() && known_classes.size() != n) {
    throw ConfigError(fmt::format("{} class scores for {} known classes", n,
                                  known_classes.size()));
  }
}

}  // namespace

Detection Relabel(const RawPrediction& pred, const BaselineConfig& config,
                  std::span<const ClassId> known_classes) {
  config.Validate();
  CheckShape(pred, config, known_classes);
  CheckRawPrediction(pred, pred.values.size());
  return RelabelScores(pred, ScoresFromRaw(pred, config.temperature), config,
                       known_classes);
}

std::vector<Detection> RelabelAll(std::span<const RawPrediction> preds,
                                  const BaselineConfig& config,
                                  std::span<const ClassId> known_classes,
                                  std::vector<Diagnostic>* warnings,
                                  int threads) {
  config.Validate();
  std::vector<std::optional<Detection>> slots(preds.size());
  std::vector<char> warned(preds.size(), 0);
  ParallelFor(static_cast<int>(preds.size()), threads, [&](int i) {
    try {
      const RawPrediction& pred = preds[i];
      CheckShape(pred, config, known_classes);
      CheckRawPrediction(pred, pred.values.size());
      ClassScores scores = ScoresFromRaw(pred, config.temperature);
      warned[i] = scores.warning.has_value();
      slots[i] = RelabelScores(pred, scores, config, known_classes);
    } catch (const Error& e) {
      const std::string message = fmt::format("prediction #{}: {}", i, e.what());
      if (e.kind() == ErrorKind::kConfiguration) throw ConfigError(message);
      throw SchemaError(message);
    }
  });
  std::vector<Detection> out;
  out.reserve(preds.size());
  for (auto& d : slots) out.push_back(std::move(*d));
  if (warnings) {
    auto it = std::find(warned.begin(), warned.end(), 1);
    if (it != warned.end()) {
      warnings->push_back(
          {Severity::kWarning,
           fmt::format("temperature {} ignored for sigmoid logits "
                       "(first at prediction #{})",
                       config.temperature, it - warned.begin())});
    }
  }
  return out;
}

}  // namespace osod
