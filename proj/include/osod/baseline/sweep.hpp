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
#include <span>
#include <vector>

#include "osod/baseline/baseline.hpp"
#include "osod/eval/config.hpp"
#include "osod/eval/ground_truth_index.hpp"
#include "osod/eval/metrics.hpp"

namespace osod {

struct BaselineSweepCell {
  double gamma;
  double temperature;
  std::int64_t unknown_count;  // predictions relabeled Unknown
  MetricsReport report;
};

struct BaselineSweepOptions {
  int top_m = 3;
  std::optional<double> cross_nms_iou;
  int threads = 1;
};

// One evaluation per (gamma, temperature) cell, temperature-major in grid
// order. Raw scores are indexed by gt.known_classes(). Verifies that at each
// temperature the set of Unknown-labeled predictions only grows with gamma
// and throws NumericError if it does not. Throws ConfigError for empty grids.
std::vector<BaselineSweepCell> SweepBaseline(
    std::span<const RawPrediction> preds, std::span<const double> gamma_grid,
    std::span<const double> temperature_grid, const EvalGroundTruth& gt,
    const EvalConfig& eval_config, const BaselineSweepOptions& options = {});

}  // namespace osod
