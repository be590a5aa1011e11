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

#include "osod/eval/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {

std::vector<double> DefaultIouGrid() {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back((50 + 5 * i) / 100.0);
  return grid;
}

std::vector<double> DefaultSweepThresholds() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(5 * i / 100.0);
  return grid;
}

void EvalConfig::Validate() const {
  if (iou_grid.empty()) throw ConfigError("iou_grid must not be empty");
  for (std::size_t i = 0; i < iou_grid.size(); ++i) {
    if (!(iou_grid[i] > 0.0 && iou_grid[i] <= 1.0)) {
      throw ConfigError(
          fmt::format("iou_grid value {} outside (0, 1]", iou_grid[i]));
    }
    if (i > 0 && !(iou_grid[i] > iou_grid[i - 1])) {
      throw ConfigError("iou_grid must be strictly increasing");
    }
  }
  if (!(aose_conf_threshold > 0.0 && aose_conf_threshold < 1.0)) {
    throw ConfigError("aose_conf_threshold must lie in (0, 1)");
  }
  if (!(single_iou_for_openset > 0.0 && single_iou_for_openset < 1.0)) {
    throw ConfigError("single_iou_for_openset must lie in (0, 1)");
  }
  if (!(wi_recall_target > 0.0 && wi_recall_target <= 1.0)) {
    throw ConfigError("wi_recall_target must lie in (0, 1]");
  }
  if (max_dets_per_image < 1) {
    throw ConfigError("max_dets_per_image must be positive");
  }
  for (std::size_t i = 0; i < sweep_thresholds.size(); ++i) {
    if (!std::isfinite(sweep_thresholds[i])) {
      throw ConfigError("sweep thresholds must be finite");
    }
    if (i > 0 && sweep_thresholds[i] < sweep_thresholds[i - 1]) {
      throw ConfigError("sweep thresholds must be sorted ascending");
    }
  }
}

}  // namespace osod
