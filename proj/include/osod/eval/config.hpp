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

#include <vector>

namespace osod {

// 0.50, 0.55, ..., 0.95, each computed as (50 + 5 i) / 100.
std::vector<double> DefaultIouGrid();
// 0.00, 0.05, ..., 1.00, each computed as 5 i / 100.
std::vector<double> DefaultSweepThresholds();

struct EvalConfig {
  std::vector<double> iou_grid = DefaultIouGrid();
  // Known-labeled boxes below this score never count toward A-OSE.
  double aose_conf_threshold = 0.05;
  double wi_recall_target = 0.8;
  // IoU used for A-OSE, WI and operating-point statistics.
  double single_iou_for_openset = 0.5;
  // Per image and per pool, applied before any matching.
  int max_dets_per_image = 100;
  // Thresholds for the operating-point sweep in a full evaluation; empty
  // disables the sweep.
  std::vector<double> sweep_thresholds = DefaultSweepThresholds();

  // Throws ConfigError when a field is out of range.
  void Validate() const;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

}  // namespace osod
