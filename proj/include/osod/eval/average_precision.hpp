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
#include <vector>

namespace osod {

struct PRPoint {
  double recall;
  double precision;
  double score;  // score of the detection that closes this point
};

// Precision/recall after each detection of a ranked list.
struct PRCurve {
  std::vector<PRPoint> points;  // recall non-decreasing
  long num_gt = 0;
};

struct RankedOutcome {
  double score;
  bool true_positive;
};

// `ranked` must already be in evaluation order (descending score with the
// caller's tie-break applied).
PRCurve BuildPrCurve(std::span<const RankedOutcome> ranked, long num_gt);

// 101-point interpolated AP: the precision envelope max_{r' >= r} p(r')
// sampled at r = j / 100, j = 0..100, and averaged. A recall level beyond
// the curve contributes zero. Absent when the curve has no ground truth.
std::optional<double> AveragePrecision(const PRCurve& curve);

}  // namespace osod
