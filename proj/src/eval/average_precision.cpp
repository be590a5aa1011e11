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

#include "osod/eval/average_precision.hpp"

#include <algorithm>

namespace osod {

PRCurve BuildPrCurve(std::span<const RankedOutcome> ranked, long num_gt) {
  PRCurve curve;
  curve.num_gt = num_gt;
  curve.points.reserve(ranked.size());
  long tp = 0;
  long seen = 0;
  for (const auto& r : ranked) {
    ++seen;
    if (r.true_positive) ++tp;
    const double recall =
        num_gt > 0 ? static_cast<double>(tp) / static_cast<double>(num_gt)
                   : 0.0;
    const double precision =
        static_cast<double>(tp) / static_cast<double>(seen);
    curve.points.push_back({recall, precision, r.score});
  }
  return curve;
}

std::optional<double> AveragePrecision(const PRCurve& curve) {
  if (curve.num_gt <= 0) return std::nullopt;
  const auto& pts = curve.points;
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].precision);
    envelope[i] = running;
  }
  double sum = 0.0;
  std::size_t cursor = 0;
  for (int j = 0; j <= 100; ++j) {
    const double level = j / 100.0;
    while (cursor < pts.size() && pts[cursor].recall < level) ++cursor;
    if (cursor == pts.size()) break;
    sum += envelope[cursor];
  }
  return sum / 101.0;
}

}  // namespace osod
