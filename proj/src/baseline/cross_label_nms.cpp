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

#include <algorithm>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

#include "osod/baseline/baseline.hpp"
#include "osod/error.hpp"

namespace osod {

std::vector<Detection> CrossLabelNms(std::span<const Detection> dets,
                                     double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ConfigError(fmt::format("cross-label NMS IoU must be in (0, 1], got {}",
                                  iou_threshold));
  }
  const int n = static_cast<int>(dets.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
    const bool ka = dets[a].label.is_known();
    const bool kb = dets[b].label.is_known();
    if (ka != kb) return ka;
    return a < b;
  });

  // Survivors so far, per image and per kind.
  std::unordered_map<std::string_view, std::vector<int>> kept_known;
  std::unordered_map<std::string_view, std::vector<int>> kept_unknown;
  std::vector<char> keep(n, 0);
  for (int i : order) {
    const Detection& d = dets[i];
    const auto& rivals =
        d.label.is_known() ? kept_unknown[d.image_id] : kept_known[d.image_id];
    const bool suppressed =
        std::any_of(rivals.begin(), rivals.end(), [&](int j) {
          return Iou(d.box, dets[j].box) >= iou_threshold;
        });
    if (suppressed) continue;
    keep[i] = 1;
    (d.label.is_known() ? kept_known : kept_unknown)[d.image_id].push_back(i);
  }

  std::vector<Detection> out;
  for (int i = 0; i < n; ++i) {
    if (keep[i]) out.push_back(dets[i]);
  }
  return out;
}

}  // namespace osod
