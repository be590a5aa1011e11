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

#include "osod/eval/matching.hpp"

#include <algorithm>
#include <numeric>

namespace osod {

namespace detail {

void GreedyMatch(std::span<const int> order, std::span<const double> iou,
                 int num_gts, double iou_threshold, std::span<int> matched_gt,
                 std::span<char> gt_taken) {
  std::fill(gt_taken.begin(), gt_taken.begin() + num_gts, 0);
  for (int d : order) {
    int best = -1;
    double best_iou = 0.0;
    const double* row = iou.data() + static_cast<std::size_t>(d) * num_gts;
    for (int g = 0; g < num_gts; ++g) {
      if (gt_taken[g] || row[g] < iou_threshold) continue;
      if (best < 0 || row[g] > best_iou) {
        best = g;
        best_iou = row[g];
      }
    }
    matched_gt[d] = best;
    if (best >= 0) gt_taken[best] = 1;
  }
}

}  // namespace detail

std::vector<MatchOutcome> MatchImage(std::span<const Detection> dets,
                                     std::span<const GroundTruthInstance> gts,
                                     std::span<const ClassId> unknown_classes,
                                     double iou_threshold, Pool pool) {
  auto is_unknown_class = [&](ClassId id) {
    return std::find(unknown_classes.begin(), unknown_classes.end(), id) !=
           unknown_classes.end();
  };
  auto det_in_pool = [&](const Detection& d) {
    return pool.is_unknown() ? d.label.is_unknown()
                             : d.label.is_known() &&
                                   d.label.class_id() == pool.class_id();
  };
  auto gt_in_pool = [&](const GroundTruthInstance& g) {
    return pool.is_unknown() ? is_unknown_class(g.class_id)
                             : g.class_id == pool.class_id();
  };

  std::vector<int> pool_dets;
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
    if (det_in_pool(dets[i])) pool_dets.push_back(i);
  }
  std::vector<int> pool_gts;
  std::vector<int> unknown_gts;
  for (int j = 0; j < static_cast<int>(gts.size()); ++j) {
    if (gt_in_pool(gts[j])) pool_gts.push_back(j);
    if (is_unknown_class(gts[j].class_id)) unknown_gts.push_back(j);
  }

  const int nd = static_cast<int>(pool_dets.size());
  const int ng = static_cast<int>(pool_gts.size());
  std::vector<double> iou(static_cast<std::size_t>(nd) * ng);
  for (int a = 0; a < nd; ++a) {
    for (int b = 0; b < ng; ++b) {
      iou[static_cast<std::size_t>(a) * ng + b] =
          Iou(dets[pool_dets[a]].box, gts[pool_gts[b]].box);
    }
  }
  std::vector<int> order(nd);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return dets[pool_dets[a]].score > dets[pool_dets[b]].score;
  });
  std::vector<int> matched(nd, -1);
  std::vector<char> taken(ng, 0);
  detail::GreedyMatch(order, iou, ng, iou_threshold, matched, taken);

  std::vector<MatchOutcome> out(dets.size(),
                                MatchOutcome{MatchKind::kIgnoredWrongPool, -1});
  for (int a = 0; a < nd; ++a) {
    MatchOutcome& o = out[pool_dets[a]];
    if (matched[a] >= 0) {
      o = {MatchKind::kTruePositive, pool_gts[matched[a]]};
      continue;
    }
    o = {MatchKind::kFalsePositive, -1};
    if (pool.is_unknown()) continue;
    double best = 0.0;
    for (int j : unknown_gts) {
      const double v = Iou(dets[pool_dets[a]].box, gts[j].box);
      if (v >= iou_threshold && (o.gt_index < 0 || v > best)) {
        o = {MatchKind::kOpenSetError, j};
        best = v;
      }
    }
  }
  return out;
}

}  // namespace osod
