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

#include <span>
#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

// Evaluation pool: one per known class, plus one class-agnostic pool for
// everything unknown.
class Pool {
 public:
  static Pool KnownClass(ClassId id) { return Pool(id); }
  static Pool Unknown() { return Pool(-1); }
  bool is_unknown() const { return class_id_ < 0; }
  ClassId class_id() const { return class_id_; }

 private:
  explicit Pool(ClassId id) : class_id_(id) {}
  ClassId class_id_;
};

enum class MatchKind {
  kTruePositive,
  kFalsePositive,
  // A false positive of a known-class pool overlapping an unknown-class
  // ground truth at the matching threshold.
  kOpenSetError,
  kIgnoredWrongPool,
};

struct MatchOutcome {
  MatchKind kind;
  int gt_index = -1;  // into the `gts` span; set for TP and open-set errors
};

// Greedy single-assignment matching for one image. Detections are visited by
// descending score (ties: lower input index first); each takes the unmatched
// pool ground truth with the highest IoU >= iou_threshold (ties: lowest
// ground-truth index). Outcomes are returned in input order.
//
// A known pool holds ground truth of its class and detections labeled with
// that class; the unknown pool holds all ground truth whose class is in
// `unknown_classes` and all Unknown-labeled detections.
std::vector<MatchOutcome> MatchImage(std::span<const Detection> dets,
                                     std::span<const GroundTruthInstance> gts,
                                     std::span<const ClassId> unknown_classes,
                                     double iou_threshold, Pool pool);

namespace detail {

// Core greedy assignment shared by MatchImage and the evaluator.
// `order` lists detection rows in visiting order; `iou` is row-major
// num_dets x num_gts. Writes the matched ground-truth column (or -1) for
// each detection row into `matched_gt`. `gt_taken` is scratch of size
// num_gts.
void GreedyMatch(std::span<const int> order, std::span<const double> iou,
                 int num_gts, double iou_threshold, std::span<int> matched_gt,
                 std::span<char> gt_taken);

}  // namespace detail
}  // namespace osod
