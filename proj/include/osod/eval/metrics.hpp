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
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "osod/dataset/types.hpp"
#include "osod/error.hpp"
#include "osod/eval/config.hpp"
#include "osod/eval/ground_truth_index.hpp"

namespace osod {

// Counts for known-labeled detections with score >= conf_threshold, matched
// at EvalConfig::single_iou_for_openset.
//
// fp_known is the closed-set false-positive count: detections that are
// neither a true positive nor an open-set error. With it,
//   P_K       = TP / (TP + FP)           (unknown objects absent)
//   P_{K u U} = TP / (TP + FP + A-OSE)   (open set)
//   WI        = P_K / P_{K u U} - 1 = A-OSE / (TP + FP).
struct OperatingPointStats {
  double conf_threshold = 0.0;
  std::int64_t tp_known = 0;
  std::int64_t fp_known = 0;
  std::int64_t aose = 0;
  double recall_known = 0.0;
  // Absent when TP + FP + A-OSE == 0 (closed: TP + FP == 0).
  std::optional<double> precision_closed;
  std::optional<double> precision_open;
  // A-OSE / (TP + FP); absent when TP + FP == 0.
  std::optional<double> wi;
};

struct ClassAp {
  ClassId class_id;
  double ap;
};

struct KnownApResult {
  // Classes with at least one ground-truth instance, ascending id.
  std::vector<ClassAp> per_class;
  double map_known = 0.0;
};

class RecallUnreachableError : public EvalError {
 public:
  RecallUnreachableError(double target, double max_recall);
  double max_recall() const { return max_recall_; }

 private:
  double max_recall_;
};

struct WildernessImpactResult {
  double wi;
  OperatingPointStats at;  // the selected operating point
};

struct MetricsReport {
  std::vector<ClassAp> ap_known_per_class;
  double map_known = 0.0;
  std::optional<double> ap_unk;
  std::int64_t aose = 0;
  std::optional<double> wi;
  std::optional<double> wi_threshold;
  // Highest recall_known reachable; reported when WI is absent.
  double max_recall_known = 0.0;
  std::vector<OperatingPointStats> sweep;
  std::int64_t num_known_gt = 0;
  std::int64_t num_unknown_gt = 0;
  std::int64_t num_detections = 0;  // evaluated, after the per-image cap
  EvalConfig config;
};

// All metrics for one detection set against prepared ground truth. The
// expensive matching runs once in the constructor; the accessors are cheap.
//
// Detections on images outside the evaluated set are ignored. A Known label
// outside the split's known classes is a ConfigError. Within each pool and
// image only the max_dets_per_image highest-scoring detections are kept
// (ties: lower input index first).
class OpenSetEvaluation {
 public:
  OpenSetEvaluation(std::span<const Detection> detections,
                    const EvalGroundTruth& gt, const EvalConfig& config,
                    int threads = 1);
  ~OpenSetEvaluation();
  OpenSetEvaluation(OpenSetEvaluation&&) noexcept;
  OpenSetEvaluation& operator=(OpenSetEvaluation&&) noexcept;

  // Throws EvalError when there is no known ground truth at all.
  KnownApResult ApKnown() const;
  std::optional<double> ApUnknown() const;
  std::int64_t AOse() const;
  OperatingPointStats OperatingPoint(double conf_threshold) const;
  // Throws RecallUnreachableError when no threshold reaches the target.
  WildernessImpactResult WildernessImpact() const;
  std::vector<OperatingPointStats> Sweep(std::span<const double> thresholds) const;
  double MaxRecallKnown() const;
  MetricsReport Report() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Convenience entry points that index `gt_view` on every call.
KnownApResult ApKnown(std::span<const Detection> dets,
                      const DatasetView& gt_view, const EvalConfig& cfg);
std::optional<double> ApUnknown(std::span<const Detection> dets,
                                const DatasetView& gt_view,
                                const EvalConfig& cfg);
std::int64_t AOse(std::span<const Detection> dets, const DatasetView& gt_view,
                  const EvalConfig& cfg);
OperatingPointStats OperatingPoint(std::span<const Detection> dets,
                                   const DatasetView& gt_view,
                                   double conf_threshold,
                                   const EvalConfig& cfg);
double WildernessImpact(std::span<const Detection> dets,
                        const DatasetView& gt_view, const EvalConfig& cfg);
std::vector<OperatingPointStats> SweepOperatingPoints(
    std::span<const Detection> dets, const DatasetView& gt_view,
    std::span<const double> thresholds, const EvalConfig& cfg);
MetricsReport Evaluate(std::span<const Detection> dets,
                       const DatasetView& gt_view, const EvalConfig& cfg,
                       int threads = 1);

}  // namespace osod
