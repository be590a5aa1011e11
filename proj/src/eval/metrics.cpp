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

#include "osod/eval/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "osod/eval/average_precision.hpp"
#include "osod/eval/matching.hpp"
#include "osod/parallel.hpp"

namespace osod {

RecallUnreachableError::RecallUnreachableError(double target, double max_recall)
    : EvalError(fmt::format("recall unreachable: target {} but the highest "
                            "achievable known recall is {}",
                            target, max_recall)),
      max_recall_(max_recall) {}

namespace {

enum class KnownStatus : std::uint8_t { kTruePositive, kFalsePositive, kOpenSet };

struct PoolDet {
  int image;
  int index;  // position in the caller's detection list
  double score;
  const BoundingBox* box;
};

struct KnownOutcome {
  double score;
  int index;
  KnownStatus status;
};

struct PoolResult {
  std::vector<double> ap_per_iou;  // empty when the pool has no ground truth
  std::vector<KnownOutcome> outcomes;  // known pools only
};

bool RankBefore(double score_a, int index_a, double score_b, int index_b) {
  if (score_a != score_b) return score_a > score_b;
  return index_a < index_b;
}

// Pool detections grouped by image (ascending), ranked within each image and
// truncated to the per-image cap.
std::vector<std::vector<PoolDet>> BucketDetections(
    std::span<const Detection> dets, const EvalGroundTruth& gt, int cap) {
  std::vector<std::vector<PoolDet>> pools(gt.num_pools());
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
    const Detection& d = dets[i];
    auto image = gt.image_index(d.image_id);
    if (!image) continue;
    int pool = gt.unknown_pool();
    if (d.label.is_known()) {
      pool = gt.known_pool(d.label.class_id());
      if (pool < 0) {
        throw ConfigError(fmt::format(
            "detection #{} is labeled with class id {}, which is not a known "
            "class of the evaluated split",
            i, d.label.class_id()));
      }
    }
    pools[pool].push_back({*image, i, d.score, &d.box});
  }
  for (auto& list : pools) {
    std::sort(list.begin(), list.end(), [](const PoolDet& a, const PoolDet& b) {
      if (a.image != b.image) return a.image < b.image;
      return RankBefore(a.score, a.index, b.score, b.index);
    });
    std::vector<PoolDet> capped;
    capped.reserve(list.size());
    int run_image = -1;
    int run = 0;
    for (const auto& d : list) {
      if (d.image != run_image) {
        run_image = d.image;
        run = 0;
      }
      if (run++ < cap) capped.push_back(d);
    }
    list = std::move(capped);
  }
  return pools;
}

PoolResult EvaluatePool(int pool, std::span<const PoolDet> dets,
                        const EvalGroundTruth& gt, const EvalConfig& cfg) {
  const auto gts = gt.pool_gt(pool);
  const bool known_pool = pool != gt.unknown_pool();
  const std::size_t num_iou = cfg.iou_grid.size();
  const std::size_t n = dets.size();

  // tp[t * n + i]: detection i is a true positive at iou_grid[t].
  std::vector<char> tp(num_iou * n, 0);
  std::vector<KnownStatus> status(known_pool ? n : 0,
                                  KnownStatus::kFalsePositive);

  std::vector<double> iou;
  std::vector<int> order;
  std::vector<int> matched;
  std::vector<char> taken;
  std::size_t d_begin = 0;
  std::size_t g_begin = 0;
  while (d_begin < n) {
    const int image = dets[d_begin].image;
    std::size_t d_end = d_begin;
    while (d_end < n && dets[d_end].image == image) ++d_end;
    while (g_begin < gts.size() && gts[g_begin].image < image) ++g_begin;
    std::size_t g_end = g_begin;
    while (g_end < gts.size() && gts[g_end].image == image) ++g_end;

    const int nd = static_cast<int>(d_end - d_begin);
    const int ng = static_cast<int>(g_end - g_begin);
    iou.assign(static_cast<std::size_t>(nd) * ng, 0.0);
    for (int a = 0; a < nd; ++a) {
      for (int b = 0; b < ng; ++b) {
        iou[static_cast<std::size_t>(a) * ng + b] =
            Iou(*dets[d_begin + a].box, gts[g_begin + b].box);
      }
    }
    order.resize(nd);
    std::iota(order.begin(), order.end(), 0);
    matched.assign(nd, -1);
    taken.assign(ng, 0);

    for (std::size_t t = 0; t < num_iou; ++t) {
      detail::GreedyMatch(order, iou, ng, cfg.iou_grid[t], matched, taken);
      for (int a = 0; a < nd; ++a) {
        tp[t * n + d_begin + a] = matched[a] >= 0;
      }
    }
    if (known_pool) {
      const double thr = cfg.single_iou_for_openset;
      detail::GreedyMatch(order, iou, ng, thr, matched, taken);
      const auto unknown = gt.unknown_boxes(image);
      for (int a = 0; a < nd; ++a) {
        KnownStatus& s = status[d_begin + a];
        if (matched[a] >= 0) {
          s = KnownStatus::kTruePositive;
          continue;
        }
        for (const auto& box : unknown) {
          if (Iou(*dets[d_begin + a].box, box) >= thr) {
            s = KnownStatus::kOpenSet;
            break;
          }
        }
      }
    }
    d_begin = d_end;
    g_begin = g_end;
  }

  PoolResult result;
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::sort(rank.begin(), rank.end(), [&](int a, int b) {
    return RankBefore(dets[a].score, dets[a].index, dets[b].score,
                      dets[b].index);
  });
  if (!gts.empty()) {
    std::vector<RankedOutcome> ranked(n);
    for (std::size_t t = 0; t < num_iou; ++t) {
      for (std::size_t r = 0; r < n; ++r) {
        ranked[r] = {dets[rank[r]].score, tp[t * n + rank[r]] != 0};
      }
      result.ap_per_iou.push_back(
          *AveragePrecision(BuildPrCurve(ranked, static_cast<long>(gts.size()))));
    }
  }
  if (known_pool) {
    result.outcomes.reserve(n);
    for (int r : rank) {
      result.outcomes.push_back({dets[r].score, dets[r].index, status[r]});
    }
  }
  return result;
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

struct OpenSetEvaluation::State {
  EvalConfig config;
  std::vector<ClassId> known_classes;
  std::vector<long> pool_gt_counts;
  long total_known_gt = 0;
  std::int64_t num_detections = 0;
  std::vector<PoolResult> pools;

  // Known-labeled detections in rank order with prefix counts:
  // prefix_*[i] counts outcomes among the first i.
  std::vector<KnownOutcome> ranked_known;
  std::vector<std::int64_t> prefix_tp;
  std::vector<std::int64_t> prefix_fp;
  std::vector<std::int64_t> prefix_ose;

  OperatingPointStats StatsAtCount(double threshold, std::size_t count) const {
    OperatingPointStats s;
    s.conf_threshold = threshold;
    s.tp_known = prefix_tp[count];
    s.fp_known = prefix_fp[count];
    s.aose = prefix_ose[count];
    s.recall_known = total_known_gt > 0
                         ? static_cast<double>(s.tp_known) /
                               static_cast<double>(total_known_gt)
                         : 0.0;
    const auto tp = static_cast<double>(s.tp_known);
    const auto closed = static_cast<double>(s.tp_known + s.fp_known);
    const auto open = static_cast<double>(s.tp_known + s.fp_known + s.aose);
    if (closed > 0) {
      s.precision_closed = tp / closed;
      s.wi = static_cast<double>(s.aose) / closed;
    }
    if (open > 0) s.precision_open = tp / open;
    return s;
  }

  std::size_t CountAtOrAbove(double threshold) const {
    // ranked_known is sorted by descending score.
    auto it = std::partition_point(
        ranked_known.begin(), ranked_known.end(),
        [&](const KnownOutcome& o) { return o.score >= threshold; });
    return static_cast<std::size_t>(it - ranked_known.begin());
  }
};

OpenSetEvaluation::OpenSetEvaluation(std::span<const Detection> detections,
                                     const EvalGroundTruth& gt,
                                     const EvalConfig& config, int threads)
    : state_(std::make_unique<State>()) {
  config.Validate();
  State& s = *state_;
  s.config = config;
  s.known_classes = gt.known_classes();
  s.total_known_gt = gt.total_known_gt();
  for (int p = 0; p < gt.num_pools(); ++p) s.pool_gt_counts.push_back(gt.num_gt(p));

  const auto buckets =
      BucketDetections(detections, gt, config.max_dets_per_image);
  for (const auto& b : buckets) s.num_detections += static_cast<std::int64_t>(b.size());

  s.pools.resize(gt.num_pools());
  ParallelFor(gt.num_pools(), threads, [&](int p) {
    s.pools[p] = EvaluatePool(p, buckets[p], gt, config);
  });

  for (int p = 0; p < gt.unknown_pool(); ++p) {
    const auto& o = s.pools[p].outcomes;
    s.ranked_known.insert(s.ranked_known.end(), o.begin(), o.end());
  }
  std::sort(s.ranked_known.begin(), s.ranked_known.end(),
            [](const KnownOutcome& a, const KnownOutcome& b) {
              return RankBefore(a.score, a.index, b.score, b.index);
            });
  const std::size_t n = s.ranked_known.size();
  s.prefix_tp.assign(n + 1, 0);
  s.prefix_fp.assign(n + 1, 0);
  s.prefix_ose.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const KnownStatus st = s.ranked_known[i].status;
    s.prefix_tp[i + 1] = s.prefix_tp[i] + (st == KnownStatus::kTruePositive);
    s.prefix_fp[i + 1] = s.prefix_fp[i] + (st == KnownStatus::kFalsePositive);
    s.prefix_ose[i + 1] = s.prefix_ose[i] + (st == KnownStatus::kOpenSet);
  }
}

OpenSetEvaluation::~OpenSetEvaluation() = default;
OpenSetEvaluation::OpenSetEvaluation(OpenSetEvaluation&&) noexcept = default;
OpenSetEvaluation& OpenSetEvaluation::operator=(OpenSetEvaluation&&) noexcept =
    default;

KnownApResult OpenSetEvaluation::ApKnown() const {
  const State& s = *state_;
  if (s.total_known_gt == 0) {
    throw EvalError("AP_known undefined: no known-class ground truth");
  }
  KnownApResult out;
  std::vector<double> aps;
  for (std::size_t p = 0; p < s.known_classes.size(); ++p) {
    const auto& per_iou = s.pools[p].ap_per_iou;
    if (per_iou.empty()) continue;
    const double ap = Mean(per_iou);
    out.per_class.push_back({s.known_classes[p], ap});
    aps.push_back(ap);
  }
  out.map_known = Mean(aps);
  return out;
}

std::optional<double> OpenSetEvaluation::ApUnknown() const {
  const auto& per_iou = state_->pools.back().ap_per_iou;
  if (per_iou.empty()) return std::nullopt;
  return Mean(per_iou);
}

std::int64_t OpenSetEvaluation::AOse() const {
  return OperatingPoint(state_->config.aose_conf_threshold).aose;
}

OperatingPointStats OpenSetEvaluation::OperatingPoint(
    double conf_threshold) const {
  return state_->StatsAtCount(conf_threshold,
                              state_->CountAtOrAbove(conf_threshold));
}

WildernessImpactResult OpenSetEvaluation::WildernessImpact() const {
  const State& s = *state_;
  const double target = s.config.wi_recall_target;
  const auto& ranked = s.ranked_known;
  // Walk distinct scores from the highest; a threshold at score v admits
  // every detection scoring >= v, i.e. the whole tie group.
  for (std::size_t i = 0; i < ranked.size();) {
    std::size_t end = i;
    while (end < ranked.size() && ranked[end].score == ranked[i].score) ++end;
    OperatingPointStats stats = s.StatsAtCount(ranked[i].score, end);
    if (s.total_known_gt > 0 && stats.recall_known >= target) {
      return {*stats.wi, stats};
    }
    i = end;
  }
  throw RecallUnreachableError(target, MaxRecallKnown());
}

std::vector<OperatingPointStats> OpenSetEvaluation::Sweep(
    std::span<const double> thresholds) const {
  std::vector<OperatingPointStats> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) out.push_back(OperatingPoint(t));
  return out;
}

double OpenSetEvaluation::MaxRecallKnown() const {
  const State& s = *state_;
  if (s.total_known_gt == 0) return 0.0;
  return static_cast<double>(s.prefix_tp.back()) /
         static_cast<double>(s.total_known_gt);
}

MetricsReport OpenSetEvaluation::Report() const {
  const State& s = *state_;
  MetricsReport r;
  r.config = s.config;
  const KnownApResult known = ApKnown();
  r.ap_known_per_class = known.per_class;
  r.map_known = known.map_known;
  r.ap_unk = ApUnknown();
  r.aose = AOse();
  r.max_recall_known = MaxRecallKnown();
  try {
    const auto wi = WildernessImpact();
    r.wi = wi.wi;
    r.wi_threshold = wi.at.conf_threshold;
  } catch (const RecallUnreachableError&) {
  }
  r.sweep = Sweep(s.config.sweep_thresholds);
  r.num_known_gt = s.total_known_gt;
  r.num_unknown_gt = s.pool_gt_counts.back();
  r.num_detections = s.num_detections;
  return r;
}

KnownApResult ApKnown(std::span<const Detection> dets,
                      const DatasetView& gt_view, const EvalConfig& cfg) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg).ApKnown();
}

std::optional<double> ApUnknown(std::span<const Detection> dets,
                                const DatasetView& gt_view,
                                const EvalConfig& cfg) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg).ApUnknown();
}

std::int64_t AOse(std::span<const Detection> dets, const DatasetView& gt_view,
                  const EvalConfig& cfg) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg).AOse();
}

OperatingPointStats OperatingPoint(std::span<const Detection> dets,
                                   const DatasetView& gt_view,
                                   double conf_threshold,
                                   const EvalConfig& cfg) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg)
      .OperatingPoint(conf_threshold);
}

double WildernessImpact(std::span<const Detection> dets,
                        const DatasetView& gt_view, const EvalConfig& cfg) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg)
      .WildernessImpact()
      .wi;
}

std::vector<OperatingPointStats> SweepOperatingPoints(
    std::span<const Detection> dets, const DatasetView& gt_view,
    std::span<const double> thresholds, const EvalConfig& cfg) {
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (thresholds[i] < thresholds[i - 1]) {
      throw ConfigError("sweep thresholds must be sorted ascending");
    }
  }
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg)
      .Sweep(thresholds);
}

MetricsReport Evaluate(std::span<const Detection> dets,
                       const DatasetView& gt_view, const EvalConfig& cfg,
                       int threads) {
  return OpenSetEvaluation(dets, EvalGroundTruth(gt_view), cfg, threads)
      .Report();
}

}  // namespace osod
