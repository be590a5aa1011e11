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

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "osod/error.hpp"
#include "osod/eval/metrics.hpp"
#include "osod/eval/report.hpp"
#include "synthetic.hpp"

namespace osod {
namespace {

// Classes 0 and 1 known, 2 unknown, 3 neither. Images img0..img{n-1}, all
// test images.
class Scene {
 public:
  explicit Scene(int num_images = 1) {
    view_ = DatasetView{testing::NumberedTaxonomy(4), {}, {}, SplitSpec{}};
    view_.split->name = "scene";
    view_.split->known_classes = {0, 1};
    view_.split->unknown_classes = {2};
    for (int i = 0; i < num_images; ++i) {
      const std::string id = "img" + std::to_string(i);
      view_.images.push_back({id, 0, 0, std::nullopt});
      view_.split->test_images.push_back(id);
    }
  }
  // Box i on image `img`: [10 i, 0, 10 i + 8, 8]; distinct i never overlap.
  static BoundingBox Slot(int i) { return BoundingBox(10 * i, 0, 10 * i + 8, 8); }

  Scene& Gt(int slot, ClassId c, int img = 0) {
    view_.instances.push_back({"img" + std::to_string(img), Slot(slot), c});
    return *this;
  }
  Scene& Det(int slot, DetectionLabel label, double score, int img = 0) {
    dets_.push_back({"img" + std::to_string(img), Slot(slot), label, score});
    return *this;
  }
  const DatasetView& view() const { return view_; }
  const std::vector<Detection>& dets() const { return dets_; }

 private:
  DatasetView view_;
  std::vector<Detection> dets_;
};

const DetectionLabel kUnk = DetectionLabel::Unknown();
DetectionLabel K(ClassId c) { return DetectionLabel::Known(c); }

TEST(ApKnownTest, PerfectClosedSet) {
  Scene s;
  s.Gt(0, 0).Gt(1, 1).Det(0, K(0), 0.9).Det(1, K(1), 0.8);
  const KnownApResult r = ApKnown(s.dets(), s.view(), {});
  EXPECT_DOUBLE_EQ(r.map_known, 1.0);
  ASSERT_EQ(r.per_class.size(), 2u);
}

TEST(ApKnownTest, KnownDetectionOnUnknownObjectIsFalsePositive) {
  Scene s;
  s.Gt(0, 0).Gt(1, 2).Det(1, K(0), 0.95).Det(0, K(0), 0.9);
  // Ranked: FP then TP over one GT: precision 0.5 at recall 1.
  EXPECT_NEAR(ApKnown(s.dets(), s.view(), {}).map_known, 0.5, 1e-12);
}

TEST(ApKnownTest, ClassesWithoutGroundTruthExcluded) {
  Scene s;
  s.Gt(0, 0).Det(0, K(0), 0.9).Det(3, K(1), 0.9);
  const KnownApResult r = ApKnown(s.dets(), s.view(), {});
  ASSERT_EQ(r.per_class.size(), 1u);
  EXPECT_EQ(r.per_class[0].class_id, 0);
  EXPECT_DOUBLE_EQ(r.map_known, 1.0);
}

TEST(ApKnownTest, NoKnownGroundTruthIsError) {
  Scene s;
  s.Gt(0, 2).Det(0, K(0), 0.9);
  EXPECT_THROW(ApKnown(s.dets(), s.view(), {}), EvalError);
}

TEST(ApKnownTest, LabelOutsideKnownSetIsConfigError) {
  Scene s;
  s.Gt(0, 0).Det(0, K(2), 0.9);
  EXPECT_THROW(ApKnown(s.dets(), s.view(), {}), ConfigError);
}

TEST(ApUnknownTest, ExactCoverage) {
  Scene s;
  s.Gt(0, 2).Gt(1, 2).Gt(2, 0).Det(0, kUnk, 2.1).Det(1, kUnk, 0.3);
  EXPECT_DOUBLE_EQ(*ApUnknown(s.dets(), s.view(), {}), 1.0);
}

TEST(ApUnknownTest, UnknownDetectionOnKnownObjectIsFalsePositive) {
  Scene s;
  s.Gt(0, 2).Gt(1, 0).Det(1, kUnk, 0.9).Det(0, kUnk, 0.8);
  EXPECT_NEAR(*ApUnknown(s.dets(), s.view(), {}), 0.5, 1e-12);
}

TEST(ApUnknownTest, AbsentWithoutUnknownGroundTruth) {
  Scene s;
  s.Gt(0, 0).Det(0, kUnk, 0.9);
  EXPECT_FALSE(ApUnknown(s.dets(), s.view(), {}).has_value());
}

TEST(ApUnknownTest, MixedToySetMatchesOracle) {
  // Five unknown objects; six Unknown detections: four hits, a duplicate of
  // slot 0 and a stray on empty slot 9.
  Scene s;
  for (int i = 0; i < 5; ++i) s.Gt(i, 2);
  s.Det(0, kUnk, 0.9).Det(0, kUnk, 0.85).Det(1, kUnk, 0.8).Det(9, kUnk, 0.7);
  s.Det(2, kUnk, 0.6).Det(3, kUnk, 0.5);
  const double ap = *ApUnknown(s.dets(), s.view(), {});
  EXPECT_NEAR(ap, *testing::OracleEvaluator(s.view(), s.dets()).ApUnknown(), 1e-12);
  // Prefix recalls 0.2,0.2,0.4,0.4,0.6,0.8 with precisions 1,.5,.667,.5,.6,.667.
  const double expected = (21 * 1.0 + 20 * (2.0 / 3) + 20 * (2.0 / 3) + 20 * (2.0 / 3)) / 101;
  EXPECT_NEAR(ap, expected, 1e-12);
}

TEST(AOseTest, Examples) {
  Scene s;
  s.Gt(0, 2).Det(0, K(0), 0.9);
  EXPECT_EQ(AOse(s.dets(), s.view(), {}), 1);

  Scene low;
  low.Gt(0, 2).Det(0, K(0), 0.04);
  EXPECT_EQ(AOse(low.dets(), low.view(), {}), 0);

  Scene tp;
  tp.Gt(0, 0).Gt(0, 2).Det(0, K(0), 0.9);
  EXPECT_EQ(AOse(tp.dets(), tp.view(), {}), 0);
}

TEST(AOseTest, CountsDetectionsNotObjects) {
  Scene s;
  s.Gt(0, 2).Det(0, K(0), 0.9).Det(0, K(1), 0.8).Det(0, K(0), 0.7);
  EXPECT_EQ(AOse(s.dets(), s.view(), {}), 3);
}

TEST(AOseTest, ClassesOutsideSplitAreInvisible) {
  Scene s;
  s.Gt(0, 3).Det(0, K(0), 0.9);
  EXPECT_EQ(AOse(s.dets(), s.view(), {}), 0);
}

// 40 TP, 10 known detections on unknown objects: TP 40, FP 0, A-OSE 10.
Scene FortyTen() {
  Scene s;
  for (int i = 0; i < 40; ++i) s.Gt(i, 0).Det(i, K(0), 0.9 - i * 0.001);
  for (int i = 40; i < 50; ++i) s.Gt(i, 2).Det(i, K(0), 0.5);
  return s;
}

TEST(OperatingPointTest, WildernessImpactSubstitution) {
  const Scene s = FortyTen();
  const OperatingPointStats op = OperatingPoint(s.dets(), s.view(), 0.0, {});
  EXPECT_EQ(op.tp_known, 40);
  EXPECT_EQ(op.fp_known, 0);
  EXPECT_EQ(op.aose, 10);
  EXPECT_DOUBLE_EQ(*op.precision_closed, 1.0);
  EXPECT_DOUBLE_EQ(*op.precision_open, 0.8);
  EXPECT_NEAR(*op.precision_closed / *op.precision_open - 1.0, 0.25, 1e-12);
  EXPECT_DOUBLE_EQ(*op.wi, 0.25);
  EXPECT_DOUBLE_EQ(op.recall_known, 1.0);
}

TEST(OperatingPointTest, NoOpenSetErrors) {
  Scene s;
  s.Gt(0, 0).Det(0, K(0), 0.9).Det(1, K(0), 0.8);
  const OperatingPointStats op = OperatingPoint(s.dets(), s.view(), 0.0, {});
  EXPECT_EQ(*op.precision_closed, *op.precision_open);
  EXPECT_EQ(*op.wi, 0.0);
}

TEST(OperatingPointTest, ThresholdAboveAllScores) {
  const Scene s = FortyTen();
  const OperatingPointStats op = OperatingPoint(s.dets(), s.view(), 0.95, {});
  EXPECT_EQ(op.tp_known + op.fp_known + op.aose, 0);
  EXPECT_FALSE(op.precision_closed);
  EXPECT_FALSE(op.precision_open);
  EXPECT_FALSE(op.wi);
}

TEST(WildernessImpactTest, ZeroWithoutOpenSetErrors) {
  Scene s;
  s.Gt(0, 0).Det(0, K(0), 0.9);
  EXPECT_EQ(WildernessImpact(s.dets(), s.view(), {}), 0.0);
}

TEST(WildernessImpactTest, SelectsHighestThresholdReachingRecall) {
  // Five known objects. Scores: TP .9, OSE .8, TP .7, FP .6, TP .5, TP .35,
  // OSE .3, TP .2. Recall 0.8 first reached at 0.35 with TP 4, FP 1, OSE 1.
  Scene s;
  for (int i = 0; i < 5; ++i) s.Gt(i, 0);
  s.Gt(5, 2).Gt(6, 2);
  s.Det(0, K(0), 0.9).Det(5, K(0), 0.8).Det(1, K(0), 0.7).Det(8, K(0), 0.6);
  s.Det(2, K(0), 0.5).Det(3, K(0), 0.35).Det(6, K(0), 0.3).Det(4, K(0), 0.2);
  const OpenSetEvaluation eval(s.dets(), EvalGroundTruth(s.view()), {});
  const WildernessImpactResult wi = eval.WildernessImpact();
  EXPECT_EQ(wi.at.conf_threshold, 0.35);
  EXPECT_EQ(wi.at.tp_known, 4);
  EXPECT_EQ(wi.at.fp_known, 1);
  EXPECT_EQ(wi.at.aose, 1);
  EXPECT_DOUBLE_EQ(wi.wi, 0.2);
  const testing::OracleReport oracle =
      testing::OracleEvaluator(s.view(), s.dets()).Report();
  EXPECT_EQ(*oracle.wi_threshold, 0.35);
  EXPECT_DOUBLE_EQ(*oracle.wi, wi.wi);
}

TEST(WildernessImpactTest, SubstitutionGivesPointTwo) {
  // TP 40, closed-set FP 10, A-OSE 10 at the only threshold reaching recall 1.
  Scene s;
  for (int i = 0; i < 40; ++i) s.Gt(i, 0).Det(i, K(0), 0.5 - i * 0.001);
  for (int i = 40; i < 50; ++i) s.Det(i, K(1), 0.9);
  for (int i = 50; i < 60; ++i) s.Gt(i, 2).Det(i, K(0), 0.9);
  EvalConfig cfg;
  cfg.wi_recall_target = 1.0;
  EXPECT_DOUBLE_EQ(WildernessImpact(s.dets(), s.view(), cfg), 0.2);
}

TEST(WildernessImpactTest, RecallUnreachable) {
  Scene s;
  s.Gt(0, 0).Gt(1, 0).Det(0, K(0), 0.9);
  try {
    WildernessImpact(s.dets(), s.view(), {});
    FAIL() << "expected RecallUnreachableError";
  } catch (const RecallUnreachableError& e) {
    EXPECT_DOUBLE_EQ(e.max_recall(), 0.5);
  }
  const MetricsReport r = Evaluate(s.dets(), s.view(), {});
  EXPECT_FALSE(r.wi);
  EXPECT_DOUBLE_EQ(r.max_recall_known, 0.5);
}

TEST(SweepTest, SingleZeroThresholdIsUnfiltered) {
  const Scene s = FortyTen();
  const std::vector<double> zero = {0.0};
  const auto sweep = SweepOperatingPoints(s.dets(), s.view(), zero, {});
  ASSERT_EQ(sweep.size(), 1u);
  EXPECT_EQ(sweep[0].aose, 10);
  EXPECT_EQ(sweep[0].tp_known, 40);
}

TEST(SweepTest, TwentyOnePointsNonIncreasing) {
  std::mt19937_64 rng(31);
  const auto inst = testing::MakeInstance(rng, {.max_detections = 200, .max_ground_truth = 50});
  const auto grid = DefaultSweepThresholds();
  const auto sweep = SweepOperatingPoints(inst.detections, inst.view, grid, {});
  ASSERT_EQ(sweep.size(), 21u);
  const testing::OracleEvaluator oracle(inst.view, inst.detections);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const testing::OracleStats o = oracle.StatsAt(grid[i]);
    EXPECT_EQ(sweep[i].aose, o.aose);
    EXPECT_EQ(sweep[i].tp_known, o.tp);
    EXPECT_EQ(sweep[i].fp_known, o.fp);
    if (i > 0) {
      EXPECT_LE(sweep[i].aose, sweep[i - 1].aose);
    }
  }
}

TEST(SweepTest, EmptyDetectionsGiveZeroCounts) {
  Scene s;
  s.Gt(0, 0);
  for (const auto& op : SweepOperatingPoints({}, s.view(), DefaultSweepThresholds(), {})) {
    EXPECT_EQ(op.tp_known + op.fp_known + op.aose, 0);
  }
}

TEST(SweepTest, UnsortedThresholdsRejected) {
  Scene s;
  s.Gt(0, 0);
  const std::vector<double> bad = {0.5, 0.1};
  EXPECT_THROW(SweepOperatingPoints({}, s.view(), bad, {}), ConfigError);
}

TEST(EvaluateTest, PerfectOpenSetDetector) {
  Scene s;
  s.Gt(0, 0).Gt(1, 1).Gt(2, 2).Det(0, K(0), 0.9).Det(1, K(1), 0.9).Det(2, kUnk, 1.5);
  const MetricsReport r = Evaluate(s.dets(), s.view(), {});
  EXPECT_DOUBLE_EQ(r.map_known, 1.0);
  EXPECT_DOUBLE_EQ(*r.ap_unk, 1.0);
  EXPECT_EQ(r.aose, 0);
  EXPECT_EQ(*r.wi, 0.0);
  EXPECT_EQ(r.sweep.size(), 21u);
}

TEST(EvaluateTest, EmptyDetections) {
  Scene s;
  s.Gt(0, 0).Gt(1, 2);
  const MetricsReport r = Evaluate({}, s.view(), {});
  EXPECT_EQ(r.map_known, 0.0);
  EXPECT_EQ(*r.ap_unk, 0.0);
  EXPECT_EQ(r.aose, 0);
  EXPECT_FALSE(r.wi);
  EXPECT_EQ(r.num_detections, 0);
}

TEST(EvaluateTest, MatchesOracleFieldByField) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::MakeInstance(rng, {});
    bool has_known_gt = false;
    for (const auto& g : inst.view.instances) has_known_gt |= inst.view.split->is_known(g.class_id);
    if (!has_known_gt) continue;
    const MetricsReport r = Evaluate(inst.detections, inst.view, {});
    const testing::OracleReport o =
        testing::OracleEvaluator(inst.view, inst.detections).Report();
    EXPECT_NEAR(r.map_known, *o.map_known, 1e-9);
    std::size_t k = 0;
    for (const auto& ap : o.ap_known) {
      if (!ap) continue;
      ASSERT_LT(k, r.ap_known_per_class.size());
      EXPECT_NEAR(r.ap_known_per_class[k++].ap, *ap, 1e-9);
    }
    EXPECT_EQ(k, r.ap_known_per_class.size());
    EXPECT_EQ(r.ap_unk.has_value(), o.ap_unk.has_value());
    if (r.ap_unk) {
      EXPECT_NEAR(*r.ap_unk, *o.ap_unk, 1e-9);
    }
    EXPECT_EQ(r.aose, o.aose);
    EXPECT_EQ(r.wi.has_value(), o.wi.has_value());
    if (r.wi) {
      EXPECT_NEAR(*r.wi, *o.wi, 1e-12);
      EXPECT_EQ(*r.wi_threshold, *o.wi_threshold);
    }
  }
}

TEST(EvaluateTest, PerImageCap) {
  Scene s;
  s.Gt(0, 0);
  for (int i = 0; i < 5; ++i) s.Det(1, K(0), 0.9 - 0.1 * i);
  s.Det(0, K(0), 0.1);
  EvalConfig cfg;
  cfg.max_dets_per_image = 5;
  const MetricsReport r = Evaluate(s.dets(), s.view(), cfg);
  EXPECT_EQ(r.num_detections, 5);
  EXPECT_EQ(r.map_known, 0.0);
}

TEST(EvaluateTest, ImagesOutsideTestSetIgnored) {
  Scene s(2);
  s.Gt(0, 0).Det(0, K(0), 0.9).Det(0, K(0), 0.95, 1);
  DatasetView view = s.view();
  view.split->test_images = {"img0"};
  const MetricsReport r = Evaluate(s.dets(), view, {});
  EXPECT_EQ(r.num_detections, 1);
  EXPECT_DOUBLE_EQ(r.map_known, 1.0);
}

TEST(EvalConfigTest, Validation) {
  EvalConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.iou_grid.size(), 10u);
  EXPECT_EQ(cfg.iou_grid.front(), 0.5);
  EXPECT_EQ(cfg.iou_grid.back(), 0.95);
  cfg.iou_grid = {0.5, 0.5};
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.wi_recall_target = 0.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.aose_conf_threshold = 1.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(ReportTest, SweepCsvShape) {
  const Scene s = FortyTen();
  const MetricsReport r = Evaluate(s.dets(), s.view(), {});
  const std::string csv = SweepCsv(r.sweep);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 22);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "threshold,aose,wi,tp,fp,recall");
  EXPECT_NE(csv.find("\n0.05,10,0.25,40,0,1\n"), std::string::npos) << csv;
  const std::vector<OperatingPointStats> one(r.sweep.begin(), r.sweep.begin() + 1);
  EXPECT_EQ(SweepCsv(one), "threshold,aose,wi,tp,fp,recall\n0,10,0.25,40,0,1\n");
}

TEST(ReportTest, JsonNamesClassesAndNulls) {
  Scene s;
  s.Gt(0, 0).Det(0, K(0), 0.9);
  const MetricsReport r = Evaluate(s.dets(), s.view(), {});
  const std::string json = SerializeMetricsReport(r, s.view().taxonomy);
  EXPECT_NE(json.find("\"c0\": 1.0"), std::string::npos) << json;
  EXPECT_NE(json.find("\"ap_unk\": null"), std::string::npos);
}

TEST(ReportTest, ConfigOverrides) {
  const EvalConfig cfg = ApplyEvalConfigOverrides(
      nlohmann::json::parse(R"({"iou_grid": [0.5], "max_dets_per_image": 10})"));
  EXPECT_EQ(cfg.iou_grid, std::vector<double>{0.5});
  EXPECT_EQ(cfg.max_dets_per_image, 10);
  EXPECT_THROW(ApplyEvalConfigOverrides(nlohmann::json::parse(R"({"bogus": 1})")),
               ConfigError);
}

}  // namespace
}  // namespace osod
