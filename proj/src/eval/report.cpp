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

#include "osod/eval/report.hpp"

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json OptionalToJson(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json StatsToJson(const OperatingPointStats& s) {
  ordered_json j;
  j["threshold"] = s.conf_threshold;
  j["tp"] = s.tp_known;
  j["fp"] = s.fp_known;
  j["aose"] = s.aose;
  j["recall"] = s.recall_known;
  j["precision_closed"] = OptionalToJson(s.precision_closed);
  j["precision_open"] = OptionalToJson(s.precision_open);
  j["wi"] = OptionalToJson(s.wi);
  return j;
}

std::vector<double> RealList(const nlohmann::json& value, const char* key) {
  if (!value.is_array()) {
    throw ConfigError(fmt::format("eval config: '{}' must be an array", key));
  }
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) {
      throw ConfigError(
          fmt::format("eval config: '{}' must contain only numbers", key));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

double Real(const nlohmann::json& value, const char* key) {
  if (!value.is_number()) {
    throw ConfigError(fmt::format("eval config: '{}' must be a number", key));
  }
  return value.get<double>();
}

}  // namespace

nlohmann::ordered_json EvalConfigToJson(const EvalConfig& c) {
  ordered_json j;
  j["iou_grid"] = c.iou_grid;
  j["aose_conf_threshold"] = c.aose_conf_threshold;
  j["wi_recall_target"] = c.wi_recall_target;
  j["single_iou_for_openset"] = c.single_iou_for_openset;
  j["max_dets_per_image"] = c.max_dets_per_image;
  j["sweep_thresholds"] = c.sweep_thresholds;
  return j;
}

EvalConfig ApplyEvalConfigOverrides(const nlohmann::json& overrides,
                                    EvalConfig base) {
  if (overrides.is_null()) {
    base.Validate();
    return base;
  }
  if (!overrides.is_object()) {
    throw ConfigError("eval config must be an object");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (key == "iou_grid") {
      base.iou_grid = RealList(value, "iou_grid");
    } else if (key == "sweep_thresholds") {
      base.sweep_thresholds = RealList(value, "sweep_thresholds");
    } else if (key == "aose_conf_threshold") {
      base.aose_conf_threshold = Real(value, "aose_conf_threshold");
    } else if (key == "wi_recall_target") {
      base.wi_recall_target = Real(value, "wi_recall_target");
    } else if (key == "single_iou_for_openset") {
      base.single_iou_for_openset = Real(value, "single_iou_for_openset");
    } else if (key == "max_dets_per_image") {
      if (!value.is_number_integer()) {
        throw ConfigError("eval config: 'max_dets_per_image' must be an integer");
      }
      base.max_dets_per_image = value.get<int>();
    } else {
      throw ConfigError(fmt::format("eval config: unknown key '{}'", key));
    }
  }
  base.Validate();
  return base;
}

std::string SerializeMetricsReport(const MetricsReport& r,
                                   const ClassTaxonomy& taxonomy) {
  ordered_json j;
  ordered_json per_class = ordered_json::object();
  for (const auto& c : r.ap_known_per_class) {
    per_class[taxonomy.name(c.class_id)] = c.ap;
  }
  j["ap_known_per_class"] = std::move(per_class);
  j["map_known"] = r.map_known;
  j["ap_unk"] = OptionalToJson(r.ap_unk);
  j["aose"] = r.aose;
  j["wi"] = OptionalToJson(r.wi);
  j["wi_threshold"] = OptionalToJson(r.wi_threshold);
  j["max_recall_known"] = r.max_recall_known;
  j["num_known_gt"] = r.num_known_gt;
  j["num_unknown_gt"] = r.num_unknown_gt;
  j["num_detections"] = r.num_detections;
  ordered_json sweep = ordered_json::array();
  for (const auto& s : r.sweep) sweep.push_back(StatsToJson(s));
  j["sweep"] = std::move(sweep);
  j["config"] = EvalConfigToJson(r.config);
  return j.dump(2) + "\n";
}

std::string SweepCsv(std::span<const OperatingPointStats> sweep) {
  std::string out = "threshold,aose,wi,tp,fp,recall\n";
  for (const auto& s : sweep) {
    out += fmt::format("{},{},{},{},{},{}\n", s.conf_threshold, s.aose,
                       s.wi ? fmt::format("{}", *s.wi) : std::string(),
                       s.tp_known, s.fp_known, s.recall_known);
  }
  return out;
}

}  // namespace osod
