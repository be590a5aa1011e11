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
#include <string>
#include <string_view>

#include "json.hpp"
#include "osod/dataset/types.hpp"
#include "osod/eval/config.hpp"
#include "osod/eval/metrics.hpp"

namespace osod {

// Structured JSON document; per-class APs are keyed by class name. Absent
// values are written as null. Output is a pure function of the inputs.
std::string SerializeMetricsReport(const MetricsReport& report,
                                   const ClassTaxonomy& taxonomy);

// Header `threshold,aose,wi,tp,fp,recall`, one line per point. Reals use the
// shortest representation that round-trips; an absent WI is an empty field.
std::string SweepCsv(std::span<const OperatingPointStats> sweep);

nlohmann::ordered_json EvalConfigToJson(const EvalConfig& config);
// Fields present in `overrides` replace those of `base`; unknown keys are a
// ConfigError. The result is validated.
EvalConfig ApplyEvalConfigOverrides(const nlohmann::json& overrides,
                                    EvalConfig base = {});

}  // namespace osod
