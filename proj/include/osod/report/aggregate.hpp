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
#include <string>
#include <string_view>
#include <vector>

namespace osod {

// AP values in percent (AP x 100).
struct SplitScores {
  std::string split;
  std::optional<double> ap_known;
  std::optional<double> ap_unk;
};

struct MeanStd {
  double mean;
  double std;  // population, divisor n
};

struct AggregateRow {
  std::string method;
  std::vector<SplitScores> splits;
  // Over the splits where the value is present; absent when none is.
  std::optional<MeanStd> ap_known;
  std::optional<MeanStd> ap_unk;
};

std::optional<MeanStd> PopulationMeanStd(std::span<const double> values);

AggregateRow MakeAggregateRow(std::string method,
                              std::vector<SplitScores> splits);

enum class TableFormat { kMarkdown, kCsv, kJson };
TableFormat ParseTableFormat(std::string_view text);
const char* FileExtension(TableFormat format);

// Columns: method, (AP_known, AP_unk) per split, then the mean pair.
// Markdown shows one decimal and "mean±std"; CSV and JSON carry every value
// at full precision. Absent values: "-" (markdown), empty (CSV), null
// (JSON). Throws ConfigError when rows disagree on their split names.
std::string RenderTable(std::span<const AggregateRow> rows, TableFormat format);

// One decimal, rounding half away from zero on the shortest decimal
// representation of `value`: 37.55 -> "37.6", -0.25 -> "-0.3".
std::string FormatOneDecimal(double value);

}  // namespace osod
