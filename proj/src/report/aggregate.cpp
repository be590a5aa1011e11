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

#include "osod/report/aggregate.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "json.hpp"
#include "osod/error.hpp"

namespace osod {

std::optional<MeanStd> PopulationMeanStd(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return MeanStd{mean, std::sqrt(sq / n)};
}

AggregateRow MakeAggregateRow(std::string method,
                              std::vector<SplitScores> splits) {
  std::vector<double> known;
  std::vector<double> unk;
  for (const auto& s : splits) {
    if (s.ap_known) known.push_back(*s.ap_known);
    if (s.ap_unk) unk.push_back(*s.ap_unk);
  }
  AggregateRow row;
  row.method = std::move(method);
  row.splits = std::move(splits);
  row.ap_known = PopulationMeanStd(known);
  row.ap_unk = PopulationMeanStd(unk);
  return row;
}

TableFormat ParseTableFormat(std::string_view text) {
  if (text == "markdown" || text == "md") return TableFormat::kMarkdown;
  if (text == "csv") return TableFormat::kCsv;
  if (text == "json") return TableFormat::kJson;
  throw ConfigError(fmt::format(
      "unknown table format '{}' (expected markdown, csv or json)", text));
}

const char* FileExtension(TableFormat format) {
  switch (format) {
    case TableFormat::kMarkdown:
      return "md";
    case TableFormat::kCsv:
      return "csv";
    case TableFormat::kJson:
      return "json";
  }
  return "txt";
}

std::string FormatOneDecimal(double value) {
  if (!std::isfinite(value)) return fmt::format("{}", value);
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::fabs(value),
                           std::chars_format::fixed);
  std::string digits(buf, res.ptr);
  std::string whole = digits;
  std::string frac;
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    whole = digits.substr(0, dot);
    frac = digits.substr(dot + 1);
  }
  frac.resize(std::max<std::size_t>(frac.size(), 2), '0');
  // whole + first fractional digit, as a digit string to round.
  std::string kept = whole + frac[0];
  if (frac[1] >= '5') {
    int i = static_cast<int>(kept.size()) - 1;
    for (; i >= 0 && kept[i] == '9'; --i) kept[i] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
    } else {
      ++kept[i];
    }
  }
  std::string out = kept.substr(0, kept.size() - 1) + "." + kept.back();
  const bool zero = out.find_first_not_of("0.") == std::string::npos;
  if (value < 0 && !zero) out.insert(out.begin(), '-');
  return out;
}

namespace {

std::string Shortest(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::string Cell(const std::optional<double>& v) {
  return v ? FormatOneDecimal(*v) : std::string("-");
}

std::string Cell(const std::optional<MeanStd>& v) {
  if (!v) return "-";
  return FormatOneDecimal(v->mean) + "±" + FormatOneDecimal(v->std);
}

std::vector<std::string> SplitNames(std::span<const AggregateRow> rows) {
  std::vector<std::string> names;
  if (rows.empty()) return names;
  for (const auto& s : rows.front().splits) names.push_back(s.split);
  for (const auto& row : rows) {
    bool same = row.splits.size() == names.size();
    for (std::size_t i = 0; same && i < names.size(); ++i) {
      same = row.splits[i].split == names[i];
    }
    if (!same) {
      throw ConfigError(fmt::format(
          "table rows disagree on their splits (method '{}')", row.method));
    }
  }
  return names;
}

std::string Markdown(std::span<const AggregateRow> rows,
                     const std::vector<std::string>& splits) {
  std::string header = "| method |";
  std::string rule = "|---|";
  for (const auto& s : splits) {
    header += fmt::format(" {} AP_known | {} AP_unk |", s, s);
    rule += "---|---|";
  }
  header += " mean AP_known | mean AP_unk |";
  rule += "---|---|";
  std::string out = header + "\n" + rule + "\n";
  for (const auto& row : rows) {
    out += "| " + row.method + " |";
    for (const auto& s : row.splits) {
      out += " " + Cell(s.ap_known) + " | " + Cell(s.ap_unk) + " |";
    }
    out += " " + Cell(row.ap_known) + " | " + Cell(row.ap_unk) + " |\n";
  }
  return out;
}

std::string Csv(std::span<const AggregateRow> rows,
                const std::vector<std::string>& splits) {
  std::string out = "method";
  for (const auto& s : splits) {
    out += fmt::format(",{}_ap_known,{}_ap_unk", s, s);
  }
  out += ",mean_ap_known,std_ap_known,mean_ap_unk,std_ap_unk\n";
  auto mean = [](const std::optional<MeanStd>& v) {
    return v ? std::optional<double>(v->mean) : std::nullopt;
  };
  auto stdev = [](const std::optional<MeanStd>& v) {
    return v ? std::optional<double>(v->std) : std::nullopt;
  };
  for (const auto& row : rows) {
    out += row.method;
    for (const auto& s : row.splits) {
      out += "," + Shortest(s.ap_known) + "," + Shortest(s.ap_unk);
    }
    out += "," + Shortest(mean(row.ap_known)) + "," +
           Shortest(stdev(row.ap_known)) + "," + Shortest(mean(row.ap_unk)) +
           "," + Shortest(stdev(row.ap_unk)) + "\n";
  }
  return out;
}

std::string Json(std::span<const AggregateRow> rows) {
  using ordered_json = nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  auto pair = [](const std::optional<MeanStd>& v) {
    if (!v) return ordered_json(nullptr);
    ordered_json j;
    j["mean"] = v->mean;
    j["std"] = v->std;
    return j;
  };
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json j;
    j["method"] = row.method;
    ordered_json splits = ordered_json::array();
    for (const auto& s : row.splits) {
      ordered_json sj;
      sj["split"] = s.split;
      sj["ap_known"] = opt(s.ap_known);
      sj["ap_unk"] = opt(s.ap_unk);
      splits.push_back(std::move(sj));
    }
    j["splits"] = std::move(splits);
    j["ap_known"] = pair(row.ap_known);
    j["ap_unk"] = pair(row.ap_unk);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

std::string RenderTable(std::span<const AggregateRow> rows,
                        TableFormat format) {
  const auto splits = SplitNames(rows);
  switch (format) {
    case TableFormat::kMarkdown:
      return Markdown(rows, splits);
    case TableFormat::kCsv:
      return Csv(rows, splits);
    case TableFormat::kJson:
      return Json(rows);
  }
  return {};
}

}  // namespace osod
