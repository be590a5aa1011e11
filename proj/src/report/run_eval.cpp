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

#include "osod/report/run_eval.hpp"

#include <cctype>

#include <fmt/format.h>

#include "osod/dataset/io.hpp"
#include "osod/eval/ground_truth_index.hpp"
#include "osod/eval/report.hpp"
#include "osod/parallel.hpp"
#include "osod/splits/split_spec.hpp"

namespace osod {
namespace {

namespace fs = std::filesystem;

struct CellOutcome {
  std::optional<MetricsReport> report;
  std::optional<CellError> error;
  std::vector<fs::path> written;
};

std::string FileSafe(const std::string& text) {
  std::string out;
  for (unsigned char c : text) {
    out += std::isalnum(c) || c == '-' || c == '_' ? static_cast<char>(c) : '_';
  }
  return out.empty() ? "all" : out;
}

std::vector<Detection> LoadDetections(const ManifestMethod& method,
                                      const fs::path& path,
                                      const EvalGroundTruth& gt) {
  const std::string source = ReadFile(path);
  const DetectionSchema schema{&gt.taxonomy(), gt.known_classes()};
  std::vector<Detection> dets;
  try {
    if (method.kind == MethodKind::kRaw) {
      const auto raw = ParseRawPredictions(source, schema);
      dets = RelabelAll(raw, method.baseline, gt.known_classes());
    } else {
      dets = ParseLabeledDetections(source, schema);
    }
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), e.line(),
                     e.column());
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (method.cross_nms_iou) dets = CrossLabelNms(dets, *method.cross_nms_iou);
  return dets;
}

}  // namespace

void ExportSweep(std::span<const OperatingPointStats> stats,
                 const fs::path& path) {
  if (stats.empty()) throw ConfigError("cannot export an empty sweep");
  WriteFileAtomic(path, SweepCsv(stats));
}

RunResult RunEval(const RunManifest& manifest, const RunOptions& options) {
  const fs::path out_dir = options.output_dir.value_or(manifest.output_dir);
  const ParsedDataset dataset =
      ParseGroundTruth(ReadFile(manifest.dataset), manifest.dataset_format);
  const ClassTaxonomy& taxonomy = dataset.view.taxonomy;

  std::vector<EvalGroundTruth> ground_truth;
  ground_truth.reserve(manifest.splits.size());
  for (const auto& split : manifest.splits) {
    DatasetView view = dataset.view;
    try {
      view.split = ParseSplitSpec(ReadFile(split.path), taxonomy);
    } catch (const SchemaError& e) {
      throw SchemaError(fmt::format("{}: {}", split.path.string(), e.what()));
    }
    ground_truth.emplace_back(view);
  }

  fs::create_directories(out_dir / "reports");
  if (!manifest.eval.sweep_thresholds.empty()) {
    fs::create_directories(out_dir / "sweeps");
  }

  const std::size_t num_splits = manifest.splits.size();
  const std::size_t cells = manifest.methods.size() * num_splits;
  std::vector<CellOutcome> outcomes(cells);
  ParallelFor(static_cast<int>(cells), options.threads, [&](int c) {
    const ManifestMethod& method = manifest.methods[c / num_splits];
    const ManifestSplit& split = manifest.splits[c % num_splits];
    CellOutcome& out = outcomes[c];
    try {
      const auto dets = LoadDetections(method, method.DetectionsFor(split.name),
                                       ground_truth[c % num_splits]);
      MetricsReport report =
          OpenSetEvaluation(dets, ground_truth[c % num_splits], manifest.eval)
              .Report();
      const std::string stem = method.name + "__" + split.name;
      const fs::path report_path = out_dir / "reports" / (stem + ".json");
      WriteFileAtomic(report_path, SerializeMetricsReport(report, taxonomy));
      out.written.push_back(report_path);
      if (!report.sweep.empty()) {
        const fs::path sweep_path = out_dir / "sweeps" / (stem + ".csv");
        ExportSweep(report.sweep, sweep_path);
        out.written.push_back(sweep_path);
      }
      out.report = std::move(report);
    } catch (const Error& e) {
      out.error = CellError{method.name, split.name, e.kind(), e.what()};
    } catch (const fs::filesystem_error& e) {
      out.error = CellError{method.name, split.name, ErrorKind::kIo, e.what()};
    }
  });

  RunResult result;
  for (std::size_t m = 0; m < manifest.methods.size(); ++m) {
    std::vector<SplitScores> scores;
    for (std::size_t s = 0; s < num_splits; ++s) {
      CellOutcome& out = outcomes[m * num_splits + s];
      result.written.insert(result.written.end(), out.written.begin(),
                            out.written.end());
      if (out.error) {
        result.errors.push_back(*out.error);
        continue;
      }
      SplitScores sc{manifest.splits[s].name, out.report->map_known * 100.0,
                     std::nullopt};
      if (out.report->ap_unk) sc.ap_unk = *out.report->ap_unk * 100.0;
      scores.push_back(std::move(sc));
    }
    result.rows.push_back(
        MakeAggregateRow(manifest.methods[m].name, std::move(scores)));
  }
  if (result.errors.empty()) {
    result.table = RenderTable(result.rows, options.format);
    const fs::path table_path =
        out_dir / fmt::format("table_{}.{}", FileSafe(taxonomy.super_class()),
                              FileExtension(options.format));
    WriteFileAtomic(table_path, result.table);
    result.written.push_back(table_path);
  }
  return result;
}

}  // namespace osod
