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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osod/error.hpp"
#include "osod/eval/metrics.hpp"
#include "osod/report/aggregate.hpp"
#include "osod/report/manifest.hpp"

namespace osod {

struct RunOptions {
  int threads = 1;
  TableFormat format = TableFormat::kMarkdown;
  // Replaces the manifest's output directory when set.
  std::optional<std::filesystem::path> output_dir;
};

struct CellError {
  std::string method;
  std::string split;
  ErrorKind kind;
  std::string message;
};

struct RunResult {
  std::vector<AggregateRow> rows;  // manifest method order
  std::string table;               // empty when any cell failed
  std::vector<CellError> errors;   // manifest order
  std::vector<std::filesystem::path> written;
};

// Evaluates every (method, split) pair, in parallel across pairs. Writes
//   reports/<method>__<split>.json
//   sweeps/<method>__<split>.csv      (when the sweep is enabled)
//   table_<super_class>.<ext>         (only when every pair succeeded)
// under the output directory, each file atomically. Failures of the
// dataset or a split file throw; failures of a single pair are collected.
RunResult RunEval(const RunManifest& manifest, const RunOptions& options);

// Writes SweepCsv(stats). Throws ConfigError for an empty list and IoError
// when the file cannot be written.
void ExportSweep(std::span<const OperatingPointStats> stats,
                 const std::filesystem::path& path);

}  // namespace osod
