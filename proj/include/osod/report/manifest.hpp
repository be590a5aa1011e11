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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osod/baseline/baseline.hpp"
#include "osod/dataset/io.hpp"
#include "osod/eval/config.hpp"

namespace osod {

enum class MethodKind {
  kLabeled,  // detections already carry known/unknown labels
  kRaw,      // per-class scores, relabeled by the ratio baseline
};

struct ManifestSplit {
  std::string name;
  std::filesystem::path path;
};

struct ManifestMethod {
  std::string name;
  MethodKind kind = MethodKind::kLabeled;
  // Either one path per split, or a template in which "{split}" is replaced
  // by the split name.
  std::map<std::string, std::filesystem::path> detections;
  std::string detections_template;
  BaselineConfig baseline;
  std::optional<double> cross_nms_iou;

  std::filesystem::path DetectionsFor(const std::string& split) const;
};

struct RunManifest {
  std::filesystem::path dataset;
  GroundTruthFormat dataset_format = GroundTruthFormat::kNative;
  std::vector<ManifestSplit> splits;
  std::vector<ManifestMethod> methods;
  EvalConfig eval;
  std::filesystem::path output_dir;
};

// Relative paths resolve against `base_dir`. Throws ParseError or
// ConfigError naming the offending entry; method and split names must be
// unique and usable as file names.
RunManifest ParseManifest(std::string_view source,
                          const std::filesystem::path& base_dir);
RunManifest LoadManifest(const std::filesystem::path& path);

}  // namespace osod
