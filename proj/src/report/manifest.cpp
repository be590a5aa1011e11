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

#include "osod/report/manifest.hpp"

#include <set>

#include <fmt/format.h>

#include "osod/error.hpp"
#include "osod/eval/report.hpp"
#include "osod/json_util.hpp"

namespace osod {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void CheckName(const std::string& name, const std::string& where) {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos ||
      name == "." || name == ".." || name.find("__") != std::string::npos) {
    throw ConfigError(fmt::format(
        "{}: name '{}' must be non-empty, without path separators or '__'",
        where, name));
  }
}

std::string Str(const json& obj, const char* key, const std::string& where) {
  try {
    return json_util::RequireString(obj, key, where);
  } catch (const SchemaError& e) {
    throw ConfigError(e.what());
  }
}

BaselineConfig ParseBaseline(const json& j, const std::string& where,
                             std::optional<double>& cross_nms) {
  BaselineConfig cfg;
  if (!j.is_object()) throw ConfigError(where + ": must be an object");
  for (const auto& [key, value] : j.items()) {
    const bool number = value.is_number();
    if (key == "gamma" && number) {
      cfg.gamma = value.get<double>();
    } else if (key == "temperature" && number) {
      cfg.temperature = value.get<double>();
    } else if (key == "top_m" && value.is_number_integer()) {
      cfg.top_m = value.get<int>();
    } else if (key == "cross_nms" && number) {
      cross_nms = value.get<double>();
    } else {
      throw ConfigError(
          fmt::format("{}: unknown or mistyped key '{}'", where, key));
    }
  }
  try {
    cfg.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", where, e.what()));
  }
  return cfg;
}

}  // namespace

fs::path ManifestMethod::DetectionsFor(const std::string& split) const {
  if (auto it = detections.find(split); it != detections.end()) {
    return it->second;
  }
  if (detections_template.empty()) {
    throw ConfigError(fmt::format(
        "method '{}' declares no detections for split '{}'", name, split));
  }
  std::string path = detections_template;
  const std::string token = "{split}";
  for (auto pos = path.find(token); pos != std::string::npos;
       pos = path.find(token, pos + split.size())) {
    path.replace(pos, token.size(), split);
  }
  return path;
}

RunManifest ParseManifest(std::string_view source, const fs::path& base_dir) {
  const json doc = json_util::Parse(source);
  if (!doc.is_object()) throw ConfigError("manifest must be an object");
  RunManifest m;
  m.dataset = Resolve(base_dir, Str(doc, "dataset", "manifest"));
  if (doc.contains("dataset_format")) {
    const std::string f = Str(doc, "dataset_format", "manifest");
    if (f == "native") {
      m.dataset_format = GroundTruthFormat::kNative;
    } else if (f == "coco") {
      m.dataset_format = GroundTruthFormat::kCocoLike;
    } else {
      throw ConfigError(fmt::format(
          "manifest: dataset_format '{}' (expected native or coco)", f));
    }
  }

  if (!doc.contains("splits") || !doc["splits"].is_array() ||
      doc["splits"].empty()) {
    throw ConfigError("manifest: 'splits' must be a non-empty array");
  }
  std::set<std::string> split_names;
  for (std::size_t i = 0; i < doc["splits"].size(); ++i) {
    const json& s = doc["splits"][i];
    const std::string where = fmt::format("manifest splits[{}]", i);
    if (!s.is_object()) throw ConfigError(where + ": must be an object");
    ManifestSplit split{Str(s, "name", where),
                        Resolve(base_dir, Str(s, "path", where))};
    CheckName(split.name, where);
    if (!split_names.insert(split.name).second) {
      throw ConfigError(
          fmt::format("{}: duplicate split name '{}'", where, split.name));
    }
    m.splits.push_back(std::move(split));
  }

  if (!doc.contains("methods") || !doc["methods"].is_array() ||
      doc["methods"].empty()) {
    throw ConfigError("manifest: 'methods' must be a non-empty array");
  }
  std::set<std::string> method_names;
  for (std::size_t i = 0; i < doc["methods"].size(); ++i) {
    const json& j = doc["methods"][i];
    const std::string where = fmt::format("manifest methods[{}]", i);
    if (!j.is_object()) throw ConfigError(where + ": must be an object");
    ManifestMethod method;
    method.name = Str(j, "name", where);
    CheckName(method.name, where);
    if (!method_names.insert(method.name).second) {
      throw ConfigError(
          fmt::format("{}: duplicate method name '{}'", where, method.name));
    }
    const std::string kind = j.contains("kind") ? Str(j, "kind", where) : "labeled";
    if (kind == "labeled") {
      method.kind = MethodKind::kLabeled;
    } else if (kind == "raw") {
      method.kind = MethodKind::kRaw;
    } else {
      throw ConfigError(fmt::format(
          "{}: kind '{}' (expected labeled or raw)", where, kind));
    }
    if (!j.contains("detections")) {
      throw ConfigError(where + ": missing 'detections'");
    }
    const json& d = j["detections"];
    if (d.is_string()) {
      method.detections_template =
          Resolve(base_dir, d.get<std::string>()).string();
    } else if (d.is_object()) {
      for (const auto& [split, path] : d.items()) {
        if (!split_names.count(split)) {
          throw ConfigError(fmt::format(
              "{}: detections for undeclared split '{}'", where, split));
        }
        if (!path.is_string()) {
          throw ConfigError(fmt::format(
              "{}: detections path for '{}' must be a string", where, split));
        }
        method.detections[split] = Resolve(base_dir, path.get<std::string>());
      }
      for (const auto& s : m.splits) {
        if (!method.detections.count(s.name)) {
          throw ConfigError(fmt::format(
              "{}: no detections for split '{}'", where, s.name));
        }
      }
    } else {
      throw ConfigError(
          where + ": 'detections' must be a path template or an object");
    }
    if (j.contains("baseline")) {
      method.baseline =
          ParseBaseline(j["baseline"], where + " baseline", method.cross_nms_iou);
    }
    m.methods.push_back(std::move(method));
  }

  m.eval = ApplyEvalConfigOverrides(doc.contains("eval") ? doc["eval"] : json());
  m.output_dir = Resolve(base_dir, doc.contains("output_dir")
                                       ? Str(doc, "output_dir", "manifest")
                                       : std::string("osod_out"));
  return m;
}

RunManifest LoadManifest(const fs::path& path) {
  return ParseManifest(ReadFile(path), path.parent_path());
}

}  // namespace osod
