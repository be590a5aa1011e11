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

#include "osod/dataset/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"
#include "osod/error.hpp"
#include "osod/json_util.hpp"

namespace osod {

using nlohmann::json;

namespace {

bool IsFlagSet(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return false;
  if (it->is_boolean()) return it->get<bool>();
  if (it->is_number()) return it->get<double>() != 0.0;
  return false;
}

std::optional<Subset> ParseSubset(const json& record, const std::string& where) {
  auto it = record.find("subset");
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw SchemaError(where + ": 'subset' must be a string");
  }
  const auto& s = it->get_ref<const std::string&>();
  if (s == "train") return Subset::kTrain;
  if (s == "val" || s == "validation") return Subset::kVal;
  if (s == "test") return Subset::kTest;
  throw SchemaError(fmt::format("{}: unknown subset '{}'", where, s));
}

BoundingBox BoxFromXyxy(const json& value, const std::string& where) {
  auto xyxy = json_util::FourNumbers(value, where);
  try {
    return BoundingBox::FromArray(xyxy);
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", where, e.what()));
  }
}

ParsedDataset ParseNative(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document root must be an object");
  ParsedDataset out;

  const json& tax = json_util::Require(doc, "taxonomy", "document");
  const std::string super_class =
      json_util::RequireString(tax, "super_class", "taxonomy");
  const json& classes = json_util::Require(tax, "classes", "taxonomy");
  if (!classes.is_array()) {
    throw SchemaError("taxonomy.classes must be an array of names");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!classes[i].is_string()) {
      throw SchemaError(fmt::format("taxonomy.classes[{}] must be a string", i));
    }
    names.push_back(classes[i].get<std::string>());
  }
  out.view.taxonomy = ClassTaxonomy(super_class, std::move(names));

  const json& images = json_util::Require(doc, "images", "document");
  if (!images.is_array()) throw SchemaError("'images' must be an array");
  std::unordered_map<std::string, std::size_t> image_index;
  out.view.images.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = fmt::format("images[{}]", i);
    const json& rec = images[i];
    if (!rec.is_object()) throw SchemaError(where + " must be an object");
    ImageInfo info;
    info.id = json_util::RequireId(rec, "id", where);
    info.width = json_util::OptionalNumber(rec, "width", where).value_or(0.0);
    info.height = json_util::OptionalNumber(rec, "height", where).value_or(0.0);
    info.subset = ParseSubset(rec, where);
    if (!image_index.emplace(info.id, i).second) {
      throw SchemaError(
          fmt::format("{}: duplicate image_id '{}'", where, info.id));
    }
    out.view.images.push_back(std::move(info));
  }

  auto ann_it = doc.find("annotations");
  if (ann_it == doc.end() || ann_it->is_null()) return out;
  if (!ann_it->is_array()) throw SchemaError("'annotations' must be an array");
  out.view.instances.reserve(ann_it->size());
  for (std::size_t i = 0; i < ann_it->size(); ++i) {
    const std::string where = fmt::format("annotations[{}]", i);
    const json& rec = (*ann_it)[i];
    if (!rec.is_object()) throw SchemaError(where + " must be an object");
    std::string image_id = json_util::RequireId(rec, "image_id", where);
    if (!image_index.contains(image_id)) {
      throw SchemaError(
          fmt::format("{}: unknown image_id '{}'", where, image_id));
    }
    const std::string cls = json_util::RequireString(rec, "class", where);
    auto class_id = out.view.taxonomy.find(cls);
    if (!class_id) {
      throw SchemaError(fmt::format("{}: unknown class name '{}'", where, cls));
    }
    BoundingBox box = BoxFromXyxy(json_util::Require(rec, "box", where),
                                  where + ".box");
    if (IsFlagSet(rec, "group_of") || IsFlagSet(rec, "crowd") ||
        IsFlagSet(rec, "iscrowd")) {
      out.warnings.push_back(
          {Severity::kWarning,
           fmt::format("{}: group-of/crowd annotation dropped", where)});
      continue;
    }
    out.view.instances.push_back({std::move(image_id), box, *class_id});
  }
  return out;
}

ParsedDataset ParseCoco(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document root must be an object");
  ParsedDataset out;

  const json& cats = json_util::Require(doc, "categories", "document");
  if (!cats.is_array()) throw SchemaError("'categories' must be an array");
  std::vector<std::string> names;
  std::unordered_map<std::string, ClassId> by_category_id;
  std::string super_class;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const std::string where = fmt::format("categories[{}]", i);
    const json& rec = cats[i];
    std::string cat_id = json_util::RequireId(rec, "id", where);
    names.push_back(json_util::RequireString(rec, "name", where));
    if (!by_category_id.emplace(cat_id, static_cast<ClassId>(i)).second) {
      throw SchemaError(
          fmt::format("{}: duplicate category id '{}'", where, cat_id));
    }
    auto sc = rec.find("supercategory");
    if (sc != rec.end() && sc->is_string()) {
      if (super_class.empty()) {
        super_class = sc->get<std::string>();
      } else if (super_class != sc->get<std::string>()) {
        super_class = "mixed";
      }
    }
  }
  out.view.taxonomy = ClassTaxonomy(super_class, std::move(names));

  const json& images = json_util::Require(doc, "images", "document");
  if (!images.is_array()) throw SchemaError("'images' must be an array");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = fmt::format("images[{}]", i);
    const json& rec = images[i];
    ImageInfo info;
    info.id = json_util::RequireId(rec, "id", where);
    info.width = json_util::OptionalNumber(rec, "width", where).value_or(0.0);
    info.height = json_util::OptionalNumber(rec, "height", where).value_or(0.0);
    info.subset = ParseSubset(rec, where);
    if (!seen.insert(info.id).second) {
      throw SchemaError(
          fmt::format("{}: duplicate image_id '{}'", where, info.id));
    }
    out.view.images.push_back(std::move(info));
  }

  auto ann_it = doc.find("annotations");
  if (ann_it == doc.end() || ann_it->is_null()) return out;
  if (!ann_it->is_array()) throw SchemaError("'annotations' must be an array");
  for (std::size_t i = 0; i < ann_it->size(); ++i) {
    const std::string where = fmt::format("annotations[{}]", i);
    const json& rec = (*ann_it)[i];
    std::string image_id = json_util::RequireId(rec, "image_id", where);
    if (!seen.contains(image_id)) {
      throw SchemaError(
          fmt::format("{}: unknown image_id '{}'", where, image_id));
    }
    const std::string cat = json_util::RequireId(rec, "category_id", where);
    auto cat_it = by_category_id.find(cat);
    if (cat_it == by_category_id.end()) {
      throw SchemaError(fmt::format("{}: unknown category_id '{}'", where, cat));
    }
    auto xywh = json_util::FourNumbers(json_util::Require(rec, "bbox", where),
                                       where + ".bbox");
    BoundingBox box = [&] {
      try {
        return BoundingBox::FromXywh(xywh[0], xywh[1], xywh[2], xywh[3]);
      } catch (const SchemaError& e) {
        throw SchemaError(fmt::format("{}.bbox: {}", where, e.what()));
      }
    }();
    if (IsFlagSet(rec, "iscrowd")) {
      out.warnings.push_back(
          {Severity::kWarning,
           fmt::format("{}: crowd annotation dropped", where)});
      continue;
    }
    out.view.instances.push_back({std::move(image_id), box, cat_it->second});
  }
  return out;
}

DetectionLabel ParseLabel(const std::string& label,
                          const DetectionSchema& schema,
                          const std::string& where) {
  std::string lowered = label;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lowered == "unknown") return DetectionLabel::Unknown();
  auto id = schema.taxonomy->find(label);
  if (!id) {
    throw SchemaError(fmt::format("{}: unknown class name '{}'", where, label));
  }
  if (!std::binary_search(schema.known_classes.begin(),
                          schema.known_classes.end(), *id)) {
    throw SchemaError(fmt::format(
        "{}: class '{}' is not a known class of this split", where, label));
  }
  return DetectionLabel::Known(*id);
}

const json& DetectionArray(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document root must be an object");
  const json& dets = json_util::Require(doc, "detections", "document");
  if (!dets.is_array()) throw SchemaError("'detections' must be an array");
  return dets;
}

void RequireSchema(const DetectionSchema& schema) {
  if (schema.taxonomy == nullptr) {
    throw ConfigError("detection schema has no taxonomy");
  }
}

}  // namespace

void CheckDetectionScore(double score) {
  if (!std::isfinite(score)) throw SchemaError("score must be finite");
  if (score < 0.0) {
    throw SchemaError(fmt::format("score must be non-negative, got {}", score));
  }
}

void CheckRawPrediction(const RawPrediction& pred, std::size_t num_known) {
  if (pred.values.size() != num_known) {
    throw SchemaError(fmt::format(
        "score vector has {} entries but the split has {} known classes",
        pred.values.size(), num_known));
  }
  double sum = 0.0;
  for (double v : pred.values) {
    if (!std::isfinite(v)) throw SchemaError("scores must be finite");
    if (pred.value_kind == ValueKind::kProbabilities) {
      if (v < 0.0 || v > 1.0) {
        throw SchemaError(
            fmt::format("probability {} outside [0, 1]", v));
      }
      sum += v;
    }
  }
  if (pred.value_kind == ValueKind::kProbabilities &&
      pred.head_kind == HeadKind::kSoftmax && sum > 1.0 + 1e-6) {
    throw SchemaError(
        fmt::format("softmax probabilities sum to {} (> 1)", sum));
  }
}

ParsedDataset ParseGroundTruth(std::string_view source,
                               GroundTruthFormat format) {
  const json doc = json_util::Parse(source);
  return format == GroundTruthFormat::kNative ? ParseNative(doc)
                                              : ParseCoco(doc);
}

std::string SerializeGroundTruth(const DatasetView& view) {
  json doc;
  doc["taxonomy"] = {{"super_class", view.taxonomy.super_class()},
                     {"classes", view.taxonomy.class_names()}};
  json images = json::array();
  for (const auto& img : view.images) {
    json rec = {{"id", img.id}};
    if (img.width != 0.0) rec["width"] = img.width;
    if (img.height != 0.0) rec["height"] = img.height;
    if (img.subset) rec["subset"] = ToString(*img.subset);
    images.push_back(std::move(rec));
  }
  doc["images"] = std::move(images);
  json anns = json::array();
  for (const auto& inst : view.instances) {
    anns.push_back({{"image_id", inst.image_id},
                    {"class", view.taxonomy.name(inst.class_id)},
                    {"box", inst.box.to_array()}});
  }
  doc["annotations"] = std::move(anns);
  return doc.dump(2) + "\n";
}

std::vector<Detection> ParseLabeledDetections(std::string_view source,
                                              const DetectionSchema& schema) {
  RequireSchema(schema);
  const json doc = json_util::Parse(source);
  const json& dets = DetectionArray(doc);
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const std::string where = fmt::format("detections[{}]", i);
    const json& rec = dets[i];
    if (!rec.is_object()) throw SchemaError(where + " must be an object");
    if (!rec.contains("label")) {
      throw SchemaError(where +
                        ": labeled record needs 'label' (raw file given?)");
    }
    std::string image_id = json_util::RequireId(rec, "image_id", where);
    BoundingBox box =
        BoxFromXyxy(json_util::Require(rec, "box", where), where + ".box");
    DetectionLabel label = ParseLabel(
        json_util::RequireString(rec, "label", where), schema, where);
    const double score = json_util::RequireNumber(rec, "score", where);
    try {
      CheckDetectionScore(score);
    } catch (const SchemaError& e) {
      throw SchemaError(fmt::format("{}: {}", where, e.what()));
    }
    out.push_back({std::move(image_id), box, label, score});
  }
  return out;
}

std::vector<RawPrediction> ParseRawPredictions(std::string_view source,
                                               const DetectionSchema& schema) {
  RequireSchema(schema);
  const json doc = json_util::Parse(source);
  const json& dets = DetectionArray(doc);

  auto parse_value_kind = [](const json& rec, ValueKind fallback,
                             const std::string& where) {
    auto s = json_util::OptionalString(rec, "value_kind", where);
    if (!s) return fallback;
    if (*s == "logits") return ValueKind::kLogits;
    if (*s == "probabilities") return ValueKind::kProbabilities;
    throw SchemaError(fmt::format("{}: unknown value_kind '{}'", where, *s));
  };
  auto parse_head_kind = [](const json& rec, HeadKind fallback,
                            const std::string& where) {
    auto s = json_util::OptionalString(rec, "head_kind", where);
    if (!s) return fallback;
    if (*s == "softmax") return HeadKind::kSoftmax;
    if (*s == "sigmoid") return HeadKind::kSigmoid;
    throw SchemaError(fmt::format("{}: unknown head_kind '{}'", where, *s));
  };
  const ValueKind default_value =
      parse_value_kind(doc, ValueKind::kProbabilities, "document");
  const HeadKind default_head =
      parse_head_kind(doc, HeadKind::kSigmoid, "document");

  std::vector<RawPrediction> out;
  out.reserve(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const std::string where = fmt::format("detections[{}]", i);
    const json& rec = dets[i];
    if (!rec.is_object()) throw SchemaError(where + " must be an object");
    if (!rec.contains("scores")) {
      throw SchemaError(where +
                        ": raw record needs 'scores' (labeled file given?)");
    }
    std::string image_id = json_util::RequireId(rec, "image_id", where);
    BoundingBox box =
        BoxFromXyxy(json_util::Require(rec, "box", where), where + ".box");
    const json& scores = rec["scores"];
    if (!scores.is_array()) throw SchemaError(where + ".scores must be an array");
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& v : scores) {
      if (!v.is_number()) {
        throw SchemaError(where + ".scores must hold numbers only");
      }
      values.push_back(v.get<double>());
    }
    RawPrediction pred{std::move(image_id), box, std::move(values),
                       parse_value_kind(rec, default_value, where),
                       parse_head_kind(rec, default_head, where)};
    try {
      CheckRawPrediction(pred, schema.known_classes.size());
    } catch (const SchemaError& e) {
      throw SchemaError(fmt::format("{}: {}", where, e.what()));
    }
    out.push_back(std::move(pred));
  }
  return out;
}

std::string SerializeDetections(std::span<const Detection> detections,
                                const ClassTaxonomy& taxonomy) {
  json arr = json::array();
  for (const auto& d : detections) {
    arr.push_back({{"image_id", d.image_id},
                   {"box", d.box.to_array()},
                   {"label", d.label.is_unknown()
                                 ? std::string("unknown")
                                 : taxonomy.name(d.label.class_id())},
                   {"score", d.score}});
  }
  json doc;
  doc["detections"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string SerializeRawPredictions(std::span<const RawPrediction> predictions) {
  json arr = json::array();
  for (const auto& p : predictions) {
    arr.push_back({{"image_id", p.image_id},
                   {"box", p.box.to_array()},
                   {"scores", p.values},
                   {"value_kind", ToString(p.value_kind)},
                   {"head_kind", ToString(p.head_kind)}});
  }
  json doc;
  doc["detections"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return std::move(ss).str();
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(fmt::format("cannot move output into '{}'", path.string()));
  }
}

}  // namespace osod
