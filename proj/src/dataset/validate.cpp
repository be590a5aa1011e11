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

#include "osod/dataset/validate.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace osod {

namespace {

void Error(std::vector<Diagnostic>& out, std::string message) {
  out.push_back({Severity::kError, std::move(message)});
}

void CheckSplit(const DatasetView& dataset, const SplitSpec& split,
                std::vector<Diagnostic>& out) {
  const auto& tax = dataset.taxonomy;
  for (const auto* set : {&split.known_classes, &split.unknown_classes}) {
    for (ClassId id : *set) {
      if (!tax.contains(id)) {
        Error(out, fmt::format("split references class id {} outside the "
                               "taxonomy", id));
      }
    }
  }
  for (ClassId id : split.known_classes) {
    if (split.is_unknown(id)) {
      Error(out, fmt::format("class {} is both known and unknown", id));
    }
  }

  std::unordered_map<std::string_view, const char*> subset_of;
  auto add = [&](const std::vector<ImageId>& ids, const char* subset) {
    for (const auto& id : ids) {
      auto [it, inserted] = subset_of.emplace(id, subset);
      if (!inserted) {
        Error(out, fmt::format("image '{}' listed in both {} and {}", id,
                               it->second, subset));
      }
    }
  };
  add(split.train_images, "train");
  add(split.val_images, "val");
  add(split.test_images, "test");

  std::unordered_set<std::string_view> train_with_known;
  for (const auto& inst : dataset.instances) {
    auto it = subset_of.find(inst.image_id);
    if (it == subset_of.end() || std::string_view(it->second) != "train") {
      continue;
    }
    if (split.is_known(inst.class_id)) {
      train_with_known.insert(inst.image_id);
    } else {
      Error(out, fmt::format("train image '{}' carries non-known class '{}'",
                             inst.image_id,
                             tax.contains(inst.class_id)
                                 ? tax.name(inst.class_id)
                                 : std::to_string(inst.class_id)));
    }
  }
  for (const auto& id : split.train_images) {
    if (!train_with_known.contains(id)) {
      Error(out, fmt::format("train image '{}' has no known-class instance",
                             id));
    }
  }
}

}  // namespace

std::vector<Diagnostic> Validate(const DatasetView& dataset) {
  std::vector<Diagnostic> out;
  const auto& tax = dataset.taxonomy;
  if (tax.size() == 0) Error(out, "taxonomy declares no classes");

  std::unordered_map<std::string_view, const ImageInfo*> images;
  for (const auto& img : dataset.images) {
    if (!images.emplace(img.id, &img).second) {
      Error(out, fmt::format("duplicate image_id '{}'", img.id));
    }
  }

  for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
    const auto& inst = dataset.instances[i];
    auto it = images.find(inst.image_id);
    if (it == images.end()) {
      Error(out, fmt::format("instance #{} references unknown image '{}'", i,
                             inst.image_id));
      continue;
    }
    if (!tax.contains(inst.class_id)) {
      Error(out, fmt::format("instance #{} has class id {} outside the "
                             "taxonomy", i, inst.class_id));
    }
    const ImageInfo& img = *it->second;
    const bool overflow =
        (img.width > 0.0 &&
         (inst.box.x_min() < 0.0 || inst.box.x_max() > img.width)) ||
        (img.height > 0.0 &&
         (inst.box.y_min() < 0.0 || inst.box.y_max() > img.height));
    if (overflow) {
      out.push_back({Severity::kWarning,
                     fmt::format("instance #{} box exceeds the bounds of image "
                                 "'{}' ({}x{})",
                                 i, img.id, img.width, img.height)});
    }
  }

  if (dataset.split) CheckSplit(dataset, *dataset.split, out);
  return out;
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

}  // namespace osod
