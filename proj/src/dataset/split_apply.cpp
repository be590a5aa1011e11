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

#include "osod/dataset/split_apply.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {

namespace {

constexpr const char* kTrainStripNote =
    "train annotations restricted to known classes; removed objects remain "
    "unlabeled in the images";

void CheckClassSets(const ClassTaxonomy& taxonomy, const SplitSpec& split) {
  for (const auto* set : {&split.known_classes, &split.unknown_classes}) {
    for (ClassId id : *set) {
      if (!taxonomy.contains(id)) {
        throw ConfigError(fmt::format(
            "split '{}' references class id {} outside the taxonomy",
            split.name, id));
      }
    }
    if (!std::is_sorted(set->begin(), set->end())) {
      throw ConfigError(
          fmt::format("split '{}': class sets must be sorted", split.name));
    }
  }
  for (ClassId id : split.known_classes) {
    if (split.is_unknown(id)) {
      throw ConfigError(fmt::format(
          "split '{}': class '{}' is both known and unknown", split.name,
          taxonomy.name(id)));
    }
  }
}

enum class Membership : std::uint8_t { kNone, kTrain, kVal, kTest };

}  // namespace

DatasetView ApplySplit(const DatasetView& dataset, const SplitSpec& split,
                       SplitProtocol protocol) {
  CheckClassSets(dataset.taxonomy, split);

  struct ImageState {
    bool has_known = false;
    bool has_unknown = false;
    Membership membership = Membership::kNone;
  };
  std::unordered_map<std::string_view, ImageState> state;
  state.reserve(dataset.images.size());
  for (const auto& img : dataset.images) state[img.id];
  for (const auto& inst : dataset.instances) {
    auto it = state.find(inst.image_id);
    if (it == state.end()) continue;
    if (split.is_known(inst.class_id)) it->second.has_known = true;
    if (split.is_unknown(inst.class_id)) it->second.has_unknown = true;
  }

  auto assign = [&](const std::vector<ImageId>& ids, Membership m,
                    const char* subset) {
    for (const auto& id : ids) {
      auto it = state.find(id);
      if (it == state.end()) {
        throw ConfigError(fmt::format(
            "split '{}' lists {} image '{}' missing from the dataset",
            split.name, subset, id));
      }
      if (it->second.membership != Membership::kNone) {
        throw ConfigError(fmt::format(
            "split '{}': image '{}' appears in more than one subset",
            split.name, id));
      }
      it->second.membership = m;
    }
  };
  assign(split.train_images, Membership::kTrain, "train");
  assign(split.val_images, Membership::kVal, "val");
  assign(split.test_images, Membership::kTest, "test");

  const bool drop = protocol == SplitProtocol::kDropUnknownTrainImages;
  SplitSpec refined = split;
  refined.provenance.protocol = protocol;
  refined.train_images.clear();
  for (const auto& id : split.train_images) {
    ImageState& s = state[id];
    if (s.has_known && !(drop && s.has_unknown)) {
      refined.train_images.push_back(id);
    } else {
      s.membership = Membership::kNone;
    }
  }
  if (refined.train_images.empty()) {
    throw ConfigError(fmt::format(
        "split '{}' leaves no training image with a known-class instance",
        split.name));
  }
  auto& notes = refined.provenance.notes;
  if (std::find(notes.begin(), notes.end(), kTrainStripNote) == notes.end()) {
    notes.emplace_back(kTrainStripNote);
  }

  DatasetView out;
  out.taxonomy = dataset.taxonomy;
  for (const auto& img : dataset.images) {
    if (state[img.id].membership != Membership::kNone) out.images.push_back(img);
  }
  for (const auto& inst : dataset.instances) {
    auto it = state.find(inst.image_id);
    if (it == state.end()) continue;
    switch (it->second.membership) {
      case Membership::kNone:
        break;
      case Membership::kTrain:
        if (split.is_known(inst.class_id)) out.instances.push_back(inst);
        break;
      case Membership::kVal:
      case Membership::kTest:
        if (split.is_known(inst.class_id) || split.is_unknown(inst.class_id)) {
          out.instances.push_back(inst);
        }
        break;
    }
  }
  out.split = std::move(refined);
  return out;
}

}  // namespace osod
