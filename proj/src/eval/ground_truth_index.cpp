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

#include "osod/eval/ground_truth_index.hpp"

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {

EvalGroundTruth::EvalGroundTruth(const DatasetView& view)
    : taxonomy_(view.taxonomy) {
  if (view.split) {
    known_ = view.split->known_classes;
    unknown_ = view.split->unknown_classes;
  } else {
    for (std::size_t c = 0; c < taxonomy_.size(); ++c) {
      known_.push_back(static_cast<ClassId>(c));
    }
  }
  known_pool_of_class_.assign(taxonomy_.size(), -1);
  std::vector<char> is_unknown(taxonomy_.size(), 0);
  for (std::size_t p = 0; p < known_.size(); ++p) {
    if (!taxonomy_.contains(known_[p])) {
      throw ConfigError(fmt::format("known class id {} outside the taxonomy",
                                    known_[p]));
    }
    known_pool_of_class_[known_[p]] = static_cast<int>(p);
  }
  for (ClassId id : unknown_) {
    if (!taxonomy_.contains(id)) {
      throw ConfigError(
          fmt::format("unknown class id {} outside the taxonomy", id));
    }
    is_unknown[id] = 1;
  }

  if (view.split) {
    std::unordered_map<std::string_view, char> present;
    for (const auto& img : view.images) present.emplace(img.id, 1);
    for (const auto& id : view.split->test_images) {
      if (!present.contains(id)) {
        throw ConfigError(fmt::format(
            "test image '{}' of split '{}' is not in the dataset", id,
            view.split->name));
      }
      image_ids_.push_back(id);
    }
  } else {
    for (const auto& img : view.images) image_ids_.push_back(img.id);
  }
  for (int i = 0; i < static_cast<int>(image_ids_.size()); ++i) {
    if (!image_index_.emplace(image_ids_[i], i).second) {
      throw ConfigError(
          fmt::format("image '{}' listed twice for evaluation", image_ids_[i]));
    }
  }

  pool_gt_.resize(num_pools());
  std::vector<std::vector<BoundingBox>> unknown_by_image(image_ids_.size());
  std::vector<std::vector<std::pair<int, BoundingBox>>> per_image;
  // Collect per image first so each pool list ends up ordered by image.
  per_image.resize(image_ids_.size());
  for (const auto& inst : view.instances) {
    auto it = image_index_.find(inst.image_id);
    if (it == image_index_.end() || !taxonomy_.contains(inst.class_id)) continue;
    const int image = it->second;
    if (is_unknown[inst.class_id]) {
      per_image[image].emplace_back(unknown_pool(), inst.box);
      unknown_by_image[image].push_back(inst.box);
    } else if (known_pool_of_class_[inst.class_id] >= 0) {
      per_image[image].emplace_back(known_pool_of_class_[inst.class_id],
                                    inst.box);
      ++total_known_gt_;
    }
  }
  for (int image = 0; image < static_cast<int>(per_image.size()); ++image) {
    for (const auto& [pool, box] : per_image[image]) {
      pool_gt_[pool].push_back({image, box});
    }
  }
  unknown_offsets_.reserve(image_ids_.size() + 1);
  unknown_offsets_.push_back(0);
  for (auto& boxes : unknown_by_image) {
    unknown_boxes_.insert(unknown_boxes_.end(), boxes.begin(), boxes.end());
    unknown_offsets_.push_back(static_cast<int>(unknown_boxes_.size()));
  }
}

std::optional<int> EvalGroundTruth::image_index(std::string_view id) const {
  auto it = image_index_.find(id);
  if (it == image_index_.end()) return std::nullopt;
  return it->second;
}

int EvalGroundTruth::known_pool(ClassId id) const {
  if (!taxonomy_.contains(id)) return -1;
  return known_pool_of_class_[id];
}

std::span<const BoundingBox> EvalGroundTruth::unknown_boxes(int image) const {
  return std::span<const BoundingBox>(unknown_boxes_)
      .subspan(unknown_offsets_[image],
               unknown_offsets_[image + 1] - unknown_offsets_[image]);
}

}  // namespace osod
