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
#include <string_view>
#include <unordered_map>
#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

// Ground truth arranged for evaluation. Built once per (dataset, split) and
// shared across any number of detection sets.
//
// With a split, the evaluated images are the split's test images and the
// pools follow its known/unknown classes. Without one, every image is
// evaluated and every taxonomy class is known. Annotations of classes that
// are neither known nor unknown are ignored.
class EvalGroundTruth {
 public:
  struct Entry {
    int image;
    BoundingBox box;
  };

  // Throws ConfigError when a split test image is missing from the view.
  explicit EvalGroundTruth(const DatasetView& view);
  // The image index holds views into image_ids_.
  EvalGroundTruth(const EvalGroundTruth&) = delete;
  EvalGroundTruth& operator=(const EvalGroundTruth&) = delete;
  EvalGroundTruth(EvalGroundTruth&&) = default;
  EvalGroundTruth& operator=(EvalGroundTruth&&) = default;

  const ClassTaxonomy& taxonomy() const { return taxonomy_; }
  const std::vector<ClassId>& known_classes() const { return known_; }
  const std::vector<ClassId>& unknown_classes() const { return unknown_; }

  int num_images() const { return static_cast<int>(image_ids_.size()); }
  const ImageId& image_id(int index) const { return image_ids_[index]; }
  std::optional<int> image_index(std::string_view id) const;

  // Pools 0..K-1 are the known classes in ascending id order; pool K is the
  // unknown pool.
  int num_pools() const { return static_cast<int>(known_.size()) + 1; }
  int unknown_pool() const { return static_cast<int>(known_.size()); }
  // -1 when `id` is not a known class.
  int known_pool(ClassId id) const;

  // Pool ground truth ordered by image index, document order within an image.
  std::span<const Entry> pool_gt(int pool) const { return pool_gt_[pool]; }
  long num_gt(int pool) const {
    return static_cast<long>(pool_gt_[pool].size());
  }
  long total_known_gt() const { return total_known_gt_; }
  // Unknown-class boxes of one image.
  std::span<const BoundingBox> unknown_boxes(int image) const;

 private:
  ClassTaxonomy taxonomy_;
  std::vector<ClassId> known_;
  std::vector<ClassId> unknown_;
  std::vector<int> known_pool_of_class_;
  std::vector<ImageId> image_ids_;
  std::unordered_map<std::string_view, int> image_index_;
  std::vector<std::vector<Entry>> pool_gt_;
  std::vector<int> unknown_offsets_;  // CSR over images
  std::vector<BoundingBox> unknown_boxes_;
  long total_known_gt_ = 0;
};

}  // namespace osod
