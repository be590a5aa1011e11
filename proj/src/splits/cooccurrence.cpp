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

#include "osod/splits/cooccurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod {

CoOccurrenceGraph::CoOccurrenceGraph(Eigen::MatrixXd weights,
                                     std::vector<ClassId> class_ids)
    : weights_(std::move(weights)), class_ids_(std::move(class_ids)) {
  const auto n = weights_.rows();
  if (weights_.cols() != n) throw SchemaError("graph weights must be square");
  if (static_cast<Eigen::Index>(class_ids_.size()) != n) {
    throw SchemaError("graph class id list does not match the matrix size");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw SchemaError(fmt::format("graph diagonal entry {} is non-zero", i));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw SchemaError(
            fmt::format("graph weight ({}, {}) = {} is not a finite "
                        "non-negative number", i, j, w));
      }
      if (w != weights_(j, i)) {
        throw SchemaError(fmt::format("graph weights are not symmetric at "
                                      "({}, {})", i, j));
      }
    }
  }
}

CoOccurrenceGraph::CoOccurrenceGraph(Eigen::MatrixXd weights)
    : CoOccurrenceGraph(weights, [&] {
        std::vector<ClassId> ids(weights.rows());
        std::iota(ids.begin(), ids.end(), 0);
        return ids;
      }()) {}

CoOccurrenceGraph BuildCoOccurrenceGraph(const DatasetView& dataset,
                                         std::span<const ClassId> class_ids) {
  const auto n = static_cast<int>(class_ids.size());
  std::unordered_map<ClassId, int> vertex;
  for (int i = 0; i < n; ++i) vertex.emplace(class_ids[i], i);

  // Distinct vertices present per image, in image order.
  std::unordered_map<std::string_view, std::vector<int>> present;
  for (const auto& inst : dataset.instances) {
    auto v = vertex.find(inst.class_id);
    if (v == vertex.end()) continue;
    present[inst.image_id].push_back(v->second);
  }

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (auto& [image, vertices] : present) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()),
                   vertices.end());
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        w(vertices[a], vertices[b]) += 1.0;
        w(vertices[b], vertices[a]) += 1.0;
      }
    }
  }
  return CoOccurrenceGraph(std::move(w),
                           std::vector<ClassId>(class_ids.begin(),
                                                class_ids.end()));
}

}  // namespace osod
