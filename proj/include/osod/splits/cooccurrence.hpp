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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "osod/dataset/types.hpp"

namespace osod {

// Symmetric, zero-diagonal, non-negative class affinity matrix. Vertex i
// stands for class_ids()[i].
class CoOccurrenceGraph {
 public:
  // Throws SchemaError if `weights` is not square, symmetric, non-negative
  // and zero on the diagonal, or if class_ids has the wrong length.
  CoOccurrenceGraph(Eigen::MatrixXd weights, std::vector<ClassId> class_ids);
  // Vertices labelled 0..n-1.
  explicit CoOccurrenceGraph(Eigen::MatrixXd weights);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(int i, int j) const { return weights_(i, j); }
  const std::vector<ClassId>& class_ids() const { return class_ids_; }
  double degree(int i) const { return weights_.row(i).sum(); }

 private:
  Eigen::MatrixXd weights_;
  std::vector<ClassId> class_ids_;
};

// w[i][j] = number of images containing at least one instance of both
// class_ids[i] and class_ids[j]. Multiplicity inside one image is ignored.
CoOccurrenceGraph BuildCoOccurrenceGraph(const DatasetView& dataset,
                                         std::span<const ClassId> class_ids);

}  // namespace osod
