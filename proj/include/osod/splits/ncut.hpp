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

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "osod/splits/cooccurrence.hpp"

namespace osod {

// Cluster index per vertex. Every cluster in [0, k) is non-empty.
class Partition {
 public:
  // Throws SchemaError when an index is out of range or a cluster is empty.
  Partition(std::vector<int> assignment, int k);

  int k() const { return k_; }
  int size() const { return static_cast<int>(assignment_.size()); }
  int operator[](int vertex) const { return assignment_[vertex]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<int> cluster_sizes() const;
  std::vector<int> members(int cluster) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  int k_;
};

// k-way normalized cut: sum over clusters of cut(A, V \ A) / assoc(A, V).
// Throws NumericError if a cluster has zero total association.
double NcutValue(const CoOccurrenceGraph& graph, const Partition& partition);

struct NcutOptions {
  int kmeans_restarts = 20;
  int kmeans_max_iterations = 300;
  // Graphs up to this many vertices use the dense symmetric eigensolver;
  // larger ones use block Lanczos.
  int dense_limit = 2048;
  int lanczos_max_blocks = 400;
  double eigen_tolerance = 1e-10;
  // Refine every k-means restart by single-vertex moves and keep the
  // lowest cut; when false, the best-SSE k-means result is used as is.
  bool refine = true;
  int refine_max_passes = 100;
};

struct NcutResult {
  Partition partition;
  // Vertices with zero degree. They take no part in the spectral embedding
  // and are handed one at a time to the currently smallest cluster.
  std::vector<int> isolated_vertices;
  // Absent when some cluster has zero association (e.g. isolated only).
  std::optional<double> ncut_value;
};

// Spectral relaxation of the k-way normalized cut: the k eigenvectors of
// L_sym = I - D^-1/2 W D^-1/2 with smallest eigenvalues form an embedding
// whose row-normalized rows are clustered by seeded k-means. Each k-means
// restart is refined by moving single vertices between clusters while that
// lowers the normalized cut and keeps every cluster non-empty; the restart
// with the lowest cut is kept. Clusters are renumbered by first appearance, so
// vertex 0 is always in cluster 0.
//
// Throws ConfigError for k < 2 or k > n and NumericError when the
// eigensolver fails to converge.
NcutResult NormalizedCut(const CoOccurrenceGraph& graph, int k,
                         std::uint64_t seed, const NcutOptions& options = {});

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // one column per value
};

// The `count` smallest eigenpairs of a symmetric matrix.
EigenPairs SmallestEigenpairsDense(const Eigen::MatrixXd& symmetric, int count);
// Same, by block Lanczos with full reorthogonalization. Converged when every
// requested Ritz pair has residual norm <= tolerance.
EigenPairs SmallestEigenpairsLanczos(const Eigen::MatrixXd& symmetric,
                                     int count, std::uint64_t seed,
                                     int max_blocks, double tolerance);

struct KMeansResult {
  std::vector<int> assignment;
  Eigen::MatrixXd centers;  // k x dim
  double sse = 0.0;
};

// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs by
// within-cluster SSE (earliest run wins ties). Clusters are never empty.
KMeansResult KMeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                    int restarts, int max_iterations);

}  // namespace osod
