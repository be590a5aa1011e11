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

#include "osod/splits/ncut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "osod/error.hpp"
#include "osod/splits/rng.hpp"

namespace osod {

Partition::Partition(std::vector<int> assignment, int k)
    : assignment_(std::move(assignment)), k_(k) {
  if (k_ < 1) throw SchemaError("partition needs at least one cluster");
  std::vector<int> counts(k_, 0);
  for (int c : assignment_) {
    if (c < 0 || c >= k_) {
      throw SchemaError(
          fmt::format("partition cluster index {} outside [0, {})", c, k_));
    }
    ++counts[c];
  }
  for (int c = 0; c < k_; ++c) {
    if (counts[c] == 0) {
      throw SchemaError(fmt::format("partition cluster {} is empty", c));
    }
  }
}

std::vector<int> Partition::cluster_sizes() const {
  std::vector<int> counts(k_, 0);
  for (int c : assignment_) ++counts[c];
  return counts;
}

std::vector<int> Partition::members(int cluster) const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v) {
    if (assignment_[v] == cluster) out.push_back(v);
  }
  return out;
}

double NcutValue(const CoOccurrenceGraph& graph, const Partition& partition) {
  if (partition.size() != graph.size()) {
    throw SchemaError(fmt::format("partition covers {} vertices, graph has {}",
                                  partition.size(), graph.size()));
  }
  const int n = graph.size();
  std::vector<double> assoc(partition.k(), 0.0);
  std::vector<double> within(partition.k(), 0.0);
  for (int i = 0; i < n; ++i) {
    const int ci = partition[i];
    for (int j = 0; j < n; ++j) {
      const double w = graph.weight(i, j);
      assoc[ci] += w;
      if (partition[j] == ci) within[ci] += w;
    }
  }
  double total = 0.0;
  for (int c = 0; c < partition.k(); ++c) {
    if (assoc[c] <= 0.0) {
      throw NumericError(fmt::format(
          "normalized cut undefined: cluster {} has zero association", c));
    }
    total += (assoc[c] - within[c]) / assoc[c];
  }
  return total;
}

EigenPairs SmallestEigenpairsDense(const Eigen::MatrixXd& symmetric,
                                   int count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw NumericError("dense symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues().head(count),
          solver.eigenvectors().leftCols(count)};
}

namespace {

Eigen::VectorXd RandomVector(Eigen::Index n, Xoshiro256& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.UniformDouble() - 0.5;
  return v;
}

// Orthonormalizes `v` against the first `filled` columns of `basis` with two
// Gram-Schmidt passes. Returns false when v lies (numerically) in their span.
bool Orthonormalize(const Eigen::MatrixXd& basis, Eigen::Index filled,
                    Eigen::VectorXd& v) {
  const double original = v.norm();
  if (original == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    if (filled > 0) {
      const auto q = basis.leftCols(filled);
      v -= q * (q.transpose() * v);
    }
  }
  const double norm = v.norm();
  if (norm <= 1e-10 * original) return false;
  v /= norm;
  return true;
}

}  // namespace

EigenPairs SmallestEigenpairsLanczos(const Eigen::MatrixXd& symmetric,
                                     int count, std::uint64_t seed,
                                     int max_blocks, double tolerance) {
  const Eigen::Index n = symmetric.rows();
  if (count < 1 || count > n) {
    throw ConfigError(fmt::format(
        "cannot extract {} eigenpairs from a {}x{} matrix", count, n, n));
  }
  const Eigen::Index block = std::min<Eigen::Index>(n, count + 2);
  Xoshiro256 rng(seed);

  Eigen::MatrixXd q(n, n);   // Krylov basis, first `filled` columns valid
  Eigen::MatrixXd aq(n, n);  // A times the basis
  Eigen::Index filled = 0;

  Eigen::MatrixXd next(n, block);
  for (Eigen::Index c = 0; c < block; ++c) next.col(c) = RandomVector(n, rng);

  for (int step = 0; step < max_blocks && filled < n; ++step) {
    const Eigen::Index block_start = filled;
    for (Eigen::Index c = 0; c < next.cols() && filled < n; ++c) {
      Eigen::VectorXd v = next.col(c);
      // A deflated direction is replaced by a random one so that repeated
      // eigenvalues keep getting explored.
      int attempts = 0;
      while (!Orthonormalize(q, filled, v)) {
        if (++attempts > 8) break;
        v = RandomVector(n, rng);
      }
      if (attempts > 8) continue;
      q.col(filled) = v;
      aq.col(filled) = symmetric * v;
      ++filled;
    }
    if (filled == block_start) break;

    if (filled >= count) {
      const auto basis = q.leftCols(filled);
      const auto image = aq.leftCols(filled);
      Eigen::MatrixXd projected = basis.transpose() * image;
      projected = 0.5 * (projected + projected.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
      if (small.info() != Eigen::Success) {
        throw NumericError("Rayleigh-Ritz eigensolver did not converge");
      }
      const Eigen::MatrixXd coeffs = small.eigenvectors().leftCols(count);
      const Eigen::VectorXd theta = small.eigenvalues().head(count);
      Eigen::MatrixXd ritz = basis * coeffs;
      const Eigen::MatrixXd residual =
          image * coeffs - ritz * theta.asDiagonal();
      const double worst = residual.colwise().norm().maxCoeff();
      if (worst <= tolerance) return {theta, ritz};
      if (filled == n) {
        throw NumericError(fmt::format(
            "block Lanczos exhausted the space with residual {:.3e} > {:.1e}",
            worst, tolerance));
      }
    }
    next = aq.middleCols(block_start, filled - block_start);
  }
  throw NumericError(fmt::format(
      "block Lanczos did not reach residual {:.1e} within {} blocks",
      tolerance, max_blocks));
}

namespace {

double SquaredDistance(const Eigen::MatrixXd& points, Eigen::Index row,
                       const Eigen::MatrixXd& centers, Eigen::Index center) {
  return (points.row(row) - centers.row(center)).squaredNorm();
}

Eigen::MatrixXd PlusPlusSeeds(const Eigen::MatrixXd& points, int k,
                              Xoshiro256& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  std::vector<char> chosen(n, 0);
  Eigen::Index first = static_cast<Eigen::Index>(rng.UniformBelow(n));
  centers.row(0) = points.row(first);
  chosen[first] = 1;
  std::vector<double> d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = SquaredDistance(points, i, centers, 0);

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : d2) total += d;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.UniformDouble() * total;
      double cumulative = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        cumulative += d2[i];
        pick = i;
        if (cumulative > target) break;
      }
    } else {
      for (Eigen::Index i = 0; i < n && pick < 0; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    centers.row(c) = points.row(pick);
    chosen[pick] = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(points, i, centers, c));
    }
  }
  return centers;
}

KMeansResult LloydRun(const Eigen::MatrixXd& points, Eigen::MatrixXd centers,
                      int max_iterations) {
  const Eigen::Index n = points.rows();
  const auto k = static_cast<int>(centers.rows());
  std::vector<int> assignment(n, -1);
  std::vector<double> dist(n, 0.0);

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<int> previous = assignment;
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = SquaredDistance(points, i, centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d = SquaredDistance(points, i, centers, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assignment[i] = best;
      dist[i] = best_d;
      ++counts[best];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[assignment[i]] <= 1) continue;
        if (far < 0 || dist[i] > dist[far]) far = i;
      }
      --counts[assignment[far]];
      assignment[far] = c;
      dist[far] = 0.0;
      counts[c] = 1;
    }
    centers.setZero();
    for (Eigen::Index i = 0; i < n; ++i) centers.row(assignment[i]) += points.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= counts[c];
    if (assignment == previous) break;
  }

  double sse = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sse += SquaredDistance(points, i, centers, assignment[i]);
  }
  return {std::move(assignment), std::move(centers), sse};
}

}  // namespace

KMeansResult KMeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                    int restarts, int max_iterations) {
  if (k < 1 || k > points.rows()) {
    throw ConfigError(fmt::format("k-means: k = {} with {} points", k,
                                  points.rows()));
  }
  Xoshiro256 rng(seed);
  KMeansResult best;
  best.sse = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    KMeansResult run =
        LloydRun(points, PlusPlusSeeds(points, k, rng), max_iterations);
    if (run.sse < best.sse) best = std::move(run);
  }
  return best;
}

namespace {

std::vector<int> RenumberByFirstAppearance(const std::vector<int>& assignment,
                                           int k) {
  std::vector<int> mapping(k, -1);
  int next = 0;
  std::vector<int> out(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    int& m = mapping[assignment[v]];
    if (m < 0) m = next++;
    out[v] = m;
  }
  return out;
}

// Fiduccia-Mattheyses style passes over the active vertices. Per cluster,
// vol is the sum of degrees and in the sum of weights with both ends inside,
// so the cluster contributes (vol - in) / vol. Within a pass every vertex
// moves at most once, always along the best available move even when that
// raises the cut (lowest vertex, then lowest cluster, on ties); the pass is
// then rolled back to its best prefix. Passes repeat while they improve.
void RefineAssignment(const CoOccurrenceGraph& graph,
                      const std::vector<int>& active, int k,
                      std::vector<int>& assignment, int max_passes) {
  const int m = static_cast<int>(active.size());
  Eigen::MatrixXd w(m, m);
  Eigen::VectorXd degree(m);
  std::vector<int> a(m);
  for (int i = 0; i < m; ++i) {
    a[i] = assignment[active[i]];
    degree(i) = graph.degree(active[i]);
    for (int j = 0; j < m; ++j) w(i, j) = graph.weight(active[i], active[j]);
  }
  std::vector<double> vol(k), in(k);
  std::vector<int> size(k);
  // link(i, c): weight from i to the other members of cluster c.
  Eigen::MatrixXd link(m, k);
  auto rebuild = [&] {
    std::fill(vol.begin(), vol.end(), 0.0);
    std::fill(in.begin(), in.end(), 0.0);
    std::fill(size.begin(), size.end(), 0);
    link.setZero();
    for (int i = 0; i < m; ++i) {
      vol[a[i]] += degree(i);
      ++size[a[i]];
      for (int j = 0; j < m; ++j) {
        if (j != i) link(i, a[j]) += w(i, j);
        if (a[j] == a[i]) in[a[i]] += w(i, j);
      }
    }
  };
  auto term = [](double v, double internal) {
    return v > 0.0 ? (v - internal) / v : 0.0;
  };
  auto total = [&] {
    double t = 0.0;
    for (int c = 0; c < k; ++c) t += term(vol[c], in[c]);
    return t;
  };
  auto gain = [&](int i, int to) {
    const int from = a[i];
    const double d = degree(i);
    const double self = w(i, i);
    return term(vol[from], in[from]) + term(vol[to], in[to]) -
           term(vol[from] - d, in[from] - 2.0 * link(i, from) - self) -
           term(vol[to] + d, in[to] + 2.0 * link(i, to) + self);
  };
  auto move = [&](int i, int to) {
    const int from = a[i];
    const double d = degree(i);
    const double self = w(i, i);
    vol[from] -= d;
    in[from] -= 2.0 * link(i, from) + self;
    --size[from];
    vol[to] += d;
    in[to] += 2.0 * link(i, to) + self;
    ++size[to];
    a[i] = to;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      link(j, from) -= w(j, i);
      link(j, to) += w(j, i);
    }
  };

  constexpr double kMinGain = 1e-12;
  rebuild();
  double value = total();
  std::vector<char> locked(m);
  std::vector<std::pair<int, int>> moves;  // (vertex, previous cluster)
  for (int pass = 0; pass < max_passes; ++pass) {
    std::fill(locked.begin(), locked.end(), 0);
    moves.clear();
    double running = value;
    double best_value = value;
    std::size_t best_len = 0;
    for (int step = 0; step < m; ++step) {
      int best_i = -1, best_to = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (locked[i] || size[a[i]] == 1) continue;
        for (int to = 0; to < k; ++to) {
          if (to == a[i]) continue;
          const double g = gain(i, to);
          if (g > best_gain) {
            best_gain = g;
            best_i = i;
            best_to = to;
          }
        }
      }
      if (best_i < 0) break;
      moves.emplace_back(best_i, a[best_i]);
      move(best_i, best_to);
      locked[best_i] = 1;
      running -= best_gain;
      if (running < best_value - kMinGain) {
        best_value = running;
        best_len = moves.size();
      }
    }
    while (moves.size() > best_len) {
      move(moves.back().first, moves.back().second);
      moves.pop_back();
    }
    rebuild();
    const double next = total();
    if (best_len == 0 || next >= value - kMinGain) break;
    value = next;
  }
  for (int i = 0; i < m; ++i) assignment[active[i]] = a[i];
}

double ActiveNcut(const CoOccurrenceGraph& graph,
                  const std::vector<int>& active, int k,
                  const std::vector<int>& assignment) {
  std::vector<double> vol(k, 0.0), in(k, 0.0);
  for (int v : active) {
    const int c = assignment[v];
    vol[c] += graph.degree(v);
    for (int u : active) {
      if (assignment[u] == c) in[c] += graph.weight(v, u);
    }
  }
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    if (vol[c] > 0.0) total += (vol[c] - in[c]) / vol[c];
  }
  return total;
}

}  // namespace

NcutResult NormalizedCut(const CoOccurrenceGraph& graph, int k,
                         std::uint64_t seed, const NcutOptions& options) {
  const int n = graph.size();
  if (k < 2) throw ConfigError(fmt::format("normalized cut: k = {} < 2", k));
  if (k > n) {
    throw ConfigError(fmt::format(
        "normalized cut: k = {} exceeds the vertex count {}", k, n));
  }

  std::vector<int> active;
  std::vector<int> isolated;
  for (int v = 0; v < n; ++v) {
    (graph.degree(v) > 0.0 ? active : isolated).push_back(v);
  }
  const int m = static_cast<int>(active.size());
  const int k_active = std::min(k, m);

  std::vector<int> assignment(n, -1);
  std::vector<int> counts(k, 0);

  if (k == n) {
    for (int v = 0; v < n; ++v) assignment[v] = v;
    isolated.clear();
  } else if (k_active <= 1 || k_active == m) {
    for (int i = 0; i < m; ++i) assignment[active[i]] = k_active <= 1 ? 0 : i;
  } else {
    Eigen::VectorXd inv_sqrt_degree(m);
    for (int i = 0; i < m; ++i) {
      inv_sqrt_degree(i) = 1.0 / std::sqrt(graph.degree(active[i]));
    }
    Eigen::MatrixXd laplacian(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double s = graph.weight(active[i], active[j]) *
                         (inv_sqrt_degree(i) * inv_sqrt_degree(j));
        laplacian(i, j) = (i == j ? 1.0 : 0.0) - s;
      }
    }
    const EigenPairs pairs =
        m <= options.dense_limit
            ? SmallestEigenpairsDense(laplacian, k_active)
            : SmallestEigenpairsLanczos(laplacian, k_active, seed,
                                        options.lanczos_max_blocks,
                                        options.eigen_tolerance);
    Eigen::MatrixXd embedding = pairs.vectors;
    for (int i = 0; i < m; ++i) {
      const double norm = embedding.row(i).norm();
      if (norm > 0.0) embedding.row(i) /= norm;
    }
    if (!options.refine) {
      const KMeansResult km =
          KMeans(embedding, k_active, seed, options.kmeans_restarts,
                 options.kmeans_max_iterations);
      for (int i = 0; i < m; ++i) assignment[active[i]] = km.assignment[i];
    } else {
      // Every restart is refined; the lowest cut wins, earliest on ties.
      Xoshiro256 rng(seed);
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> candidate(n, -1);
      for (int r = 0; r < std::max(options.kmeans_restarts, 1); ++r) {
        const KMeansResult run =
            LloydRun(embedding, PlusPlusSeeds(embedding, k_active, rng),
                     options.kmeans_max_iterations);
        for (int i = 0; i < m; ++i) candidate[active[i]] = run.assignment[i];
        RefineAssignment(graph, active, k_active, candidate,
                         options.refine_max_passes);
        const double value = ActiveNcut(graph, active, k_active, candidate);
        if (value < best) {
          best = value;
          assignment = candidate;
        }
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (assignment[v] >= 0) ++counts[assignment[v]];
  }
  for (int v : isolated) {
    const int smallest = static_cast<int>(
        std::min_element(counts.begin(), counts.end()) - counts.begin());
    assignment[v] = smallest;
    ++counts[smallest];
  }

  NcutResult result{Partition(RenumberByFirstAppearance(assignment, k), k),
                    std::move(isolated), std::nullopt};
  try {
    result.ncut_value = NcutValue(graph, result.partition);
  } catch (const NumericError&) {
  }
  return result;
}

}  // namespace osod
