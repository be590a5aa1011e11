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

#include "osod/baseline/sweep.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "osod/error.hpp"
#include "osod/parallel.hpp"

namespace osod {

std::vector<BaselineSweepCell> SweepBaseline(
    std::span<const RawPrediction> preds, std::span<const double> gamma_grid,
    std::span<const double> temperature_grid, const EvalGroundTruth& gt,
    const EvalConfig& eval_config, const BaselineSweepOptions& options) {
  if (gamma_grid.empty() || temperature_grid.empty()) {
    throw ConfigError("baseline sweep grids must be non-empty");
  }
  eval_config.Validate();
  const auto& known = gt.known_classes();
  const std::size_t num_gamma = gamma_grid.size();
  const std::size_t cells = num_gamma * temperature_grid.size();

  // Relabeling is cheap next to evaluation; keep each cell's labels so the
  // gamma-monotonicity check can compare them.
  std::vector<std::vector<Detection>> labeled(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    BaselineConfig cfg;
    cfg.gamma = gamma_grid[c % num_gamma];
    cfg.temperature = temperature_grid[c / num_gamma];
    cfg.top_m = options.top_m;
    labeled[c] = RelabelAll(preds, cfg, known);
  }

  for (std::size_t t = 0; t < temperature_grid.size(); ++t) {
    std::vector<std::size_t> by_gamma(num_gamma);
    std::iota(by_gamma.begin(), by_gamma.end(), 0);
    std::stable_sort(by_gamma.begin(), by_gamma.end(),
                     [&](std::size_t a, std::size_t b) {
                       return gamma_grid[a] < gamma_grid[b];
                     });
    for (std::size_t g = 1; g < num_gamma; ++g) {
      const auto& lo = labeled[t * num_gamma + by_gamma[g - 1]];
      const auto& hi = labeled[t * num_gamma + by_gamma[g]];
      for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i].label.is_unknown() && !hi[i].label.is_unknown()) {
          throw NumericError(fmt::format(
              "prediction #{} is Unknown at gamma {} but Known at gamma {}", i,
              gamma_grid[by_gamma[g - 1]], gamma_grid[by_gamma[g]]));
        }
      }
    }
  }

  std::vector<std::optional<BaselineSweepCell>> slots(cells);
  ParallelFor(static_cast<int>(cells), options.threads, [&](int c) {
    std::vector<Detection> dets = std::move(labeled[c]);
    const auto unknown = std::count_if(dets.begin(), dets.end(), [](const Detection& d) {
      return d.label.is_unknown();
    });
    if (options.cross_nms_iou) dets = CrossLabelNms(dets, *options.cross_nms_iou);
    slots[c] = BaselineSweepCell{gamma_grid[c % num_gamma],
                                 temperature_grid[c / num_gamma],
                                 static_cast<std::int64_t>(unknown),
                                 OpenSetEvaluation(dets, gt, eval_config).Report()};
  });
  std::vector<BaselineSweepCell> out;
  out.reserve(cells);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace osod
