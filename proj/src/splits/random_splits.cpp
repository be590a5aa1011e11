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

#include "osod/splits/random_splits.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "osod/error.hpp"
#include "osod/splits/rng.hpp"

namespace osod {

std::vector<std::vector<ClassId>> RandomKSplits(const RandomSplitConfig& config) {
  std::vector<ClassId> ids = config.class_ids;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ConfigError("random split: class ids must be unique");
  }
  const auto n = static_cast<int>(ids.size());
  if (config.k < 2) {
    throw ConfigError(fmt::format("random split: k must be >= 2, got {}",
                                  config.k));
  }
  if (config.k > n) {
    throw ConfigError(fmt::format(
        "random split: k = {} exceeds the number of classes ({})", config.k, n));
  }

  Xoshiro256 rng(config.seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.UniformBelow(static_cast<std::uint64_t>(i) + 1));
    std::swap(ids[i], ids[j]);
  }

  std::vector<std::vector<ClassId>> out(config.k);
  const int base = n / config.k;
  const int extra = n % config.k;
  auto it = ids.begin();
  for (int c = 0; c < config.k; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    out[c].assign(it, it + size);
    std::sort(out[c].begin(), out[c].end());
    it += size;
  }
  return out;
}

}  // namespace osod
