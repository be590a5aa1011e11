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
#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

struct RandomSplitConfig {
  int k = 4;
  std::uint64_t seed = 0;
  std::vector<ClassId> class_ids;
};

// Partitions `class_ids` into k disjoint, covering chunks whose sizes differ
// by at most one. The ids are sorted, shuffled with Fisher-Yates driven by
// Xoshiro256(seed) (swap index drawn as UniformBelow(i + 1) for i = n-1..1),
// and cut into consecutive chunks; the first n % k chunks get the extra
// element. Each chunk is returned sorted ascending.
//
// Throws ConfigError when k < 2, k > n, or ids repeat.
std::vector<std::vector<ClassId>> RandomKSplits(const RandomSplitConfig& config);

}  // namespace osod
