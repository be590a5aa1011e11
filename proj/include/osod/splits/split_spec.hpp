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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osod/dataset/types.hpp"
#include "osod/splits/ncut.hpp"

namespace osod {

// Used for images whose source carries no `subset` field: each such image
// draws u ~ U[0,1) in document order and goes to train if u < train, to val
// if u < train + val, else to test.
struct SubsetFractions {
  double train = 0.7;
  double val = 0.1;
};

struct SplitSpecOptions {
  std::string method = "manual";
  std::optional<double> ncut_value;
  // Names for the emitted specs, one per unknown set; defaults to U1, U2, ...
  std::vector<std::string> unknown_names;
  // Name of the spec built from the union of all unknown sets.
  std::string union_name;
  SubsetFractions fractions;
  std::vector<std::string> notes;
};

// One SplitSpec per unknown set, plus one for their union when there are two
// or more. Image lists are shared by all emitted specs:
//   train: base-train images with a known instance; under
//          kDropUnknownTrainImages, images showing any class from any unknown
//          set are removed as well.
//   val/test: base images with at least one known or unknown instance.
// Throws ConfigError for overlapping class sets, classes outside the
// taxonomy, or an empty train subset.
std::vector<SplitSpec> MakeSplitSpecs(
    const DatasetView& dataset, std::span<const ClassId> known,
    const std::vector<std::vector<ClassId>>& unknowns, SplitProtocol protocol,
    std::uint64_t seed, const SplitSpecOptions& options = {});

enum class KnownSelection {
  kSingleChunk,    // one chunk known, the rest unknown
  kAllButOneChunk  // one chunk unknown, the rest known
};

// k random class chunks; spec i treats chunk i (or its complement) as known.
// Specs are named split1..splitK.
std::vector<SplitSpec> GenerateRandomSplits(const DatasetView& dataset, int k,
                                            std::uint64_t seed,
                                            SplitProtocol protocol,
                                            KnownSelection selection);

// Normalized-cut clustering of the class co-occurrence graph. The largest
// cluster becomes the known set (lowest cluster index on ties); the others
// become unknown sets U1..U(k-1), plus their union.
std::vector<SplitSpec> GenerateNcutSplits(const DatasetView& dataset, int k,
                                          std::uint64_t seed,
                                          SplitProtocol protocol,
                                          const NcutOptions& options = {});

// Class sets are written by name.
std::string SerializeSplitSpec(const SplitSpec& spec,
                               const ClassTaxonomy& taxonomy);
SplitSpec ParseSplitSpec(std::string_view source,
                         const ClassTaxonomy& taxonomy);

SplitProtocol ParseProtocol(std::string_view text);

}  // namespace osod
