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

#include "osod/dataset/types.hpp"

namespace osod {

// Restricts a dataset to one split.
//
// Train images keep only known-class annotations and are dropped when they
// end up with none. Under kDropUnknownTrainImages a train image showing any
// unknown-class instance is dropped outright. Val/test images keep known and
// unknown annotations; every other class is stripped. Images outside the
// three lists disappear. The returned view carries the refined split, and
// applying the same split again is a no-op.
//
// Throws ConfigError when the split references classes outside the taxonomy,
// overlaps known and unknown sets, or leaves the train subset empty.
DatasetView ApplySplit(const DatasetView& dataset, const SplitSpec& split,
                       SplitProtocol protocol);

}  // namespace osod
