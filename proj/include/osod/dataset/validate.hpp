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

#include <vector>

#include "osod/dataset/types.hpp"

namespace osod {

// Reports every invariant violation in `dataset`; empty iff all hold.
// Boxes overflowing known image bounds are warnings, not errors.
std::vector<Diagnostic> Validate(const DatasetView& dataset);

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

}  // namespace osod
