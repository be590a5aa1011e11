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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

// Small helpers for reading the project's JSON documents with error messages
// that name the offending record.
namespace osod::json_util {

// Throws ParseError carrying the 1-based line and column of the failure.
nlohmann::json Parse(std::string_view source);

const nlohmann::json& Require(const nlohmann::json& obj, const char* key,
                              const std::string& where);
std::string RequireString(const nlohmann::json& obj, const char* key,
                          const std::string& where);
// Identifiers may be written as strings or integers; integers are converted
// to their decimal spelling.
std::string RequireId(const nlohmann::json& obj, const char* key,
                      const std::string& where);
double RequireNumber(const nlohmann::json& obj, const char* key,
                     const std::string& where);
std::optional<double> OptionalNumber(const nlohmann::json& obj, const char* key,
                                     const std::string& where);
std::optional<std::string> OptionalString(const nlohmann::json& obj,
                                          const char* key,
                                          const std::string& where);
std::array<double, 4> FourNumbers(const nlohmann::json& value,
                                  const std::string& where);

}  // namespace osod::json_util
