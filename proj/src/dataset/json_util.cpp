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

#include "osod/json_util.hpp"

#include <fmt/format.h>

#include "osod/error.hpp"

namespace osod::json_util {

using nlohmann::json;

json Parse(std::string_view source) {
  try {
    return json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset =
        std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, source.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(fmt::format("malformed document at line {}, column {} "
                                 "(byte offset {}): {}",
                                 line, column, offset, e.what()),
                     line, column);
  }
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(fmt::format("{}: missing field '{}'", where, key));
  }
  return *it;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = Require(obj, key, where);
  if (!v.is_string()) {
    throw SchemaError(fmt::format("{}: field '{}' must be a string", where, key));
  }
  return v.get<std::string>();
}

std::string RequireId(const json& obj, const char* key,
                      const std::string& where) {
  const json& v = Require(obj, key, where);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw SchemaError(
      fmt::format("{}: field '{}' must be a string or integer id", where, key));
}

double RequireNumber(const json& obj, const char* key, const std::string& where) {
  const json& v = Require(obj, key, where);
  if (!v.is_number()) {
    throw SchemaError(fmt::format("{}: field '{}' must be a number", where, key));
  }
  return v.get<double>();
}

std::optional<double> OptionalNumber(const json& obj, const char* key,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw SchemaError(fmt::format("{}: field '{}' must be a number", where, key));
  }
  return it->get<double>();
}

std::optional<std::string> OptionalString(const json& obj, const char* key,
                                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw SchemaError(fmt::format("{}: field '{}' must be a string", where, key));
  }
  return it->get<std::string>();
}

std::array<double, 4> FourNumbers(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 4) {
    throw SchemaError(where + " must be an array of 4 numbers");
  }
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!value[i].is_number()) {
      throw SchemaError(where + " must be an array of 4 numbers");
    }
    out[i] = value[i].get<double>();
  }
  return out;
}

}  // namespace osod::json_util
