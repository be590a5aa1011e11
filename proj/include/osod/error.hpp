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

#include <stdexcept>
#include <string>

namespace osod {

// Broad failure categories. The CLI maps kInput-class errors to exit code 1
// and numeric/eval errors to exit code 2.
enum class ErrorKind {
  kParse,          // malformed document
  kSchema,         // well-formed but violates a field/type rule
  kConfiguration,  // inconsistent options or inputs
  kIo,             // unreadable/unwritable path
  kNumeric,        // solver failure, undefined objective
  kEval,           // metric undefined for the given inputs
};

const char* ToString(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  bool is_input_error() const {
    return kind_ == ErrorKind::kParse || kind_ == ErrorKind::kSchema ||
           kind_ == ErrorKind::kConfiguration || kind_ == ErrorKind::kIo;
  }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::kParse, message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message)
      : Error(ErrorKind::kSchema, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::kConfiguration, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& message)
      : Error(ErrorKind::kNumeric, message) {}
};

class EvalError : public Error {
 public:
  explicit EvalError(const std::string& message)
      : Error(ErrorKind::kEval, message) {}
};

}  // namespace osod
