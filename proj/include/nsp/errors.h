// Copyright 2026 The nsp Authors
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

#ifndef NSP_ERRORS_H_
#define NSP_ERRORS_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nsp {

// Base of every exception thrown by the library. The CLI maps each subclass
// to a fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index outside of an alphabet or a quantization.
class IndexError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration (negative lambda, distortion utility on
// categorical data, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search requested beyond the supported alphabet size.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// No quantization satisfies the requested constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

enum class IngestErrorKind {
  kMissingFile,
  kMissingColumn,
  kMalformedRow,
  kNumericParse,
  kEmpty,
};

const char* to_string(IngestErrorKind kind);

// Failure while turning a CSV file into a joint range. `row()` is the 1-based
// physical line number when the failure is tied to a specific line.
class IngestError : public Error {
 public:
  IngestError(IngestErrorKind kind, const std::string& message,
              std::optional<std::size_t> row = std::nullopt);

  IngestErrorKind kind() const { return kind_; }
  std::optional<std::size_t> row() const { return row_; }

 private:
  IngestErrorKind kind_;
  std::optional<std::size_t> row_;
};

}  // namespace nsp

#endif  // NSP_ERRORS_H_
