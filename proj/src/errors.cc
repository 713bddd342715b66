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

#include "nsp/errors.h"

#include <string>

namespace nsp {

const char* to_string(IngestErrorKind kind) {
  switch (kind) {
    case IngestErrorKind::kMissingFile:
      return "missing_file";
    case IngestErrorKind::kMissingColumn:
      return "missing_column";
    case IngestErrorKind::kMalformedRow:
      return "malformed_row";
    case IngestErrorKind::kNumericParse:
      return "numeric_parse";
    case IngestErrorKind::kEmpty:
      return "empty";
  }
  return "unknown";
}

IngestError::IngestError(IngestErrorKind kind, const std::string& message,
                         std::optional<std::size_t> row)
    : Error(row ? message + " (row " + std::to_string(*row) + ")" : message),
      kind_(kind),
      row_(row) {}

}  // namespace nsp
