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

// Two-column CSV ingestion into a joint range.

#ifndef NSP_INGEST_H_
#define NSP_INGEST_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nsp/joint_range.h"

namespace nsp {

struct DatasetStats {
  std::size_t record_count = 0;
  std::size_t distinct_s = 0;
  std::size_t distinct_x = 0;
  std::size_t distinct_pairs = 0;
  // Pairs that occur in exactly one record.
  std::size_t singleton_pairs = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

// A column addressed by header name or by 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

// All-digit text becomes a position, anything else a name.
ColumnRef parse_column_ref(const std::string& text);

struct IngestOptions {
  bool has_header = true;
  std::vector<std::string> missing = {"-9", "", "?"};
  char delimiter = ',';
  // Drop unquoted whitespace around every cell.
  bool trim = true;
  // Fail with kNumericParse when an X cell is not a decimal number.
  bool require_numeric_x = false;
  // Keep only the first record of each (s, x) combination when counting.
  bool drop_duplicate_records = false;
};

struct IngestResult {
  JointRange joint_range;
  DatasetStats stats;
  // Retained records as (s, x) index pairs, in file order.
  std::vector<std::pair<SIndex, XIndex>> records;
};

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// Parses RFC-4180 CSV text (quoted fields, doubled quotes, CRLF or LF line
// endings, newlines inside quotes). Each row carries its 1-based starting
// line number. Throws IngestError(kMalformedRow) on an unterminated quote.
// With `trim`, unquoted whitespace at either end of a cell is dropped; text
// inside quotes is kept verbatim.
std::vector<CsvRow> parse_csv(std::istream& in, char delimiter = ',',
                              bool trim = false);

IngestResult load_csv_stream(std::istream& in, const ColumnRef& s_column,
                             const ColumnRef& x_column,
                             const IngestOptions& options = {});

// Throws IngestError: kMissingFile, kMissingColumn, kMalformedRow (a row too
// short for a selected column), kNumericParse and kEmpty (no rows left).
IngestResult load_csv(const std::string& path, const ColumnRef& s_column,
                      const ColumnRef& x_column,
                      const IngestOptions& options = {});

// Statistics of a record multiset over jr's alphabets.
DatasetStats stats(const JointRange& jr,
                   const std::vector<std::pair<SIndex, XIndex>>& records);

// One row per pair, header "s,x", ids quoted when needed.
void write_joint_range_csv(std::ostream& out, const JointRange& jr);

// Builds a joint range from inline text: `pairs` lists "s:x" items separated
// by commas, `values` optionally lists "x=number" items. Symbols are ordered
// by first appearance. Throws ConfigError on malformed text and
// ContractViolation on an invalid range (e.g. duplicate pairs).
JointRange parse_inline_pairs(const std::string& pairs,
                              const std::string& values = "");

// Parses a decimal number occupying the whole string.
std::optional<double> parse_number(const std::string& text);

}  // namespace nsp

#endif  // NSP_INGEST_H_
