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

#include "nsp/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "nsp/errors.h"

namespace nsp {
namespace {

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string describe(const ColumnRef& c) {
  if (const auto* name = std::get_if<std::string>(&c)) return "'" + *name + "'";
  return "#" + std::to_string(std::get<std::size_t>(c));
}

// Maps symbol text to a dense index in first-appearance order.
class Interner {
 public:
  std::size_t intern(const std::string& id) {
    auto [it, inserted] = index_.try_emplace(id, ids_.size());
    if (inserted) ids_.push_back(id);
    return it->second;
  }
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> ids_;
};

std::vector<Symbol> to_symbols(const std::vector<std::string>& ids) {
  std::vector<std::optional<double>> values;
  bool numeric = true;
  for (const auto& id : ids) {
    values.push_back(parse_number(id));
    numeric = numeric && values.back().has_value();
  }
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.push_back(Symbol{ids[i], numeric ? values[i] : std::nullopt});
  }
  return out;
}

}  // namespace

std::optional<double> parse_number(const std::string& text) {
  std::string_view v = text;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  if (v.empty()) return std::nullopt;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    return std::nullopt;
  }
  return out;
}

ColumnRef parse_column_ref(const std::string& text) {
  if (!text.empty() &&
      std::all_of(text.begin(), text.end(),
                  [](unsigned char c) { return c >= '0' && c <= '9'; })) {
    return static_cast<std::size_t>(std::stoull(text));
  }
  return text;
}

std::vector<CsvRow> parse_csv(std::istream& in, char delimiter, bool trim) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  std::vector<CsvRow> rows;
  CsvRow row{1, {}};
  std::string cell;
  // Length of the cell prefix that trimming must not touch (quoted text).
  std::size_t kept = 0;
  bool quoted = false;
  bool row_open = false;
  std::size_t line = 1;
  std::size_t quote_line = 0;

  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  auto end_cell = [&] {
    if (trim) {
      while (cell.size() > kept && is_space(cell.back())) cell.pop_back();
    }
    row.cells.push_back(std::move(cell));
    cell.clear();
    kept = 0;
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row = CsvRow{line, {}};
    row_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
          kept = cell.size();
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      quote_line = line;
      row_open = true;
    } else if (c == delimiter) {
      end_cell();
      row_open = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      end_row();
    } else if (trim && is_space(c) && cell.size() == kept) {
      // Leading whitespace, or whitespace right after a closing quote.
      if (kept > 0) cell += c;
    } else {
      cell += c;
      row_open = true;
    }
  }
  if (quoted) {
    throw IngestError(IngestErrorKind::kMalformedRow, "unterminated quote",
                      quote_line);
  }
  if (row_open || !cell.empty()) end_row();
  return rows;
}

IngestResult load_csv_stream(std::istream& in, const ColumnRef& s_column,
                             const ColumnRef& x_column,
                             const IngestOptions& options) {
  std::vector<CsvRow> rows = parse_csv(in, options.delimiter, options.trim);
  // A blank line parses as one empty cell.
  std::erase_if(rows, [](const CsvRow& r) {
    return r.cells.size() == 1 && r.cells[0].empty();
  });

  std::size_t first_data = 0;
  std::vector<std::string> header;
  if (options.has_header) {
    if (rows.empty()) {
      throw IngestError(IngestErrorKind::kEmpty, "input has no header row");
    }
    header = rows[0].cells;
    first_data = 1;
  }
  auto resolve = [&](const ColumnRef& ref) -> std::size_t {
    if (const auto* pos = std::get_if<std::size_t>(&ref)) return *pos;
    const auto& name = std::get<std::string>(ref);
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw IngestError(IngestErrorKind::kMissingColumn,
                        "column " + describe(ref) + " not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t s_col = resolve(s_column);
  const std::size_t x_col = resolve(x_column);
  if (options.has_header &&
      (s_col >= header.size() || x_col >= header.size())) {
    throw IngestError(IngestErrorKind::kMissingColumn,
                      "column index beyond the header width");
  }

  auto is_missing = [&](const std::string& cell) {
    return std::find(options.missing.begin(), options.missing.end(), cell) !=
           options.missing.end();
  };

  Interner s_ids;
  Interner x_ids;
  std::vector<std::pair<SIndex, XIndex>> records;
  std::set<std::pair<SIndex, XIndex>> seen;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (std::max(s_col, x_col) >= row.cells.size()) {
      throw IngestError(IngestErrorKind::kMalformedRow,
                        "row has " + std::to_string(row.cells.size()) +
                            " cells, too few for the selected columns",
                        row.line);
    }
    const std::string& s = row.cells[s_col];
    const std::string& x = row.cells[x_col];
    if (is_missing(s) || is_missing(x)) continue;
    if (options.require_numeric_x && !parse_number(x)) {
      throw IngestError(IngestErrorKind::kNumericParse,
                        "X value '" + x + "' is not a number", row.line);
    }
    const std::pair<SIndex, XIndex> rec{s_ids.intern(s), x_ids.intern(x)};
    if (!seen.insert(rec).second && options.drop_duplicate_records) continue;
    records.push_back(rec);
  }
  if (records.empty()) {
    throw IngestError(IngestErrorKind::kEmpty,
                      "no records left after missing-value filtering");
  }

  JointRange jr(to_symbols(s_ids.ids()), to_symbols(x_ids.ids()),
                std::vector<std::pair<SIndex, XIndex>>(seen.begin(), seen.end()));
  DatasetStats st = stats(jr, records);
  return IngestResult{std::move(jr), st, std::move(records)};
}

IngestResult load_csv(const std::string& path, const ColumnRef& s_column,
                      const ColumnRef& x_column, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError(IngestErrorKind::kMissingFile,
                      "cannot open '" + path + "'");
  }
  return load_csv_stream(in, s_column, x_column, options);
}

DatasetStats stats(const JointRange& jr,
                   const std::vector<std::pair<SIndex, XIndex>>& records) {
  std::map<std::pair<SIndex, XIndex>, std::size_t> counts;
  std::set<SIndex> s_seen;
  std::set<XIndex> x_seen;
  for (const auto& rec : records) {
    if (rec.first >= jr.s_size() || rec.second >= jr.x_size()) {
      throw IndexError("record outside the joint range alphabets");
    }
    ++counts[rec];
    s_seen.insert(rec.first);
    x_seen.insert(rec.second);
  }
  DatasetStats out;
  out.record_count = records.size();
  out.distinct_s = s_seen.size();
  out.distinct_x = x_seen.size();
  out.distinct_pairs = counts.size();
  out.singleton_pairs = static_cast<std::size_t>(std::count_if(
      counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; }));
  return out;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos &&
      s == trimmed(s) && !s.empty()) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

JointRange parse_inline_pairs(const std::string& pairs,
                              const std::string& values) {
  auto split = [](const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
      if (c == sep) {
        out.push_back(trimmed(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(trimmed(cur));
    return out;
  };

  Interner s_ids;
  Interner x_ids;
  std::vector<std::pair<SIndex, XIndex>> list;
  for (const std::string& item : split(pairs, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw ConfigError("inline pair '" + item + "' is not of the form s:x");
    }
    list.emplace_back(s_ids.intern(trimmed(item.substr(0, colon))),
                      x_ids.intern(trimmed(item.substr(colon + 1))));
  }
  if (list.empty()) throw ConfigError("inline joint range has no pairs");

  std::vector<Symbol> s_alpha;
  for (const auto& id : s_ids.ids()) s_alpha.push_back(Symbol{id, std::nullopt});
  std::vector<Symbol> x_alpha;
  for (const auto& id : x_ids.ids()) x_alpha.push_back(Symbol{id, std::nullopt});

  if (!trimmed(values).empty()) {
    for (const std::string& item : split(values, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("inline value '" + item + "' is not of the form x=v");
      }
      const std::string id = trimmed(item.substr(0, eq));
      const auto v = parse_number(trimmed(item.substr(eq + 1)));
      if (!v) throw ConfigError("inline value '" + item + "' is not numeric");
      auto it = std::find_if(x_alpha.begin(), x_alpha.end(),
                             [&](const Symbol& s) { return s.id == id; });
      if (it == x_alpha.end()) {
        throw ConfigError("inline value names unknown X-symbol '" + id + "'");
      }
      it->value = v;
    }
  }
  return JointRange(std::move(s_alpha), std::move(x_alpha), std::move(list));
}

void write_joint_range_csv(std::ostream& out, const JointRange& jr) {
  out << "s,x\n";
  for (const auto& [s, x] : jr.pairs()) {
    out << csv_quote(jr.s_alphabet()[s].id) << ','
        << csv_quote(jr.x_alphabet()[x].id) << '\n';
  }
}

}  // namespace nsp
