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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "nsp/errors.h"
#include "nsp/ingest.h"
#include "toy.h"

namespace nsp {
namespace {

const char* kToyCsv =
    "s,x\n"
    "s1,x1\ns1,x2\ns2,x1\ns3,x3\ns3,x4\ns4,x5\ns5,x6\ns6,x7\n";

IngestResult load(const std::string& text, const IngestOptions& opt = {},
                  const ColumnRef& s = std::string("s"),
                  const ColumnRef& x = std::string("x")) {
  std::istringstream in(text);
  return load_csv_stream(in, s, x, opt);
}

IngestErrorKind error_kind(const std::string& text,
                           const IngestOptions& opt = {}) {
  try {
    load(text, opt);
  } catch (const IngestError& e) {
    return e.kind();
  }
  FAIL("expected an IngestError");
  return IngestErrorKind::kEmpty;
}

// Pairs as sorted (s id, x id) strings, independent of symbol order.
std::set<std::pair<std::string, std::string>> pair_names(const JointRange& jr) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [s, x] : jr.pairs()) {
    out.emplace(jr.s_alphabet()[s].id, jr.x_alphabet()[x].id);
  }
  return out;
}

TEST_CASE("toy csv stats") {
  const IngestResult r = load(kToyCsv);
  CHECK(r.stats == DatasetStats{8, 6, 7, 8, 8});
  CHECK(r.joint_range.s_size() == 6);
  CHECK(r.joint_range.x_size() == 7);
  CHECK_FALSE(r.joint_range.x_numeric());
  CHECK(pair_names(r.joint_range) == pair_names(testing::toy()));
  CHECK(r.joint_range.x_alphabet()[2].id == "x3");
}

TEST_CASE("single row and duplicates") {
  const IngestResult one = load("s,x\na,1\n");
  CHECK(one.joint_range.s_size() == 1);
  CHECK(one.joint_range.x_size() == 1);
  CHECK(one.stats == DatasetStats{1, 1, 1, 1, 1});

  const IngestResult two = load("s,x\na,1\na,1\n");
  CHECK(two.stats.record_count == 2);
  CHECK(two.stats.distinct_pairs == 1);
  CHECK(two.stats.singleton_pairs == 0);
  CHECK(two.joint_range.pairs().size() == 1);

  std::string doubled = kToyCsv;
  doubled += std::string(kToyCsv).substr(4);
  const IngestResult d = load(doubled);
  CHECK(d.stats == DatasetStats{16, 6, 7, 8, 0});

  IngestOptions opt;
  opt.drop_duplicate_records = true;
  CHECK(load(doubled, opt).stats == DatasetStats{8, 6, 7, 8, 8});
}

TEST_CASE("missing values") {
  const IngestResult r = load("s,x\na,1\nb,-9\n?,2\n,3\nc,\nd, ? \ne,4\n");
  CHECK(r.stats.record_count == 2);
  CHECK(r.joint_range.s_size() == 2);
  CHECK(r.joint_range.x_size() == 2);
  CHECK(r.joint_range.x_numeric());

  IngestOptions opt;
  opt.missing = {"NA"};
  const IngestResult custom = load("s,x\na,NA\nb,-9\n", opt);
  CHECK(custom.stats.record_count == 1);
  CHECK(custom.joint_range.x_alphabet()[0].id == "-9");

  CHECK(error_kind("s,x\na,-9\n?,1\n") == IngestErrorKind::kEmpty);
}

TEST_CASE("column selection") {
  const std::string text = "id,age,chol\n1,30,200\n2,31,210\n3,30,-9\n";
  const IngestResult by_name =
      load(text, {}, std::string("age"), std::string("chol"));
  const IngestResult by_index = load(text, {}, std::size_t{1}, std::size_t{2});
  CHECK(by_name.joint_range.pairs() == by_index.joint_range.pairs());
  CHECK(by_name.stats.record_count == 2);
  CHECK(*by_name.joint_range.x_values()[1] == 210.0);

  IngestOptions no_header;
  no_header.has_header = false;
  const IngestResult raw =
      load("30,200\n31,210\n", no_header, std::size_t{0}, std::size_t{1});
  CHECK(raw.stats.record_count == 2);

  CHECK(std::get<std::size_t>(parse_column_ref("12")) == 12);
  CHECK(std::get<std::string>(parse_column_ref("chol")) == "chol");
  CHECK(std::get<std::string>(parse_column_ref("-1")) == "-1");
}

TEST_CASE("ingestion errors carry a category and row") {
  CHECK(error_kind("a,b\n1,2\n") == IngestErrorKind::kMissingColumn);
  CHECK(error_kind("") == IngestErrorKind::kEmpty);
  try {
    load("s,x\na,1\nb\n");
    FAIL("expected a malformed row");
  } catch (const IngestError& e) {
    CHECK(e.kind() == IngestErrorKind::kMalformedRow);
    CHECK(e.row() == 3);
  }
  IngestOptions numeric;
  numeric.require_numeric_x = true;
  try {
    load("s,x\na,1\n\nb,2\nc,high\n", numeric);
    FAIL("expected a numeric parse failure");
  } catch (const IngestError& e) {
    CHECK(e.kind() == IngestErrorKind::kNumericParse);
    CHECK(e.row() == 5);
    CHECK(std::string(e.what()).find("row 5") != std::string::npos);
  }
  try {
    load_csv("/nonexistent/file.csv", std::string("s"), std::string("x"));
    FAIL("expected a missing file");
  } catch (const IngestError& e) {
    CHECK(e.kind() == IngestErrorKind::kMissingFile);
  }
  try {
    load("s,x\na,\"open\n");
    FAIL("expected an unterminated quote");
  } catch (const IngestError& e) {
    CHECK(e.kind() == IngestErrorKind::kMalformedRow);
    CHECK(e.row() == 2);
  }
}

TEST_CASE("quoted fields and line endings") {
  const auto rows = [] {
    std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",x,\n");
    return parse_csv(in);
  }();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].cells ==
        std::vector<std::string>{"a", "b,c", "say \"hi\""});
  CHECK(rows[1].cells == std::vector<std::string>{"multi\nline", "x", ""});
  CHECK(rows[0].line == 1);
  CHECK(rows[1].line == 2);

  const IngestResult r = load("s , x\n\"a b\" , 1.5 \n");
  CHECK(r.joint_range.s_alphabet()[0].id == "a b");
  CHECK(*r.joint_range.x_values()[0] == 1.5);

  IngestOptions semicolon;
  semicolon.delimiter = ';';
  CHECK(load("s;x\na;1,5\n", semicolon).joint_range.x_alphabet()[0].id ==
        "1,5");
}

TEST_CASE("numeric detection") {
  CHECK(*parse_number("+2.5") == 2.5);
  CHECK(*parse_number("-3") == -3.0);
  CHECK(*parse_number("1e3") == 1000.0);
  CHECK_FALSE(parse_number("2.5mg"));
  CHECK_FALSE(parse_number(""));
  CHECK_FALSE(parse_number("+"));
  CHECK_FALSE(parse_number("inf"));
  CHECK_FALSE(parse_number("nan"));
  CHECK_FALSE(load("s,x\na,1\nb,two\n").joint_range.x_numeric());
}

TEST_CASE("reloading a written joint range is idempotent") {
  std::mt19937_64 rng(4096);
  for (int trial = 0; trial < 100; ++trial) {
    const JointRange jr = testing::random_joint_range(rng, 9, 8, 0.2);
    std::ostringstream out;
    write_joint_range_csv(out, jr);
    const IngestResult r = load(out.str());
    CHECK(pair_names(r.joint_range) == pair_names(jr));
    CHECK(r.stats.distinct_pairs == jr.pairs().size());
    CHECK(r.stats.singleton_pairs == jr.pairs().size());

    std::ostringstream again;
    write_joint_range_csv(again, r.joint_range);
    CHECK(pair_names(load(again.str()).joint_range) == pair_names(jr));
  }
  const JointRange odd({{"a,b", {}}, {" c", {}}}, {{"\"q\"", {}}},
                       {{0, 0}, {1, 0}});
  std::ostringstream out;
  write_joint_range_csv(out, odd);
  CHECK(pair_names(load(out.str()).joint_range) == pair_names(odd));
}

TEST_CASE("missing-value filtering never leaves unused symbols") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> cell(0, 5);
  const std::vector<std::string> s_vals = {"a", "b", "-9", "c", "?", ""};
  const std::vector<std::string> x_vals = {"1", "-9", "2", "?", "3", ""};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = "s,x\n";
    for (int row = 0; row < 8; ++row) {
      text += s_vals[cell(rng)] + "," + x_vals[cell(rng)] + "\n";
    }
    try {
      const IngestResult r = load(text);
      std::vector<bool> s_used(r.joint_range.s_size());
      std::vector<bool> x_used(r.joint_range.x_size());
      for (const auto& [s, x] : r.joint_range.pairs()) {
        s_used[s] = true;
        x_used[x] = true;
      }
      CHECK(std::all_of(s_used.begin(), s_used.end(), [](bool b) { return b; }));
      CHECK(std::all_of(x_used.begin(), x_used.end(), [](bool b) { return b; }));
      CHECK(r.stats.distinct_pairs <= r.stats.record_count);
      CHECK(r.stats.singleton_pairs <= r.stats.distinct_pairs);
    } catch (const IngestError& e) {
      CHECK(e.kind() == IngestErrorKind::kEmpty);
    }
  }
}

TEST_CASE("inline pairs") {
  const JointRange jr = parse_inline_pairs(
      "s1:x1, s1:x2, s2:x1, s3:x3, s3:x4, s4:x5, s5:x6, s6:x7",
      "x1=0.2,x2=0.1,x3=0.4,x4=0.3,x5=0.6,x6=1.5,x7=1.0");
  CHECK(pair_names(jr) == pair_names(testing::toy()));
  CHECK(jr.x_numeric());
  CHECK(*jr.x_values()[5] == 1.5);
  CHECK_FALSE(parse_inline_pairs("a:b").x_numeric());
  CHECK_THROWS_AS(parse_inline_pairs("a-b"), ConfigError);
  CHECK_THROWS_AS(parse_inline_pairs(""), ConfigError);
  CHECK_THROWS_AS(parse_inline_pairs("a:b", "c=1"), ConfigError);
  CHECK_THROWS_AS(parse_inline_pairs("a:b", "b=x"), ConfigError);
}

}  // namespace
}  // namespace nsp
