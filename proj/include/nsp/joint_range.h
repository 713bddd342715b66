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

// Uncertain variables represented by their finite joint range.
//
// A pair of uncertain variables (S, X) carries no probability measure: all
// that is known is which (s, x) combinations can occur. Symbols are addressed
// by dense indices; their text ids only matter at ingestion and output.

#ifndef NSP_JOINT_RANGE_H_
#define NSP_JOINT_RANGE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nsp {

using SIndex = std::size_t;
using XIndex = std::size_t;

struct Symbol {
  std::string id;
  // Numeric realization; required on X-symbols for distortion utilities.
  std::optional<double> value;
};

// Fixed-universe bitset over symbol indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe);

  std::size_t universe() const { return universe_; }

  void insert(std::size_t i);
  bool contains(std::size_t i) const;
  std::size_t count() const;
  bool empty() const;
  bool intersects(const IndexSet& other) const;
  IndexSet& operator|=(const IndexSet& other);
  std::vector<std::size_t> to_vector() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Set of s-values compatible with an observation of X (or of a cluster of
// X-values).
using ConditionalRange = IndexSet;

// The joint range [[S, X]] together with both alphabets. Immutable once
// constructed; every marginal value appears in at least one pair.
class JointRange {
 public:
  // Throws ContractViolation when an invariant does not hold: empty or
  // duplicate ids, pair indices out of range, duplicate pairs, no pairs, or a
  // symbol that occurs in no pair.
  JointRange(std::vector<Symbol> s_alphabet, std::vector<Symbol> x_alphabet,
             std::vector<std::pair<SIndex, XIndex>> pairs);

  const std::vector<Symbol>& s_alphabet() const { return s_alphabet_; }
  const std::vector<Symbol>& x_alphabet() const { return x_alphabet_; }
  const std::vector<std::pair<SIndex, XIndex>>& pairs() const {
    return pairs_;
  }
  std::size_t s_size() const { return s_alphabet_.size(); }
  std::size_t x_size() const { return x_alphabet_.size(); }

  // True iff every X-symbol carries a numeric value.
  bool x_numeric() const { return x_numeric_; }
  std::vector<std::optional<double>> x_values() const;

  // [[S | x]]. Throws IndexError for an invalid x.
  const ConditionalRange& cond_range(XIndex x) const;

 private:
  std::vector<Symbol> s_alphabet_;
  std::vector<Symbol> x_alphabet_;
  std::vector<std::pair<SIndex, XIndex>> pairs_;
  std::vector<ConditionalRange> cond_ranges_;
  bool x_numeric_ = false;
};

// [[S | x]] as a free function.
ConditionalRange cond_range_x(const JointRange& jr, XIndex x);

// [[S | cluster]]: union of the per-symbol conditional ranges. Throws
// ContractViolation on an empty cluster and IndexError on a bad index.
ConditionalRange cond_range_cluster(const JointRange& jr,
                                    std::span<const XIndex> cluster);

}  // namespace nsp

#endif  // NSP_JOINT_RANGE_H_
