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

#include "nsp/joint_range.h"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <unordered_set>

#include "nsp/errors.h"

namespace nsp {

IndexSet::IndexSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

void IndexSet::insert(std::size_t i) {
  if (i >= universe_) throw IndexError("IndexSet: index out of universe");
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool IndexSet::contains(std::size_t i) const {
  if (i >= universe_) return false;
  return (words_[i / 64] >> (i % 64)) & 1u;
}

std::size_t IndexSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool IndexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool IndexSet::intersects(const IndexSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

IndexSet& IndexSet::operator|=(const IndexSet& other) {
  if (other.universe_ != universe_) {
    throw ContractViolation("IndexSet: union over different universes");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<std::size_t> IndexSet::to_vector() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

namespace {

void check_alphabet(const std::vector<Symbol>& alphabet, const char* name) {
  std::unordered_set<std::string> seen;
  for (const Symbol& sym : alphabet) {
    if (sym.id.empty()) {
      throw ContractViolation(std::string(name) + " alphabet has an empty id");
    }
    if (!seen.insert(sym.id).second) {
      throw ContractViolation(std::string(name) + " alphabet repeats id '" +
                              sym.id + "'");
    }
  }
}

}  // namespace

JointRange::JointRange(std::vector<Symbol> s_alphabet,
                       std::vector<Symbol> x_alphabet,
                       std::vector<std::pair<SIndex, XIndex>> pairs)
    : s_alphabet_(std::move(s_alphabet)),
      x_alphabet_(std::move(x_alphabet)),
      pairs_(std::move(pairs)) {
  check_alphabet(s_alphabet_, "S");
  check_alphabet(x_alphabet_, "X");
  if (pairs_.empty()) throw ContractViolation("joint range has no pairs");

  std::set<std::pair<SIndex, XIndex>> seen;
  std::vector<bool> s_used(s_size(), false);
  cond_ranges_.assign(x_size(), ConditionalRange(s_size()));
  for (const auto& [s, x] : pairs_) {
    if (s >= s_size() || x >= x_size()) {
      throw ContractViolation("joint range pair index out of range");
    }
    if (!seen.insert({s, x}).second) {
      throw ContractViolation("joint range has duplicate pair (" +
                              s_alphabet_[s].id + ", " + x_alphabet_[x].id +
                              ")");
    }
    s_used[s] = true;
    cond_ranges_[x].insert(s);
  }
  for (SIndex s = 0; s < s_size(); ++s) {
    if (!s_used[s]) {
      throw ContractViolation("S symbol '" + s_alphabet_[s].id +
                              "' appears in no pair");
    }
  }
  for (XIndex x = 0; x < x_size(); ++x) {
    if (cond_ranges_[x].empty()) {
      throw ContractViolation("X symbol '" + x_alphabet_[x].id +
                              "' appears in no pair");
    }
  }
  x_numeric_ = std::all_of(x_alphabet_.begin(), x_alphabet_.end(),
                           [](const Symbol& s) { return s.value.has_value(); });
}

std::vector<std::optional<double>> JointRange::x_values() const {
  std::vector<std::optional<double>> out;
  out.reserve(x_size());
  for (const Symbol& sym : x_alphabet_) out.push_back(sym.value);
  return out;
}

const ConditionalRange& JointRange::cond_range(XIndex x) const {
  if (x >= x_size()) throw IndexError("x index out of range");
  return cond_ranges_[x];
}

ConditionalRange cond_range_x(const JointRange& jr, XIndex x) {
  return jr.cond_range(x);
}

ConditionalRange cond_range_cluster(const JointRange& jr,
                                    std::span<const XIndex> cluster) {
  if (cluster.empty()) {
    throw ContractViolation("conditional range of an empty cluster");
  }
  ConditionalRange out(jr.s_size());
  for (XIndex x : cluster) out |= jr.cond_range(x);
  return out;
}

}  // namespace nsp
