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

#include "nsp/quantization.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <utility>

#include "nsp/errors.h"

namespace nsp {

const char* to_string(CodewordPolicy policy) {
  return policy == CodewordPolicy::kCentroid ? "centroid" : "representative";
}

CodewordPolicy parse_codeword_policy(const std::string& text) {
  if (text == "centroid") return CodewordPolicy::kCentroid;
  if (text == "representative") return CodewordPolicy::kRepresentative;
  throw ConfigError("unknown codeword policy '" + text + "'");
}

const char* to_string(UtilityKind kind) {
  return kind == UtilityKind::kResolution ? "u1" : "u2";
}

UtilityKind parse_utility_kind(const std::string& text) {
  if (text == "u1") return UtilityKind::kResolution;
  if (text == "u2") return UtilityKind::kMaxDistortion;
  throw ConfigError("unknown utility '" + text + "'");
}

double absolute_distance(double a, double b) { return std::fabs(a - b); }

std::optional<double> compute_codeword(
    std::span<const XIndex> members,
    const std::vector<std::optional<double>>& values, CodewordPolicy policy) {
  if (members.empty()) throw ContractViolation("codeword of an empty cluster");
  double sum = 0.0;
  for (XIndex x : members) {
    if (!values[x]) return std::nullopt;
    sum += *values[x];
  }
  if (policy == CodewordPolicy::kRepresentative) return values[members[0]];
  return sum / static_cast<double>(members.size());
}

double members_distortion(std::span<const XIndex> members,
                          const std::vector<std::optional<double>>& values,
                          CodewordPolicy policy, const Distance& distance) {
  const std::optional<double> cw = compute_codeword(members, values, policy);
  if (!cw) {
    throw ConfigError("distortion requires numeric values on every X-symbol");
  }
  double worst = 0.0;
  for (XIndex x : members) worst = std::max(worst, distance(*values[x], *cw));
  return worst;
}

Quantization::Quantization(
    std::shared_ptr<const std::vector<std::optional<double>>> values,
    CodewordPolicy policy)
    : values_(std::move(values)), policy_(policy) {}

Quantization Quantization::singletons(const JointRange& jr,
                                      CodewordPolicy policy) {
  std::vector<std::vector<XIndex>> clusters;
  clusters.reserve(jr.x_size());
  for (XIndex x = 0; x < jr.x_size(); ++x) clusters.push_back({x});
  return from_clusters(jr, std::move(clusters), policy);
}

Quantization Quantization::all_in_one(const JointRange& jr,
                                      CodewordPolicy policy) {
  std::vector<XIndex> all(jr.x_size());
  std::iota(all.begin(), all.end(), XIndex{0});
  return from_clusters(jr, {std::move(all)}, policy);
}

Quantization Quantization::from_clusters(
    const JointRange& jr, std::vector<std::vector<XIndex>> clusters,
    CodewordPolicy policy) {
  std::vector<bool> seen(jr.x_size(), false);
  std::size_t covered = 0;
  for (auto& c : clusters) {
    if (c.empty()) throw ContractViolation("quantization has an empty cluster");
    std::sort(c.begin(), c.end());
    for (XIndex x : c) {
      if (x >= jr.x_size()) {
        throw ContractViolation("quantization member out of range");
      }
      if (seen[x]) {
        throw ContractViolation("quantization clusters are not disjoint");
      }
      seen[x] = true;
      ++covered;
    }
  }
  if (covered != jr.x_size()) {
    throw ContractViolation("quantization does not cover the X-alphabet");
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });

  Quantization q(
      std::make_shared<const std::vector<std::optional<double>>>(jr.x_values()),
      policy);
  q.clusters_ = std::move(clusters);
  q.codewords_.resize(q.clusters_.size());
  for (std::size_t i = 0; i < q.clusters_.size(); ++i) q.recompute_codeword(i);
  return q;
}

Quantization Quantization::from_labels(const JointRange& jr,
                                       std::span<const std::size_t> labels,
                                       CodewordPolicy policy) {
  if (labels.size() != jr.x_size()) {
    throw ContractViolation("label vector does not match the X-alphabet");
  }
  std::vector<std::vector<XIndex>> clusters;
  std::vector<std::pair<std::size_t, std::size_t>> label_to_block;
  for (XIndex x = 0; x < labels.size(); ++x) {
    auto it = std::find_if(label_to_block.begin(), label_to_block.end(),
                           [&](const auto& p) { return p.first == labels[x]; });
    if (it == label_to_block.end()) {
      label_to_block.emplace_back(labels[x], clusters.size());
      clusters.push_back({x});
    } else {
      clusters[it->second].push_back(x);
    }
  }
  return from_clusters(jr, std::move(clusters), policy);
}

const std::vector<XIndex>& Quantization::members(std::size_t pos) const {
  if (pos >= clusters_.size()) throw IndexError("cluster position out of range");
  return clusters_[pos];
}

ClusterId Quantization::id(std::size_t pos) const {
  return ClusterId{members(pos)[0]};
}

std::optional<double> Quantization::codeword(std::size_t pos) const {
  if (pos >= codewords_.size()) {
    throw IndexError("cluster position out of range");
  }
  return codewords_[pos];
}

std::size_t Quantization::position(ClusterId id) const {
  auto it = std::lower_bound(
      clusters_.begin(), clusters_.end(), id.min_member,
      [](const std::vector<XIndex>& c, XIndex x) { return c[0] < x; });
  if (it == clusters_.end() || (*it)[0] != id.min_member) {
    throw IndexError("no cluster with id " + std::to_string(id.min_member));
  }
  return static_cast<std::size_t>(it - clusters_.begin());
}

std::size_t Quantization::position_of_member(XIndex x) const {
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (std::binary_search(clusters_[i].begin(), clusters_[i].end(), x)) {
      return i;
    }
  }
  throw IndexError("x index " + std::to_string(x) + " not in quantization");
}

Quantization Quantization::merged(ClusterId a, ClusterId b) const {
  if (a == b) throw ContractViolation("cannot merge a cluster with itself");
  Quantization out = *this;
  out.merge_positions(position(a), position(b));
  return out;
}

void Quantization::merge_positions(std::size_t i, std::size_t j) {
  if (i == j) throw ContractViolation("cannot merge a cluster with itself");
  if (i >= clusters_.size() || j >= clusters_.size()) {
    throw IndexError("cluster position out of range");
  }
  if (j < i) std::swap(i, j);
  std::vector<XIndex> fused;
  fused.reserve(clusters_[i].size() + clusters_[j].size());
  std::merge(clusters_[i].begin(), clusters_[i].end(), clusters_[j].begin(),
             clusters_[j].end(), std::back_inserter(fused));
  // The fused cluster keeps position i: its minimum is clusters_[i][0], which
  // is already ordered correctly relative to all remaining clusters.
  clusters_[i] = std::move(fused);
  clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(j));
  codewords_.erase(codewords_.begin() + static_cast<std::ptrdiff_t>(j));
  recompute_codeword(i);
}

std::vector<std::size_t> Quantization::labels() const {
  std::vector<std::size_t> out(x_size(), 0);
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    for (XIndex x : clusters_[i]) out[x] = i;
  }
  return out;
}

void Quantization::recompute_codeword(std::size_t pos) {
  codewords_[pos] = compute_codeword(clusters_[pos], *values_, policy_);
}

double cluster_distortion(const Quantization& q, ClusterId c,
                          const Distance& distance) {
  return members_distortion(q.members(q.position(c)), q.values(), q.policy(),
                            distance);
}

void check_utility_available(const JointRange& jr, const UtilityChoice& u) {
  if (u.kind == UtilityKind::kMaxDistortion && !jr.x_numeric()) {
    throw ConfigError(
        "distortion utility requires numeric values on every X-symbol");
  }
}

double utility(const JointRange& jr, const Quantization& q,
               const UtilityChoice& u) {
  if (q.x_size() != jr.x_size()) {
    throw ContractViolation("quantization does not match the joint range");
  }
  if (u.kind == UtilityKind::kResolution) {
    std::size_t largest = 0;
    for (const auto& c : q.clusters()) largest = std::max(largest, c.size());
    return std::log2(static_cast<double>(jr.x_size())) -
           std::log2(static_cast<double>(largest));
  }
  double worst = 0.0;
  for (const auto& c : q.clusters()) {
    worst = std::max(worst,
                     members_distortion(c, q.values(), q.policy(), u.distance));
  }
  return worst == 0.0 ? 0.0 : -worst;
}

}  // namespace nsp
