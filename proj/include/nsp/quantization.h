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

#ifndef NSP_QUANTIZATION_H_
#define NSP_QUANTIZATION_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsp/joint_range.h"

namespace nsp {

enum class CodewordPolicy {
  kCentroid,        // arithmetic mean of the member values
  kRepresentative,  // value of the minimum-index member
};

const char* to_string(CodewordPolicy policy);
// Accepts "centroid" and "representative". Throws ConfigError otherwise.
CodewordPolicy parse_codeword_policy(const std::string& text);

// A cluster is identified by its minimum member index. The id is stable when
// other clusters merge and survives a merge as the smaller of the two ids.
struct ClusterId {
  XIndex min_member = 0;
  friend auto operator<=>(const ClusterId&, const ClusterId&) = default;
};

using Distance = std::function<double(double, double)>;

// |a - b|.
double absolute_distance(double a, double b);

// Codeword of a member set under `policy`, or nullopt when any member has no
// numeric value. `members` must be sorted ascending and non-empty.
std::optional<double> compute_codeword(
    std::span<const XIndex> members,
    const std::vector<std::optional<double>>& values, CodewordPolicy policy);

// max over members of distance(value, codeword). Throws ConfigError when a
// member has no numeric value.
double members_distortion(std::span<const XIndex> members,
                          const std::vector<std::optional<double>>& values,
                          CodewordPolicy policy, const Distance& distance);

// A partition of the X-alphabet with one codeword per cluster. Clusters are
// kept sorted by their minimum member, and members within a cluster are
// sorted ascending, so two quantizations of the same partition compare equal.
class Quantization {
 public:
  static Quantization singletons(const JointRange& jr, CodewordPolicy policy);
  static Quantization all_in_one(const JointRange& jr, CodewordPolicy policy);
  // Throws ContractViolation unless `clusters` is a partition of the
  // X-alphabet into non-empty blocks.
  static Quantization from_clusters(const JointRange& jr,
                                    std::vector<std::vector<XIndex>> clusters,
                                    CodewordPolicy policy);
  // `labels[x]` is an arbitrary block label for x.
  static Quantization from_labels(const JointRange& jr,
                                  std::span<const std::size_t> labels,
                                  CodewordPolicy policy);

  std::size_t size() const { return clusters_.size(); }
  std::size_t x_size() const { return values_->size(); }
  CodewordPolicy policy() const { return policy_; }

  const std::vector<std::vector<XIndex>>& clusters() const {
    return clusters_;
  }
  const std::vector<XIndex>& members(std::size_t pos) const;
  ClusterId id(std::size_t pos) const;
  std::optional<double> codeword(std::size_t pos) const;
  const std::vector<std::optional<double>>& values() const { return *values_; }

  // Position of the cluster with the given id. Throws IndexError.
  std::size_t position(ClusterId id) const;
  // Position of the cluster containing x. Throws IndexError.
  std::size_t position_of_member(XIndex x) const;

  // Copy with clusters `a` and `b` fused and the codeword recomputed. Throws
  // ContractViolation when a == b and IndexError for unknown ids.
  Quantization merged(ClusterId a, ClusterId b) const;
  // In-place variant addressed by positions.
  void merge_positions(std::size_t i, std::size_t j);

  // Restricted-growth labelling: x -> position of its cluster.
  std::vector<std::size_t> labels() const;

  friend bool operator==(const Quantization& a, const Quantization& b) {
    return a.clusters_ == b.clusters_;
  }

 private:
  Quantization(std::shared_ptr<const std::vector<std::optional<double>>> values,
               CodewordPolicy policy);
  void recompute_codeword(std::size_t pos);

  std::shared_ptr<const std::vector<std::optional<double>>> values_;
  CodewordPolicy policy_;
  std::vector<std::vector<XIndex>> clusters_;
  std::vector<std::optional<double>> codewords_;
};

enum class UtilityKind {
  kResolution,     // U1 = H0(X) - log2(max cluster size)
  kMaxDistortion,  // U2 = -max cluster distortion
};

const char* to_string(UtilityKind kind);
// Accepts "u1" and "u2". Throws ConfigError otherwise.
UtilityKind parse_utility_kind(const std::string& text);

struct UtilityChoice {
  UtilityKind kind = UtilityKind::kResolution;
  Distance distance = absolute_distance;
};

double cluster_distortion(const Quantization& q, ClusterId c,
                          const Distance& distance = absolute_distance);

double utility(const JointRange& jr, const Quantization& q,
               const UtilityChoice& u);

// Throws ConfigError when `u` needs numeric X-values that `jr` lacks.
void check_utility_available(const JointRange& jr, const UtilityChoice& u);

}  // namespace nsp

#endif  // NSP_QUANTIZATION_H_
