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

// Greedy agglomerative quantizers.
//
// All three start from the singleton quantization and merge clusters pairwise
// while a Lagrangian (privacy term minus lambda times utility) decreases:
//
//   algorithm1_min_l0          minimizes L0 - lambda U
//   algorithm2_min_istar       minimizes log2 |P| - lambda U, where |P| is the
//                              component count of the confusability graph
//   algorithm3_l0_zero_istar   minimizes L0 - lambda U over merges that join
//                              components, until one component remains
//
// Runs are deterministic and single-threaded; concurrent runs over one
// JointRange are safe.

#ifndef NSP_GREEDY_H_
#define NSP_GREEDY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsp/confusability_graph.h"
#include "nsp/joint_range.h"
#include "nsp/quantization.h"

namespace nsp {

struct LagrangianConfig {
  double lambda = 0.0;
  UtilityChoice utility;
  CodewordPolicy policy = CodewordPolicy::kCentroid;
};

// Throws ConfigError for a negative or non-finite lambda, or for a distortion
// utility over categorical X.
void validate_config(const JointRange& jr, const LagrangianConfig& cfg);

enum class Algorithm {
  kMinL0,
  kMinIStar,
  kMinL0ZeroIStar,
};

// "l0", "istar", "l0-zero-istar".
const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& text);

enum class TerminationReason {
  kDeltaLNonNegative,
  kFullyMerged,
  kSingleComponent,
  kNoEligibleMerge,
};

const char* to_string(TerminationReason reason);

struct TraceEntry {
  std::size_t t = 0;
  // Quantization after iteration t. For a rejected iteration this is the
  // candidate that was evaluated and discarded.
  Quantization snapshot;
  double lagrangian = 0.0;
  // Change against the previous accepted iteration; empty at t = 0.
  std::optional<double> delta_l;
  bool accepted = true;
  std::vector<std::pair<ClusterId, ClusterId>> merged;
  std::size_t component_count = 0;
  double l0 = 0.0;
  double istar = 0.0;
  double utility = 0.0;
};

struct GreedyResult {
  Quantization final_quantization;
  std::vector<TraceEntry> trace;
  // Components of the final confusability graph as blocks of x indices.
  Decomposition final_decomposition;
  TerminationReason reason = TerminationReason::kNoEligibleMerge;
};

// L0 - lambda U. This is the minimized objective shifted by the constant
// H0(S), so its minimizers are unchanged.
double lagrangian_l0(const JointRange& jr, const Quantization& q,
                     const LagrangianConfig& cfg);

// log2 |P| - lambda U.
double lagrangian_istar(const JointRange& jr, const Quantization& q,
                        const LagrangianConfig& cfg);

GreedyResult algorithm1_min_l0(const JointRange& jr,
                               const LagrangianConfig& cfg);
GreedyResult algorithm2_min_istar(const JointRange& jr,
                                  const LagrangianConfig& cfg);
GreedyResult algorithm3_l0_zero_istar(const JointRange& jr,
                                      const LagrangianConfig& cfg);

GreedyResult run_greedy(Algorithm algorithm, const JointRange& jr,
                        const LagrangianConfig& cfg);

}  // namespace nsp

#endif  // NSP_GREEDY_H_
