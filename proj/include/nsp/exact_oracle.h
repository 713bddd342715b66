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

// Exhaustive search over all quantizations of a small X-alphabet.

#ifndef NSP_EXACT_ORACLE_H_
#define NSP_EXACT_ORACLE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nsp/greedy.h"
#include "nsp/joint_range.h"
#include "nsp/quantization.h"

namespace nsp {

inline constexpr std::size_t kOracleMaxAlphabet = 12;

// Walks every set partition of {0, ..., n-1} as a restricted-growth string
// (a[0] = 0, a[i] <= 1 + max(a[0..i-1])) in lexicographic order.
class PartitionEnumerator {
 public:
  // Throws SizeLimitError for n > kOracleMaxAlphabet and ContractViolation
  // for n = 0.
  explicit PartitionEnumerator(std::size_t n);

  const std::vector<std::size_t>& current() const { return rgs_; }
  // Number of blocks of the current partition.
  std::size_t block_count() const { return max_[rgs_.size() - 1] + 1; }
  // Advances; returns false once every partition has been visited.
  bool next();

 private:
  std::vector<std::size_t> rgs_;
  // max_[i] = max(rgs_[0..i]).
  std::vector<std::size_t> max_;
};

// Every RGS of length n, in order. Intended for small n.
std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n);

enum class OracleProblem {
  kMinL0,
  kMinIStar,
  kMinL0ZeroIStar,
};

const char* to_string(OracleProblem problem);
// "l0", "istar", "l0-zero-istar".
OracleProblem parse_oracle_problem(const std::string& text);

// Either the Lagrangian form (minimize privacy - lambda U) or the constrained
// form (minimize privacy subject to U >= theta).
struct OracleConfig {
  LagrangianConfig lagrangian;
  std::optional<double> theta;
};

struct OracleResult {
  double value = 0.0;
  Quantization quantization;
  std::size_t optimum_count = 0;
  std::size_t partitions_visited = 0;
};

// Exact optimum. Among tied partitions (within 1e-9) the first in RGS order is
// returned. Throws SizeLimitError above kOracleMaxAlphabet, ConfigError for an
// invalid configuration and InfeasibleError when no partition meets theta.
OracleResult oracle_min(const JointRange& jr, OracleProblem problem,
                        const OracleConfig& cfg);

// The objective oracle_min minimizes, evaluated on one quantization. Greedy
// results are compared against the oracle through this function.
double oracle_objective(const JointRange& jr, OracleProblem problem,
                        const OracleConfig& cfg, const Quantization& q);

}  // namespace nsp

#endif  // NSP_EXACT_ORACLE_H_
