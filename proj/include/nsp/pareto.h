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

// Privacy-utility frontiers by sweeping the Lagrange multiplier, and a
// generalization-style k-anonymity baseline to compare against.

#ifndef NSP_PARETO_H_
#define NSP_PARETO_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsp/greedy.h"
#include "nsp/joint_range.h"
#include "nsp/quantization.h"

namespace nsp {

struct ParetoPoint {
  double lambda = 0.0;
  double leakage_raw = 0.0;
  double leakage_norm = 0.0;
  double utility_raw = 0.0;
  double loss_norm = 0.0;
  Quantization quantization;
};

struct Frontier {
  Algorithm algorithm = Algorithm::kMinL0;
  UtilityKind utility = UtilityKind::kResolution;
  std::string dataset_id;
  // Leakage of the unquantized release was zero; leakage_norm then holds
  // absolute bits.
  bool degenerate = false;
  // Leakage of the unquantized release (the leakage normalizer).
  double leakage_reference = 0.0;
  // Normalizer of the utility-loss axis: H0(X) for U1, the minimum U2 over
  // the candidate points for U2.
  double utility_reference = 0.0;
  std::vector<ParetoPoint> points;
};

// `count` points geometrically spaced over [lo, hi], preceded by 0 when
// `with_zero` is set.
std::vector<double> geometric_grid(std::size_t count, double lo, double hi,
                                   bool with_zero);
std::vector<double> linear_grid(std::size_t count, double lo, double hi);
// 64 geometric points over [1e-3, 1e2] plus 0.
std::vector<double> default_lambda_grid();

struct SweepOptions {
  CodewordPolicy policy = CodewordPolicy::kCentroid;
  Distance distance = absolute_distance;
  // Add every accepted iterate of each run, not only its final quantization.
  bool include_iterates = true;
  // 0 picks the hardware concurrency.
  std::size_t threads = 0;
  std::string dataset_id;
};

// Leakage measure of an algorithm: L0 for the L0-minimizers, I* for the
// I*-minimizer.
double leakage_of(Algorithm algorithm, const JointRange& jr,
                  const Quantization& q);

// Runs `algorithm` once per lambda, normalizes, removes duplicate
// quantizations and dominated points, and sorts by utility loss. Throws
// ConfigError for an empty grid or a negative lambda.
Frontier sweep(const JointRange& jr, Algorithm algorithm, UtilityKind utility,
               const std::vector<double>& lambda_grid,
               const SweepOptions& options = {});

// Normalized (leakage, utility loss) of q against the references of
// `frontier`.
std::pair<double, double> normalize(const JointRange& jr,
                                    const Frontier& frontier,
                                    const Quantization& q,
                                    const Distance& distance = absolute_distance);

// True when a is no worse than b in both coordinates and better in one.
bool dominates(double loss_a, double leak_a, double loss_b, double leak_b);

// Merges clusters until every conditional range holds at least k s-values.
// The cluster with the smallest range (then smallest id) goes first and joins
// the cluster whose codeword is nearest; for categorical X the cluster with
// the nearest id. Throws InfeasibleError for k > |S| and ContractViolation
// for k = 0.
Quantization sweeney_baseline(const JointRange& jr, std::size_t k,
                              CodewordPolicy policy = CodewordPolicy::kCentroid,
                              const Distance& distance = absolute_distance);

void write_frontier_csv(std::ostream& out, const Frontier& frontier);

}  // namespace nsp

#endif  // NSP_PARETO_H_
