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

// Non-stochastic information measures of a released quantization. All values
// are in bits.

#ifndef NSP_MEASURES_H_
#define NSP_MEASURES_H_

#include <cstddef>
#include <vector>

#include "nsp/joint_range.h"
#include "nsp/quantization.h"

namespace nsp {

// Hartley entropy log2(size). Throws ContractViolation for size 0.
double h0(std::size_t alphabet_size);

// |[[S | cluster]]| for every cluster of q, in cluster order.
std::vector<std::size_t> cluster_range_sizes(const JointRange& jr,
                                             const Quantization& q);

// min over clusters of log2 |[[S | cluster]]|.
double b0(const JointRange& jr, const Quantization& q);

// Maximal leakage H0(S) - B0(S | X^).
double l0(const JointRange& jr, const Quantization& q);

// H0(S) - max over clusters of log2 |[[S | cluster]]|.
double i0_forward(const JointRange& jr, const Quantization& q);

// Every cluster's conditional range holds at least k s-values. Decided on
// integer cardinalities. Throws ContractViolation for k = 0.
bool is_k_anonymous(const JointRange& jr, const Quantization& q,
                    std::size_t k);

}  // namespace nsp

#endif  // NSP_MEASURES_H_
