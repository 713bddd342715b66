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

#include "nsp/measures.h"

#include <algorithm>
#include <cmath>

#include "nsp/errors.h"

namespace nsp {

double h0(std::size_t alphabet_size) {
  if (alphabet_size == 0) throw ContractViolation("h0 of an empty alphabet");
  return std::log2(static_cast<double>(alphabet_size));
}

std::vector<std::size_t> cluster_range_sizes(const JointRange& jr,
                                             const Quantization& q) {
  if (q.x_size() != jr.x_size()) {
    throw ContractViolation("quantization does not match the joint range");
  }
  std::vector<std::size_t> out;
  out.reserve(q.size());
  for (const auto& c : q.clusters()) {
    out.push_back(cond_range_cluster(jr, c).count());
  }
  return out;
}

double b0(const JointRange& jr, const Quantization& q) {
  const auto sizes = cluster_range_sizes(jr, q);
  return h0(*std::min_element(sizes.begin(), sizes.end()));
}

double l0(const JointRange& jr, const Quantization& q) {
  return h0(jr.s_size()) - b0(jr, q);
}

double i0_forward(const JointRange& jr, const Quantization& q) {
  const auto sizes = cluster_range_sizes(jr, q);
  return h0(jr.s_size()) - h0(*std::max_element(sizes.begin(), sizes.end()));
}

bool is_k_anonymous(const JointRange& jr, const Quantization& q,
                    std::size_t k) {
  if (k == 0) throw ContractViolation("k-anonymity needs k >= 1");
  const auto sizes = cluster_range_sizes(jr, q);
  return std::all_of(sizes.begin(), sizes.end(),
                     [k](std::size_t n) { return n >= k; });
}

}  // namespace nsp
