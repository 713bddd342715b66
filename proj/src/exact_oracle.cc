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

#include "nsp/exact_oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "nsp/confusability_graph.h"
#include "nsp/errors.h"
#include "nsp/measures.h"

namespace nsp {
namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PartitionEnumerator::PartitionEnumerator(std::size_t n) {
  if (n == 0) throw ContractViolation("cannot enumerate partitions of 0 items");
  if (n > kOracleMaxAlphabet) {
    throw SizeLimitError("exhaustive search supports at most " +
                         std::to_string(kOracleMaxAlphabet) +
                         " X-symbols, got " + std::to_string(n));
  }
  rgs_.assign(n, 0);
  max_.assign(n, 0);
}

bool PartitionEnumerator::next() {
  const std::size_t n = rgs_.size();
  // Rightmost position that can still grow; position 0 is pinned to 0.
  for (std::size_t i = n; i-- > 1;) {
    if (rgs_[i] <= max_[i - 1]) {
      ++rgs_[i];
      max_[i] = std::max(max_[i - 1], rgs_[i]);
      for (std::size_t k = i + 1; k < n; ++k) {
        rgs_[k] = 0;
        max_[k] = max_[i];
      }
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n) {
  PartitionEnumerator e(n);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(e.current());
  } while (e.next());
  return out;
}

const char* to_string(OracleProblem problem) {
  switch (problem) {
    case OracleProblem::kMinL0:
      return "l0";
    case OracleProblem::kMinIStar:
      return "istar";
    case OracleProblem::kMinL0ZeroIStar:
      return "l0-zero-istar";
  }
  return "unknown";
}

OracleProblem parse_oracle_problem(const std::string& text) {
  if (text == "l0") return OracleProblem::kMinL0;
  if (text == "istar") return OracleProblem::kMinIStar;
  if (text == "l0-zero-istar") return OracleProblem::kMinL0ZeroIStar;
  throw ConfigError("unknown oracle problem '" + text + "'");
}

namespace {

double combine(OracleProblem problem, const OracleConfig& cfg, double l0v,
               double istar, std::size_t components, double u) {
  if (problem == OracleProblem::kMinL0ZeroIStar && components != 1) {
    return kInf;
  }
  if (cfg.theta && u < *cfg.theta - kTol) return kInf;
  const double privacy = problem == OracleProblem::kMinIStar ? istar : l0v;
  if (cfg.theta) return privacy;
  return privacy - cfg.lagrangian.lambda * u;
}

void validate(const JointRange& jr, const OracleConfig& cfg) {
  validate_config(jr, cfg.lagrangian);
  if (cfg.theta && !std::isfinite(*cfg.theta)) {
    throw ConfigError("theta must be finite");
  }
}

}  // namespace

double oracle_objective(const JointRange& jr, OracleProblem problem,
                        const OracleConfig& cfg, const Quantization& q) {
  validate(jr, cfg);
  const std::size_t comps = component_count(jr, q);
  return combine(problem, cfg, l0(jr, q),
                 std::log2(static_cast<double>(comps)), comps,
                 utility(jr, q, cfg.lagrangian.utility));
}

OracleResult oracle_min(const JointRange& jr, OracleProblem problem,
                        const OracleConfig& cfg) {
  validate(jr, cfg);
  const std::size_t n = jr.x_size();
  PartitionEnumerator e(n);

  const std::size_t words = (jr.s_size() + 63) / 64;
  std::vector<std::uint64_t> x_range(n * words, 0);
  for (XIndex x = 0; x < n; ++x) {
    for (SIndex s : jr.cond_range(x).to_vector()) {
      x_range[x * words + s / 64] |= std::uint64_t{1} << (s % 64);
    }
  }
  const auto values = jr.x_values();
  const bool need_distortion =
      cfg.lagrangian.utility.kind == UtilityKind::kMaxDistortion;
  const double hs = h0(jr.s_size());
  const double hx = h0(n);

  std::vector<std::uint64_t> block_range(n * words);
  std::vector<std::size_t> block_size(n);
  std::vector<double> block_sum(n);
  std::vector<double> block_cw(n);
  std::vector<double> block_dbar(n);
  std::vector<std::size_t> parent(n);

  double best = kInf;
  std::vector<std::size_t> best_rgs;
  std::size_t count = 0;
  std::size_t visited = 0;
  double max_utility = -kInf;

  do {
    ++visited;
    const auto& rgs = e.current();
    const std::size_t k = e.block_count();
    std::fill(block_range.begin(), block_range.begin() + k * words, 0);
    std::fill(block_size.begin(), block_size.begin() + k, 0);
    std::fill(block_sum.begin(), block_sum.begin() + k, 0.0);
    for (XIndex x = 0; x < n; ++x) {
      const std::size_t b = rgs[x];
      for (std::size_t w = 0; w < words; ++w) {
        block_range[b * words + w] |= x_range[x * words + w];
      }
      if (need_distortion) {
        // The first member seen is the block minimum.
        if (block_size[b] == 0) block_cw[b] = *values[x];
        block_sum[b] += *values[x];
      }
      ++block_size[b];
    }

    std::size_t max_size = 0;
    std::size_t min_range = std::numeric_limits<std::size_t>::max();
    for (std::size_t b = 0; b < k; ++b) {
      max_size = std::max(max_size, block_size[b]);
      std::size_t r = 0;
      for (std::size_t w = 0; w < words; ++w) {
        r += static_cast<std::size_t>(std::popcount(block_range[b * words + w]));
      }
      min_range = std::min(min_range, r);
    }

    double u;
    if (need_distortion) {
      for (std::size_t b = 0; b < k; ++b) {
        if (cfg.lagrangian.policy == CodewordPolicy::kCentroid) {
          block_cw[b] = block_sum[b] / static_cast<double>(block_size[b]);
        }
        block_dbar[b] = 0.0;
      }
      double worst = 0.0;
      for (XIndex x = 0; x < n; ++x) {
        const std::size_t b = rgs[x];
        block_dbar[b] = std::max(
            block_dbar[b], cfg.lagrangian.utility.distance(*values[x],
                                                           block_cw[b]));
        worst = std::max(worst, block_dbar[b]);
      }
      u = worst == 0.0 ? 0.0 : -worst;
    } else {
      u = hx - std::log2(static_cast<double>(max_size));
    }

    std::size_t components = k;
    for (std::size_t b = 0; b < k; ++b) parent[b] = b;
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t a = 0; a < k && components > 1; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        bool meet = false;
        for (std::size_t w = 0; w < words && !meet; ++w) {
          meet = (block_range[a * words + w] & block_range[b * words + w]) != 0;
        }
        if (!meet) continue;
        const std::size_t ra = find(a);
        const std::size_t rb = find(b);
        if (ra != rb) {
          parent[std::max(ra, rb)] = std::min(ra, rb);
          --components;
        }
      }
    }

    if (problem != OracleProblem::kMinL0ZeroIStar || components == 1) {
      max_utility = std::max(max_utility, u);
    }
    const double l0v = hs - std::log2(static_cast<double>(min_range));
    const double istar = std::log2(static_cast<double>(components));
    const double value = combine(problem, cfg, l0v, istar, components, u);
    if (value == kInf) continue;
    if (value < best - kTol) {
      best = value;
      best_rgs = rgs;
      count = 1;
    } else if (value <= best + kTol) {
      ++count;
    }
  } while (e.next());

  if (best_rgs.empty()) {
    std::ostringstream msg;
    msg << "no quantization reaches utility " << *cfg.theta
        << "; the maximum achievable utility is " << max_utility;
    throw InfeasibleError(msg.str());
  }
  return OracleResult{best,
                      Quantization::from_labels(jr, best_rgs,
                                                cfg.lagrangian.policy),
                      count, visited};
}

}  // namespace nsp
