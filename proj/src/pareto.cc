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

#include "nsp/pareto.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include "nsp/confusability_graph.h"
#include "nsp/errors.h"
#include "nsp/measures.h"

namespace nsp {
namespace {

constexpr double kCoordEps = 1e-9;

struct Candidate {
  double lambda;
  double leakage;
  double utility;
  Quantization q;
};

}  // namespace

std::vector<double> geometric_grid(std::size_t count, double lo, double hi,
                                   bool with_zero) {
  if (count == 0 || !(lo > 0.0) || !(hi >= lo)) {
    throw ConfigError("geometric grid needs count >= 1 and 0 < lo <= hi");
  }
  std::vector<double> out;
  if (with_zero) out.push_back(0.0);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi
                                 : lo * std::exp(ratio * static_cast<double>(i)));
  }
  return out;
}

std::vector<double> linear_grid(std::size_t count, double lo, double hi) {
  if (count == 0 || !(lo >= 0.0) || !(hi >= lo)) {
    throw ConfigError("linear grid needs count >= 1 and 0 <= lo <= hi");
  }
  std::vector<double> out;
  if (count == 1) return {lo};
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi : lo + step * static_cast<double>(i));
  }
  return out;
}

std::vector<double> default_lambda_grid() {
  return geometric_grid(64, 1e-3, 1e2, true);
}

double leakage_of(Algorithm algorithm, const JointRange& jr,
                  const Quantization& q) {
  return algorithm == Algorithm::kMinIStar ? maximin_information(jr, q)
                                           : l0(jr, q);
}

bool dominates(double loss_a, double leak_a, double loss_b, double leak_b) {
  const bool no_worse =
      loss_a <= loss_b + kCoordEps && leak_a <= leak_b + kCoordEps;
  const bool better =
      loss_a < loss_b - kCoordEps || leak_a < leak_b - kCoordEps;
  return no_worse && better;
}

namespace {

double normalized_loss(const Frontier& f, double u) {
  if (f.utility_reference == 0.0) return 0.0;
  return f.utility == UtilityKind::kResolution ? 1.0 - u / f.utility_reference
                                               : u / f.utility_reference;
}

double normalized_leakage(const Frontier& f, double leak) {
  return f.degenerate ? leak : leak / f.leakage_reference;
}

}  // namespace

std::pair<double, double> normalize(const JointRange& jr,
                                    const Frontier& frontier,
                                    const Quantization& q,
                                    const Distance& distance) {
  const double u = utility(jr, q, UtilityChoice{frontier.utility, distance});
  return {normalized_leakage(frontier, leakage_of(frontier.algorithm, jr, q)),
          normalized_loss(frontier, u)};
}

Frontier sweep(const JointRange& jr, Algorithm algorithm, UtilityKind utility_kind,
               const std::vector<double>& lambda_grid,
               const SweepOptions& options) {
  if (lambda_grid.empty()) throw ConfigError("lambda grid is empty");
  std::vector<LagrangianConfig> configs;
  for (double lambda : lambda_grid) {
    LagrangianConfig cfg{lambda, UtilityChoice{utility_kind, options.distance},
                         options.policy};
    validate_config(jr, cfg);
    configs.push_back(std::move(cfg));
  }

  std::vector<std::optional<GreedyResult>> results(configs.size());
  std::size_t threads = options.threads;
  if (threads == 0) {
    threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, configs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](std::size_t w) {
    try {
      for (std::size_t i = next++; i < configs.size(); i = next++) {
        results[i] = run_greedy(algorithm, jr, configs[i]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const GreedyResult& r = *results[i];
    const double lambda = configs[i].lambda;
    if (options.include_iterates) {
      for (const TraceEntry& e : r.trace) {
        if (!e.accepted) continue;
        const double leak = algorithm == Algorithm::kMinIStar ? e.istar : e.l0;
        candidates.push_back({lambda, leak, e.utility, e.snapshot});
      }
    } else {
      const Quantization& q = r.final_quantization;
      candidates.push_back({lambda, leakage_of(algorithm, jr, q),
                            utility(jr, q, configs[i].utility), q});
    }
  }

  Frontier f;
  f.algorithm = algorithm;
  f.utility = utility_kind;
  f.dataset_id = options.dataset_id;
  f.leakage_reference = leakage_of(
      algorithm, jr, Quantization::singletons(jr, options.policy));
  f.degenerate = f.leakage_reference == 0.0;
  if (utility_kind == UtilityKind::kResolution) {
    f.utility_reference = h0(jr.x_size());
  } else {
    double lowest = 0.0;
    for (const auto& c : candidates) lowest = std::min(lowest, c.utility);
    f.utility_reference = lowest;
  }

  std::vector<ParetoPoint> unique;
  for (auto& c : candidates) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const ParetoPoint& p) {
                                    return p.quantization == c.q;
                                  });
    if (seen) continue;
    unique.push_back(ParetoPoint{c.lambda, c.leakage,
                                 normalized_leakage(f, c.leakage), c.utility,
                                 normalized_loss(f, c.utility), std::move(c.q)});
  }

  std::stable_sort(unique.begin(), unique.end(),
                   [](const ParetoPoint& a, const ParetoPoint& b) {
                     return a.loss_norm < b.loss_norm;
                   });
  // Staircase: walk by increasing loss, keeping a point only when it leaks
  // strictly less than everything kept so far. Points whose loss matches
  // within tolerance compete on leakage first.
  std::vector<ParetoPoint> kept;
  for (std::size_t i = 0; i < unique.size();) {
    std::size_t end = i + 1;
    std::size_t best = i;
    while (end < unique.size() &&
           unique[end].loss_norm <= unique[i].loss_norm + kCoordEps) {
      if (unique[end].leakage_norm < unique[best].leakage_norm - kCoordEps) {
        best = end;
      }
      ++end;
    }
    if (kept.empty() ||
        unique[best].leakage_norm < kept.back().leakage_norm - kCoordEps) {
      kept.push_back(std::move(unique[best]));
    }
    i = end;
  }
  f.points = std::move(kept);
  return f;
}

Quantization sweeney_baseline(const JointRange& jr, std::size_t k,
                              CodewordPolicy policy, const Distance& distance) {
  if (k == 0) throw ContractViolation("k-anonymity needs k >= 1");
  if (k > jr.s_size()) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds |S| = " +
                          std::to_string(jr.s_size()));
  }
  Quantization q = Quantization::singletons(jr, policy);
  std::vector<ConditionalRange> ranges;
  for (XIndex x = 0; x < jr.x_size(); ++x) ranges.push_back(jr.cond_range(x));
  const bool numeric = jr.x_numeric();

  while (true) {
    std::optional<std::size_t> worst;
    std::size_t worst_size = k;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const std::size_t n = ranges[i].count();
      if (n < worst_size) {
        worst = i;
        worst_size = n;
      }
    }
    if (!worst) break;
    const std::size_t i = *worst;

    std::size_t partner = i;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j == i) continue;
      const double d =
          numeric ? distance(*q.codeword(i), *q.codeword(j))
                  : std::fabs(static_cast<double>(q.id(i).min_member) -
                              static_cast<double>(q.id(j).min_member));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    const std::size_t lo = std::min(i, partner);
    const std::size_t hi = std::max(i, partner);
    q.merge_positions(lo, hi);
    ranges[lo] |= ranges[hi];
    ranges.erase(ranges.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return q;
}

void write_frontier_csv(std::ostream& out, const Frontier& frontier) {
  out << "lambda,leakage_raw,leakage_norm,utility_raw,loss_norm\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(12);
  for (const auto& p : frontier.points) {
    out << p.lambda << ',' << p.leakage_raw << ',' << p.leakage_norm << ','
        << p.utility_raw << ',' << p.loss_norm << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace nsp
