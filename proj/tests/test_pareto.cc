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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nsp/confusability_graph.h"
#include "nsp/errors.h"
#include "nsp/measures.h"
#include "nsp/pareto.h"
#include "toy.h"

namespace nsp {
namespace {

using testing::kToyValues;
using testing::quant;
using testing::toy;

bool has_point(const Frontier& f, double loss, double leak, double tol) {
  for (const auto& p : f.points) {
    if (std::fabs(p.loss_norm - loss) <= tol &&
        std::fabs(p.leakage_norm - leak) <= tol) {
      return true;
    }
  }
  return false;
}

void check_frontier_invariants(const JointRange& jr, const Frontier& f,
                               const SweepOptions& opt) {
  REQUIRE_FALSE(f.points.empty());
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const auto& p = f.points[i];
    CHECK(p.loss_norm >= -1e-9);
    CHECK(p.loss_norm <= 1.0 + 1e-9);
    if (!f.degenerate) {
      CHECK(p.leakage_norm >= -1e-9);
      CHECK(p.leakage_norm <= 1.0 + 1e-9);
    }
    // Round trip.
    CHECK(leakage_of(f.algorithm, jr, p.quantization) ==
          doctest::Approx(p.leakage_raw));
    CHECK(utility(jr, p.quantization, UtilityChoice{f.utility, opt.distance}) ==
          doctest::Approx(p.utility_raw));
    const auto [leak, loss] = normalize(jr, f, p.quantization, opt.distance);
    CHECK(leak == doctest::Approx(p.leakage_norm));
    CHECK(loss == doctest::Approx(p.loss_norm));
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      if (i == j) continue;
      const auto& o = f.points[j];
      CHECK_FALSE(dominates(o.loss_norm, o.leakage_norm, p.loss_norm,
                            p.leakage_norm));
      CHECK_FALSE(o.quantization == p.quantization);
    }
    if (i > 0) {
      CHECK(p.loss_norm > f.points[i - 1].loss_norm);
      CHECK(p.leakage_norm < f.points[i - 1].leakage_norm);
    }
  }
}

TEST_CASE("grids") {
  const auto g = geometric_grid(5, 1e-2, 1e2, true);
  REQUIRE(g.size() == 6);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(1e-2));
  CHECK(g[3] == doctest::Approx(1.0));
  CHECK(g[5] == 1e2);
  CHECK(default_lambda_grid().size() == 65);
  CHECK(linear_grid(3, 0.0, 1.0) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(geometric_grid(3, 0.0, 1.0, false), ConfigError);
  CHECK_THROWS_AS(linear_grid(0, 0.0, 1.0), ConfigError);
}

TEST_CASE("toy frontier for the component problem with resolution utility") {
  const JointRange jr = toy();
  const SweepOptions opt;
  const Frontier f = sweep(jr, Algorithm::kMinIStar, UtilityKind::kResolution,
                           linear_grid(21, 0.0, 1.0), opt);
  CHECK(has_point(f, 0.0, 1.0, 1e-3));
  CHECK(has_point(f, 0.3562, 0.4307, 1e-3));
  CHECK(has_point(f, 0.5646, 0.0, 1e-3));
  CHECK(f.points.size() == 3);
  CHECK_FALSE(f.degenerate);
  check_frontier_invariants(jr, f, opt);

  const auto q = quant(jr, {{"x1", "x3", "x7"}, {"x2", "x5"}, {"x4", "x6"}});
  const auto [leak, loss] = normalize(jr, f, q);
  CHECK(leak == 0.0);
  CHECK(loss == doctest::Approx(1.0 - std::log2(7.0 / 3.0) / std::log2(7.0)));
  const auto [leak1, loss1] =
      normalize(jr, f, Quantization::singletons(jr, CodewordPolicy::kCentroid));
  CHECK(leak1 == 1.0);
  CHECK(loss1 == 0.0);
}

TEST_CASE("toy frontier with distortion utility") {
  std::vector<double> values = kToyValues;
  values[6] = 4.0;
  const JointRange jr = toy(values);
  const SweepOptions opt;
  const Frontier f = sweep(jr, Algorithm::kMinIStar, UtilityKind::kMaxDistortion,
                           default_lambda_grid(), opt);
  CHECK(f.utility_reference == doctest::Approx(-1.95));
  CHECK(has_point(f, 0.0, 1.0, 1e-9));
  CHECK(has_point(f, 1.0, 0.0, 1e-9));
  check_frontier_invariants(jr, f, opt);
}

TEST_CASE("zero multiplier alone") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const JointRange jr = testing::random_joint_range(rng, 8, 6, 0.15);
    for (Algorithm a :
         {Algorithm::kMinL0, Algorithm::kMinIStar, Algorithm::kMinL0ZeroIStar}) {
      SweepOptions opt;
      opt.include_iterates = false;
      const Frontier f = sweep(jr, a, UtilityKind::kResolution, {0.0}, opt);
      REQUIRE(f.points.size() == 1);
      const GreedyResult r = run_greedy(
          a, jr,
          LagrangianConfig{0.0, UtilityChoice{UtilityKind::kResolution},
                           CodewordPolicy::kCentroid});
      CHECK(f.points[0].quantization == r.final_quantization);
      if (a == Algorithm::kMinIStar) CHECK(f.points[0].leakage_raw == 0.0);
      if (a != Algorithm::kMinL0) {
        CHECK(maximin_information(jr, f.points[0].quantization) == 0.0);
      }
    }
  }
}

TEST_CASE("duplicate multipliers add no points") {
  const JointRange jr = toy();
  const SweepOptions opt;
  const Frontier once = sweep(jr, Algorithm::kMinIStar,
                              UtilityKind::kResolution, {0.1, 0.3}, opt);
  const Frontier twice =
      sweep(jr, Algorithm::kMinIStar, UtilityKind::kResolution,
            {0.1, 0.3, 0.3, 0.1, 0.3}, opt);
  REQUIRE(once.points.size() == twice.points.size());
  for (std::size_t i = 0; i < once.points.size(); ++i) {
    CHECK(once.points[i].quantization == twice.points[i].quantization);
  }
}

TEST_CASE("sweep rejects a bad grid") {
  const JointRange jr = toy();
  CHECK_THROWS_AS(sweep(jr, Algorithm::kMinL0, UtilityKind::kResolution, {}),
                  ConfigError);
  CHECK_THROWS_AS(
      sweep(jr, Algorithm::kMinL0, UtilityKind::kResolution, {0.1, -0.5}),
      ConfigError);
  CHECK_THROWS_AS(
      sweep(jr, Algorithm::kMinL0, UtilityKind::kMaxDistortion, {0.1}),
      ConfigError);
}

TEST_CASE("degenerate leakage reference") {
  // One sensitive value: nothing leaks even without quantization.
  const JointRange jr({{"s", {}}}, {{"a", 1.0}, {"b", 2.0}, {"c", 4.0}},
                      {{0, 0}, {0, 1}, {0, 2}});
  const Frontier f = sweep(jr, Algorithm::kMinL0, UtilityKind::kResolution,
                           default_lambda_grid());
  CHECK(f.degenerate);
  CHECK(f.leakage_reference == 0.0);
  for (const auto& p : f.points) CHECK(p.leakage_norm == p.leakage_raw);
}

TEST_CASE("frontier invariants on random instances") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const JointRange jr = testing::random_joint_range(rng, 9, 8, 0.12);
    for (Algorithm a :
         {Algorithm::kMinL0, Algorithm::kMinIStar, Algorithm::kMinL0ZeroIStar}) {
      for (UtilityKind u :
           {UtilityKind::kResolution, UtilityKind::kMaxDistortion}) {
        SweepOptions opt;
        opt.threads = 3;
        opt.include_iterates = trial % 2 == 0;
        const Frontier f = sweep(jr, a, u, geometric_grid(12, 1e-2, 10.0, true),
                                 opt);
        check_frontier_invariants(jr, f, opt);
      }
    }
  }
}

TEST_CASE("k-anonymity baseline on the toy range") {
  const JointRange jr = toy(kToyValues);
  CHECK(sweeney_baseline(jr, 1) ==
        Quantization::singletons(jr, CodewordPolicy::kCentroid));
  CHECK(sweeney_baseline(jr, 6) ==
        Quantization::all_in_one(jr, CodewordPolicy::kCentroid));
  const auto two = sweeney_baseline(jr, 2);
  CHECK(is_k_anonymous(jr, two, 2));
  CHECK_THROWS_AS(sweeney_baseline(jr, 7), InfeasibleError);
  CHECK_THROWS_AS(sweeney_baseline(jr, 0), ContractViolation);

  const JointRange cat = toy();
  CHECK(sweeney_baseline(cat, 6) ==
        Quantization::all_in_one(cat, CodewordPolicy::kCentroid));
  CHECK(is_k_anonymous(cat, sweeney_baseline(cat, 3), 3));
}

TEST_CASE("baseline output satisfies the cardinality equivalence") {
  std::mt19937_64 rng(161803);
  for (int trial = 0; trial < 200; ++trial) {
    const JointRange jr = testing::random_joint_range(rng, 9, 8, 0.15);
    for (std::size_t k = 1; k <= jr.s_size(); ++k) {
      const auto q = sweeney_baseline(jr, k);
      CHECK(is_k_anonymous(jr, q, k));
      for (std::size_t j = 1; j <= jr.s_size(); ++j) {
        CHECK(is_k_anonymous(jr, q, j) ==
              (b0(jr, q) >= std::log2(static_cast<double>(j)) - 1e-12));
      }
    }
  }
}

TEST_CASE("frontier csv") {
  const JointRange jr = toy();
  SweepOptions opt;
  opt.include_iterates = false;
  const Frontier f =
      sweep(jr, Algorithm::kMinIStar, UtilityKind::kResolution, {0.0}, opt);
  std::ostringstream out;
  write_frontier_csv(out, f);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,leakage_raw,leakage_norm,utility_raw,loss_norm");
  std::getline(in, line);
  CHECK(line.rfind("0,0,0,", 0) == 0);
  CHECK_FALSE(std::getline(in, line));
}

}  // namespace
}  // namespace nsp
