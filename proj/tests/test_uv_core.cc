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

#include "doctest.h"
#include "nsp/errors.h"
#include "nsp/measures.h"
#include "toy.h"

namespace nsp {
namespace {

using testing::names;
using testing::quant;
using testing::toy;

std::vector<std::string> s_names(const JointRange& jr,
                                 const ConditionalRange& r) {
  return names(jr, r.to_vector(), /*s_side=*/true);
}

TEST_CASE("conditional range of a single symbol") {
  const JointRange jr = toy();
  CHECK(s_names(jr, cond_range_x(jr, 0)) ==
        std::vector<std::string>{"s1", "s2"});
  CHECK(s_names(jr, cond_range_x(jr, 6)) == std::vector<std::string>{"s6"});
  CHECK_THROWS_AS(cond_range_x(jr, 7), IndexError);

  const JointRange single({{"s1", {}}}, {{"x1", {}}}, {{0, 0}});
  CHECK(s_names(single, cond_range_x(single, 0)) ==
        std::vector<std::string>{"s1"});
}

TEST_CASE("conditional range of a cluster is the union") {
  const JointRange jr = toy();
  const std::vector<XIndex> a = {0, 1, 6};
  CHECK(s_names(jr, cond_range_cluster(jr, a)) ==
        std::vector<std::string>{"s1", "s2", "s6"});
  const std::vector<XIndex> b = {2, 4};
  CHECK(s_names(jr, cond_range_cluster(jr, b)) ==
        std::vector<std::string>{"s3", "s4"});
  const std::vector<XIndex> all = {0, 1, 2, 3, 4, 5, 6};
  CHECK(cond_range_cluster(jr, all).count() == 6);
  CHECK_THROWS_AS(cond_range_cluster(jr, std::vector<XIndex>{}),
                  ContractViolation);
}

TEST_CASE("joint range invariants are enforced") {
  using Pairs = std::vector<std::pair<SIndex, XIndex>>;
  CHECK_THROWS_AS(JointRange({{"s", {}}}, {{"x", {}}}, Pairs{}),
                  ContractViolation);
  CHECK_THROWS_AS(JointRange({{"s", {}}}, {{"x", {}}}, Pairs{{0, 0}, {0, 0}}),
                  ContractViolation);
  CHECK_THROWS_AS(
      JointRange({{"s", {}}, {"s", {}}}, {{"x", {}}}, Pairs{{0, 0}, {1, 0}}),
      ContractViolation);
  CHECK_THROWS_AS(JointRange({{"", {}}}, {{"x", {}}}, Pairs{{0, 0}}),
                  ContractViolation);
  // s2 occurs in no pair.
  CHECK_THROWS_AS(JointRange({{"s1", {}}, {"s2", {}}}, {{"x", {}}}, Pairs{{0, 0}}),
                  ContractViolation);
  CHECK_THROWS_AS(JointRange({{"s1", {}}}, {{"x", {}}}, Pairs{{0, 3}}),
                  ContractViolation);
}

TEST_CASE("hartley entropy") {
  CHECK(h0(1) == 0.0);
  CHECK(h0(6) == doctest::Approx(2.584962500721156).epsilon(1e-12));
  CHECK(h0(7) == doctest::Approx(2.807354922057604).epsilon(1e-12));
  CHECK_THROWS_AS(h0(0), ContractViolation);
}

TEST_CASE("toy measures") {
  const JointRange jr = toy();
  const auto single = Quantization::singletons(jr, CodewordPolicy::kCentroid);
  const auto one = Quantization::all_in_one(jr, CodewordPolicy::kCentroid);
  const auto q = quant(jr, {{"x1", "x2", "x7"}, {"x3", "x5"}, {"x4", "x6"}});
  const double hs = std::log2(6.0);

  CHECK(b0(jr, single) == 0.0);
  CHECK(b0(jr, one) == doctest::Approx(hs));
  CHECK(b0(jr, q) == doctest::Approx(1.0));

  CHECK(l0(jr, single) == doctest::Approx(hs));
  CHECK(l0(jr, one) == 0.0);
  CHECK(l0(jr, q) == doctest::Approx(hs - 1.0));

  CHECK(i0_forward(jr, single) == doctest::Approx(hs - 1.0));
  CHECK(i0_forward(jr, one) == 0.0);
  CHECK(i0_forward(jr, q) == doctest::Approx(hs - std::log2(3.0)));

  CHECK(is_k_anonymous(jr, single, 1));
  CHECK_FALSE(is_k_anonymous(jr, single, 2));
  CHECK(is_k_anonymous(jr, one, 6));
  CHECK_THROWS_AS(is_k_anonymous(jr, one, 0), ContractViolation);
}

TEST_CASE("measure invariants on random instances") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 300; ++trial) {
    const JointRange jr = testing::random_joint_range(rng, 9, 8, 0.15);
    const auto labels = testing::random_labels(rng, jr.x_size());
    const auto q =
        Quantization::from_labels(jr, labels, CodewordPolicy::kCentroid);
    const double hs = h0(jr.s_size());
    const double i0 = i0_forward(jr, q);
    const double leak = l0(jr, q);
    CHECK(i0 >= -1e-12);
    CHECK(i0 <= leak + 1e-12);
    CHECK(leak <= hs + 1e-12);

    // Integer cardinality test against the floating comparison.
    for (std::size_t k = 1; k <= jr.s_size(); ++k) {
      CHECK(is_k_anonymous(jr, q, k) ==
            (b0(jr, q) >= std::log2(static_cast<double>(k))));
    }

    if (q.size() >= 2) {
      const auto& a = q.members(0);
      const auto& b = q.members(1);
      std::vector<XIndex> u(a);
      u.insert(u.end(), b.begin(), b.end());
      ConditionalRange expect = cond_range_cluster(jr, a);
      expect |= cond_range_cluster(jr, b);
      CHECK(cond_range_cluster(jr, u) == expect);

      const auto coarser = q.merged(q.id(0), q.id(1));
      CHECK(b0(jr, coarser) >= b0(jr, q) - 1e-12);
      CHECK(l0(jr, coarser) <= leak + 1e-12);
    }
    const auto one = Quantization::all_in_one(jr, CodewordPolicy::kCentroid);
    CHECK(l0(jr, one) == 0.0);
    CHECK(i0_forward(jr, one) == 0.0);
  }
}

}  // namespace
}  // namespace nsp
