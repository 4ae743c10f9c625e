// Copyright 2026 The carshare Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <vector>

#include <gtest/gtest.h>

#include "carshare/errors.h"
#include "carshare/solvers.h"
#include "identities.h"

namespace carshare {
namespace {

constexpr double kEps = 1e-9;

AlgoConfig config(int alpha, Flavor flavor, Objective objective,
                  TiePolicy ties = TiePolicy::kLexicographic) {
  AlgoConfig c;
  c.alpha = alpha;
  c.flavor = flavor;
  c.objective = objective;
  c.ties = ties;
  return c;
}

const AlgoConfig kSumCfg = config(1, Flavor::kU, Objective::kSum);
const AlgoConfig kLatCfg = config(2, Flavor::kMu, Objective::kLatency);

TEST(Solvers, Tags) {
  EXPECT_EQ(algorithm_tag(Algorithm::kMA, kSumCfg), "MA(1,u)");
  EXPECT_EQ(algorithm_tag(Algorithm::kCA, kLatCfg), "CA(2,mu)");
  EXPECT_EQ(algorithm_tag(Algorithm::kTA, kLatCfg), "TA(2)");
  EXPECT_EQ(algorithm_tag(Algorithm::kTAGeneralSum, kSumCfg, 3), "TA(3)sum");
  EXPECT_EQ(to_string(Algorithm::kTAGeneralLat), "ta-gen-lat");
}

TEST(Solvers, Fig1) {
  const Instance f = fixture_fig1();
  const auto adv = config(1, Flavor::kU, Objective::kSum, TiePolicy::kAdversarial);
  const SolveReport ma = ma_solve(f, adv);
  EXPECT_EQ(*ma.v1, 3);
  EXPECT_EQ(ma.allocation.objective, 4);
  const SolveReport ta = ta_solve(f, adv);
  EXPECT_EQ(*ta.v3, 6);
  EXPECT_EQ(ta.allocation.objective, 4);
  EXPECT_TRUE(ta.v3_bound_checked);
  EXPECT_TRUE(ta.v3_bound_holds);
  const SolveReport ca = ca_solve(f, adv);
  EXPECT_EQ(ca.allocation.objective, 4);
  EXPECT_EQ(ca.branch, Algorithm::kMA);
  EXPECT_EQ(ca.algorithm, Algorithm::kCA);
  EXPECT_GT(ma.tie_candidates, 1u);
}

TEST(Solvers, AdversarialNeverBeatsLexicographic) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = random_instance(2 + seed % 2, 2, InstanceMode::kGeneral, seed, 4);
    for (auto alg : {Algorithm::kMA, Algorithm::kTA, Algorithm::kCA}) {
      for (AlgoConfig cfg : {kSumCfg, kLatCfg}) {
        const double lex = solve(inst, alg, cfg).allocation.objective;
        cfg.ties = TiePolicy::kAdversarial;
        EXPECT_GE(solve(inst, alg, cfg).allocation.objective, lex - kEps);
      }
    }
  }
}

TEST(Solvers, PairingIdentities) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto mode = seed % 2 ? InstanceMode::kSEqualsT : InstanceMode::kGeneral;
    const Instance inst = random_instance(2 + seed % 3, 2, mode, seed);
    for (const AlgoConfig& cfg : {kSumCfg, kLatCfg}) {
      const SolveReport r = ma_solve(inst, cfg);
      const double total = *r.v1 + *r.v2;
      EXPECT_NEAR(total, identities::pairing_identity(inst, r.allocation, cfg.alpha, cfg.flavor), 1e-7);
      // MA(1,u) for the sum and MA(2,mu) for latency pay exactly v1 + v2.
      EXPECT_NEAR(r.allocation.objective, total, 1e-7);
      for (auto [i, j] : r.request_pairs)
        EXPECT_GE(identities::v(inst, cfg.flavor, i, j), identities::v(inst, cfg.flavor, j, i) - kEps);
    }
  }
}

TEST(Solvers, CopyIdentity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(2 + seed % 3, 2, InstanceMode::kGeneral, seed);
    for (const AlgoConfig& cfg : {kSumCfg, kLatCfg}) {
      const SolveReport r = ta_solve(inst, cfg);
      EXPECT_NEAR(*r.v3, identities::copies_identity(inst, r.allocation, cfg.alpha), 1e-7);
      EXPECT_LE(r.allocation.objective, *r.v3 + 1e-7);
      ASSERT_EQ(r.copy_requests.size(), 2u * inst.num_cars());
    }
  }
}

TEST(Solvers, CombinedPicksCheaper) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(3, 2, InstanceMode::kGeneral, seed);
    const double ma = ma_solve(inst, kSumCfg).allocation.objective;
    const double ta = ta_solve(inst, kSumCfg).allocation.objective;
    const SolveReport ca = ca_solve(inst, kSumCfg);
    EXPECT_NEAR(ca.allocation.objective, std::min(ma, ta), kEps);
    EXPECT_TRUE(ca.v1 && ca.v2 && ca.v3);
  }
}

TEST(Solvers, GeneralCollapsesAtCapacityTwo) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance(2 + seed % 2, 2, InstanceMode::kGeneral, seed, 8);
    for (auto ties : {TiePolicy::kLexicographic, TiePolicy::kAdversarial}) {
      AlgoConfig cfg;
      cfg.ties = ties;
      const SolveReport gs = ta_general_sum(inst, 2, cfg);
      const SolveReport t1 = ta_solve(inst, config(1, Flavor::kU, Objective::kSum, ties));
      EXPECT_EQ(gs.allocation.groups, t1.allocation.groups);
      EXPECT_EQ(gs.allocation.objective, t1.allocation.objective);
      EXPECT_EQ(*gs.v3, *t1.v3);
      const SolveReport gl = ta_general_lat(inst, 2, cfg);
      const SolveReport t2 = ta_solve(inst, config(2, Flavor::kMu, Objective::kLatency, ties));
      EXPECT_EQ(gl.allocation.groups, t2.allocation.groups);
      EXPECT_EQ(gl.allocation.objective, t2.allocation.objective);
      EXPECT_EQ(*gl.v3, *t2.v3);
    }
  }
}

TEST(Solvers, GeneralCapacityThree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(2, 3, InstanceMode::kGeneral, seed);
    const SolveReport s = ta_general_sum(inst, 3);
    EXPECT_TRUE(s.v3_bound_holds);
    EXPECT_EQ(s.tag(), "TA(3)sum");
    for (const auto& g : s.allocation.groups) EXPECT_EQ(g.size(), 3u);
    const SolveReport l = ta_general_lat(inst, 3);
    EXPECT_TRUE(l.v3_bound_holds);
    EXPECT_EQ(l.allocation.objective_kind, Objective::kLatency);
    AlgoConfig literal;
    literal.literal_general_sum = true;
    EXPECT_FALSE(ta_general_sum(inst, 3, literal).v3_bound_checked);
  }
}

TEST(Solvers, SpeedVariant) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = random_instance(3, 2, InstanceMode::kGeneral, seed);
    const SolveReport plain = ta_solve(inst, kSumCfg);
    EXPECT_EQ(ta_solve_speeds(inst, kSumCfg).allocation.groups, plain.allocation.groups);
    for (Car& c : inst.cars) c.speed = 4;
    const SolveReport fast = ta_solve_speeds(inst, kSumCfg);
    EXPECT_EQ(fast.allocation.groups, plain.allocation.groups);
    EXPECT_NEAR(*fast.v3, *plain.v3 / 4, kEps);
    EXPECT_NEAR(fast.allocation.objective, plain.allocation.objective / 4, kEps);
  }
}

TEST(Solvers, Errors) {
  const Instance f = fixture_fig1();
  AlgoConfig bad;
  bad.alpha = 3;
  EXPECT_THROW(ma_solve(f, bad), DomainError);
  const Instance three = random_instance(2, 3, InstanceMode::kGeneral, 1);
  EXPECT_THROW(ma_solve(three, kSumCfg), CapabilityError);
  EXPECT_THROW(ta_general_sum(three, 2), DomainError);
  const Instance five = random_instance(1, 5, InstanceMode::kGeneral, 1);
  EXPECT_THROW(ta_general_sum(five, 5), CapabilityError);
  Instance unbalanced = f;
  unbalanced.requests.pop_back();
  EXPECT_THROW(ta_solve(unbalanced, kSumCfg), DomainError);
}

TEST(Padding, MoreSeatsThanRequests) {
  const Instance base = random_instance(3, 2, InstanceMode::kGeneral, 4);
  const std::vector<int> cars = {0, 1, 2}, reqs = {0, 1, 2, 3};
  const Instance inst = sub_instance(base, cars, reqs);
  const Instance p = pad_instance(inst);
  EXPECT_TRUE(p.padded);
  EXPECT_TRUE(p.balanced());
  EXPECT_EQ(p.dummy_requests, 2);
  EXPECT_EQ(p.dummy_cars, 0);
  EXPECT_EQ(p.metric.size(), inst.metric.size() + 4);
  for (int k = 0; k < 3; ++k)
    EXPECT_EQ(p.metric(p.cars[k].location, p.requests[0].pickup),
              inst.metric(inst.cars[k].location, inst.requests[0].pickup));
  const SolveReport r = ta_solve(p, kSumCfg);
  EXPECT_FALSE(r.v3_bound_checked);
  const Allocation real = restrict_to_real(p, r.allocation, Objective::kSum);
  for (const auto& g : real.groups)
    for (int i : g) EXPECT_LT(i, 4);
  EXPECT_EQ(real_requests_only(p).num_requests(), 4);
  EXPECT_THROW(pad_instance(base), DomainError);
}

TEST(Padding, MoreRequestsThanSeats) {
  const Instance base = random_instance(3, 2, InstanceMode::kGeneral, 5);
  const std::vector<int> cars = {0}, reqs = {0, 1, 2, 3, 4};
  const Instance p = pad_instance(sub_instance(base, cars, reqs));
  EXPECT_EQ(p.dummy_cars, 2);
  EXPECT_EQ(p.dummy_requests, 1);
  EXPECT_EQ(p.num_cars(), 3);
  EXPECT_EQ(p.num_requests(), 6);
  const std::vector<int> even = {0, 1, 2, 3};
  const Instance q = pad_instance(sub_instance(base, cars, even));
  EXPECT_EQ(q.dummy_cars, 1);
  EXPECT_EQ(q.dummy_requests, 0);
}

}  // namespace
}  // namespace carshare
