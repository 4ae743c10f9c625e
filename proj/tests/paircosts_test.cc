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


#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "carshare/errors.h"
#include "carshare/paircosts.h"
#include "independent.h"

namespace carshare {
namespace {

constexpr double kEps = 1e-9;

struct RandomPair {
  DistanceMatrix m;
  Car car;
  Request i, j;
};

RandomPair random_pair(std::mt19937_64& rng, bool same_point) {
  RandomPair p;
  p.m = indep::random_metric(5, rng, 30);
  p.car = {0};
  p.i = same_point ? Request{1, 1} : Request{1, 2};
  p.j = same_point ? Request{3, 3} : Request{3, 4};
  return p;
}

TEST(PairCosts, Fig1Values) {
  const Instance f = fixture_fig1();
  EXPECT_EQ(u_pair(f.metric, f.requests[0], f.requests[1]), 2);
  EXPECT_EQ(pair_cost(f.metric, f.cars[0], f.requests[0], f.requests[2]), 1);
  EXPECT_EQ(pair_cost(f.metric, f.cars[0], f.requests[0], f.requests[1]), 2);
}

TEST(PairCosts, CollapsedLocations) {
  const DistanceMatrix m(1);
  EXPECT_EQ(u_pair(m, {0, 0}, {0, 0}), 0);
  EXPECT_EQ(mu_pair(m, {0, 0}, {0, 0}), 0);
  EXPECT_EQ(pair_wait(m, {0}, {0, 0}, {0, 0}), 0);
}

TEST(PairCosts, MatchDefinitions) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const auto p = random_pair(rng, t % 4 == 0);
    EXPECT_NEAR(u_pair(p.m, p.i, p.j), indep::u(p.m, p.i, p.j), kEps);
    EXPECT_NEAR(mu_pair(p.m, p.i, p.j), indep::mu(p.m, p.i, p.j), kEps);
    const std::vector<Request> g = {p.i, p.j};
    const double cost = indep::route(p.m, p.car, g, Objective::kSum);
    const double wait = indep::route(p.m, p.car, g, Objective::kLatency);
    EXPECT_NEAR(pair_cost(p.m, p.car, p.i, p.j), cost, kEps);
    EXPECT_NEAR(pair_cost_six_routes(p.m, p.car, p.i, p.j), cost, kEps);
    EXPECT_NEAR(pair_wait(p.m, p.car, p.i, p.j), wait, kEps);
    EXPECT_NEAR(pair_wait_six_routes(p.m, p.car, p.i, p.j), wait, kEps);
    // Decomposition through u and mu.
    const double d = p.car.location;
    const double di = p.m(d, p.i.pickup), dj = p.m(d, p.j.pickup);
    EXPECT_NEAR(cost, std::min(di + indep::u(p.m, p.i, p.j), dj + indep::u(p.m, p.j, p.i)), kEps);
    EXPECT_NEAR(wait, std::min(2 * di + indep::mu(p.m, p.i, p.j), 2 * dj + indep::mu(p.m, p.j, p.i)),
                kEps);
  }
}

TEST(PairCosts, SameLocationRequestsAreSymmetric) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto p = random_pair(rng, true);
    const double w = p.m(p.i.pickup, p.j.pickup);
    EXPECT_EQ(u_pair(p.m, p.i, p.j), w);
    EXPECT_EQ(u_pair(p.m, p.j, p.i), w);
    EXPECT_EQ(mu_pair(p.m, p.i, p.j), w);
  }
}

TEST(PairCosts, TripleBoundOnFirstBranch) {
  // If the pair cost is realized by serving i first, the route
  // d, s_i, t_i, d, s_j, t_j is at most three times the pair cost.
  std::mt19937_64 rng(5);
  int conditioned = 0;
  for (int t = 0; t < 3000; ++t) {
    const auto p = random_pair(rng, false);
    const int d = p.car.location;
    const double first = p.m(d, p.i.pickup) + indep::u(p.m, p.i, p.j);
    const double cost = pair_cost(p.m, p.car, p.i, p.j);
    if (first > cost + kEps) continue;
    ++conditioned;
    const double loop = path_length(p.m, {d, p.i.pickup, p.i.dropoff, d, p.j.pickup, p.j.dropoff});
    EXPECT_LE(loop, 3 * cost + kEps);
  }
  EXPECT_GT(conditioned, 1000);
}

TEST(GroupRoute, MatchesPermutationSearch) {
  std::mt19937_64 rng(6);
  for (int size = 1; size <= kMaxGroupSize; ++size) {
    for (int t = 0; t < (size == 4 ? 15 : 100); ++t) {
      const DistanceMatrix m = indep::random_metric(2 * size + 1, rng, 20);
      std::vector<Request> g;
      for (int p = 0; p < size; ++p) g.push_back({1 + 2 * p, t % 3 == 0 ? 1 + 2 * p : 2 + 2 * p});
      const Car car{0};
      for (auto obj : {Objective::kSum, Objective::kLatency}) {
        const Route r = group_route(m, car, g, obj);
        EXPECT_NEAR(r.value, indep::route(m, car, g, obj), kEps);
        ASSERT_EQ(r.order.size(), 2u * size);
      }
      if (size == 2) {
        EXPECT_NEAR(group_cost(m, car, g).value, pair_cost(m, car, g[0], g[1]), kEps);
        EXPECT_NEAR(group_wait(m, car, g).value, pair_wait(m, car, g[0], g[1]), kEps);
      }
    }
  }
}

TEST(GroupRoute, TiesGoToSmallestOrder) {
  const DistanceMatrix m(3);
  const std::vector<Request> g = {{1, 2}, {2, 1}};
  const Route r = group_cost(m, {0}, g);
  const std::vector<Stop> want = {{0, StopKind::kPickup}, {0, StopKind::kDropoff},
                                  {1, StopKind::kPickup}, {1, StopKind::kDropoff}};
  EXPECT_EQ(r.order, want);
}

TEST(GroupRoute, TooLarge) {
  const DistanceMatrix m(1);
  const std::vector<Request> g(kMaxGroupSize + 1, Request{0, 0});
  EXPECT_THROW(group_cost(m, {0}, g), CapabilityError);
}

TEST(CostTables, MatchDefinitionsAndSerial) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(3, 2, InstanceMode::kGeneral, seed);
    const CostTables t = build_cost_tables(inst);
    EXPECT_EQ(t, serial::build_cost_tables(inst));
    ASSERT_EQ(t.size, 6);
    for (int i = 0; i < 6; ++i) {
      EXPECT_EQ(t.u_at(i, i), 0);
      for (int j = 0; j < 6; ++j) {
        if (i == j) continue;
        EXPECT_NEAR(t.u_at(i, j), indep::u(inst.metric, inst.requests[i], inst.requests[j]), kEps);
        EXPECT_NEAR(t.at(Flavor::kMu, i, j), indep::mu(inst.metric, inst.requests[i], inst.requests[j]),
                    kEps);
      }
    }
  }
}

// Inequalities between the pair quantities that hold on every metric.
TEST(CostTables, PairInequalities) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_pair(rng, t % 5 == 0);
    const auto& m = p.m;
    const int d = p.car.location;
    const Request i = p.i, j = p.j;
    const double uij = u_pair(m, i, j), uji = u_pair(m, j, i);
    const double mij = mu_pair(m, i, j), mji = mu_pair(m, j, i);
    const double ss = m(i.pickup, j.pickup);
    EXPECT_LE(uji, 2 * uij + kEps);
    EXPECT_LE(uij + uji + 2 * ss, 4 * std::min(mij, mji) + kEps);
    EXPECT_LE((mij + mji) / 2 + ss, 3 * std::min(uij, uji) + kEps);
    EXPECT_LE((mij + mji) / 2 + ss, 2 * std::min(mij, mji) + kEps);
    const double lhs =
        2 * m(d, i.pickup) + 2 * m(d, j.pickup) + mij + mji +
        std::min(2 * path_length(m, {d, i.pickup, i.dropoff}) + path_length(m, {i.dropoff, d, j.pickup, j.dropoff}),
                 2 * path_length(m, {d, j.pickup, j.dropoff}) + path_length(m, {j.dropoff, d, i.pickup, i.dropoff}));
    EXPECT_LE(lhs, std::min(8 * m(d, i.pickup) + 5 * mij, 8 * m(d, j.pickup) + 5 * mji) + kEps);
  }
}

TEST(EvaluateAllocation, Fig1Optimum) {
  const Instance f = fixture_fig1();
  const Allocation a = evaluate_allocation(f, {{0, 2}, {1, 3}}, Objective::kSum);
  EXPECT_EQ(a.objective, 2);
  EXPECT_EQ(allocation_cost(f, a), 2);
  ASSERT_EQ(a.orders.size(), 2u);
  EXPECT_EQ(a.orders[0].size(), 4u);
  for (const Stop& s : a.orders[1]) EXPECT_TRUE(s.request == 1 || s.request == 3);
}

TEST(EvaluateAllocation, GroupOrderIsCanonical) {
  const Instance f = fixture_fig1();
  const Allocation a = evaluate_allocation(f, {{2, 0}, {3, 1}}, Objective::kLatency);
  EXPECT_EQ(a.groups[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(allocation_wait(f, a), a.objective);
}

TEST(EvaluateAllocation, SpeedScales) {
  Instance f = random_instance(3, 2, InstanceMode::kGeneral, 11);
  const std::vector<std::vector<int>> groups = {{0, 5}, {1, 4}, {2, 3}};
  for (auto obj : {Objective::kSum, Objective::kLatency}) {
    const double base = evaluate_allocation(f, groups, obj).objective;
    Instance fast = f;
    for (Car& c : fast.cars) c.speed = 2;
    EXPECT_NEAR(evaluate_allocation(fast, groups, obj).objective, base / 2, kEps);
  }
}

TEST(EvaluateAllocation, RejectsNonPartition) {
  const Instance f = fixture_fig1();
  EXPECT_THROW(evaluate_allocation(f, {{0, 1}, {1, 2}}, Objective::kSum), DomainError);
  EXPECT_THROW(evaluate_allocation(f, {{0, 1, 2}, {3}}, Objective::kSum), DomainError);
  EXPECT_THROW(evaluate_allocation(f, {{0, 1}}, Objective::kSum), DomainError);
  EXPECT_NO_THROW(evaluate_partial_allocation(f, {{0}, {3, 1}}, Objective::kSum));
  EXPECT_THROW(evaluate_partial_allocation(f, {{0, 0}, {}}, Objective::kSum), DomainError);
}

}  // namespace
}  // namespace carshare
