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

// Serving costs and latencies.
//
// For two requests i, j served by one car at d:
//
//   u(i,j)  = min over routes starting at s_i of the travel time from s_i to
//             the last drop-off (three precedence-feasible routes)
//   mu(i,j) = same routes, but summing the arrival times at t_i and t_j
//
//   pair_cost(d,i,j) = min{ w(d,s_i) + u(i,j),  w(d,s_j) + u(j,i) }
//   pair_wait(d,i,j) = min{ 2w(d,s_i) + mu(i,j), 2w(d,s_j) + mu(j,i) }
//
// Both pair evaluators equal the minimum over all six precedence-feasible
// routes. group_cost/group_wait extend them to groups of up to
// kMaxGroupSize requests by exhaustive route enumeration.

#ifndef CARSHARE_PAIRCOSTS_H_
#define CARSHARE_PAIRCOSTS_H_

#include <span>
#include <vector>

#include "carshare/instance.h"
#include "carshare/metric.h"

namespace carshare {

enum class Flavor { kU, kMu };

std::string to_string(Flavor flavor);

double u_pair(const DistanceMatrix& m, const Request& i, const Request& j);
double mu_pair(const DistanceMatrix& m, const Request& i, const Request& j);

// Decomposed forms (used in release builds; checked against the six-route
// enumeration in debug builds).
double pair_cost(const DistanceMatrix& m, const Car& car, const Request& i,
                 const Request& j);
double pair_wait(const DistanceMatrix& m, const Car& car, const Request& i,
                 const Request& j);

// Minimum over the six precedence-feasible visiting orders.
double pair_cost_six_routes(const DistanceMatrix& m, const Car& car,
                            const Request& i, const Request& j);
double pair_wait_six_routes(const DistanceMatrix& m, const Car& car,
                            const Request& i, const Request& j);

inline constexpr int kMaxGroupSize = 4;

struct Route {
  double value = 0;
  // Stop::request is the position of the request inside the group.
  std::vector<Stop> order;
};

// Optimal route for a group, starting at the car. Ties go to the
// lexicographically smallest visit order (pickup of position p sorts before
// its drop-off, which sorts before position p+1). Speed is ignored here.
// Throws CapabilityError if the group is larger than kMaxGroupSize.
Route group_cost(const DistanceMatrix& m, const Car& car,
                 std::span<const Request> group);
Route group_wait(const DistanceMatrix& m, const Car& car,
                 std::span<const Request> group);
Route group_route(const DistanceMatrix& m, const Car& car,
                  std::span<const Request> group, Objective objective);

// u and mu over all ordered request pairs; diagonal entries are 0.
struct CostTables {
  int size = 0;
  std::vector<double> u;
  std::vector<double> mu;

  double u_at(int i, int j) const { return u[static_cast<std::size_t>(i) * size + j]; }
  double mu_at(int i, int j) const { return mu[static_cast<std::size_t>(i) * size + j]; }
  double at(Flavor flavor, int i, int j) const {
    return flavor == Flavor::kU ? u_at(i, j) : mu_at(i, j);
  }
  bool operator==(const CostTables&) const = default;
};

CostTables build_cost_tables(const Instance& instance);

// Builds the per-car route for each group and the total objective, each car's
// term divided by its speed. Throws DomainError unless `groups` partitions the
// requests into one group per car of size `capacity`.
Allocation evaluate_allocation(const Instance& instance,
                               std::vector<std::vector<int>> groups,
                               Objective objective);

// Like evaluate_allocation but groups may be smaller than capacity, and every
// request must appear at most once (used for padded/unbalanced checks).
Allocation evaluate_partial_allocation(const Instance& instance,
                                       std::vector<std::vector<int>> groups,
                                       Objective objective);

double allocation_cost(const Instance& instance, const Allocation& allocation);
double allocation_wait(const Instance& instance, const Allocation& allocation);

namespace serial {

CostTables build_cost_tables(const Instance& instance);

}  // namespace serial

}  // namespace carshare

#endif  // CARSHARE_PAIRCOSTS_H_
