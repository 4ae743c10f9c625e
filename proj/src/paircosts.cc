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

#include "carshare/paircosts.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "carshare/errors.h"

namespace carshare {

std::string to_string(Flavor flavor) { return flavor == Flavor::kU ? "u" : "mu"; }

double u_pair(const DistanceMatrix& m, const Request& i, const Request& j) {
  const LocationId si = i.pickup, ti = i.dropoff, sj = j.pickup, tj = j.dropoff;
  return std::min({path_length(m, {si, sj, ti, tj}),
                   path_length(m, {si, sj, tj, ti}),
                   path_length(m, {si, ti, sj, tj})});
}

double mu_pair(const DistanceMatrix& m, const Request& i, const Request& j) {
  const LocationId si = i.pickup, ti = i.dropoff, sj = j.pickup, tj = j.dropoff;
  return std::min({path_length(m, {si, sj, ti}) + path_length(m, {si, sj, ti, tj}),
                   path_length(m, {si, sj, tj}) + path_length(m, {si, sj, tj, ti}),
                   path_length(m, {si, ti}) + path_length(m, {si, ti, sj, tj})});
}

double pair_cost_six_routes(const DistanceMatrix& m, const Car& car,
                            const Request& i, const Request& j) {
  const LocationId d = car.location;
  const LocationId si = i.pickup, ti = i.dropoff, sj = j.pickup, tj = j.dropoff;
  return std::min({path_length(m, {d, si, sj, ti, tj}),
                   path_length(m, {d, si, sj, tj, ti}),
                   path_length(m, {d, si, ti, sj, tj}),
                   path_length(m, {d, sj, si, ti, tj}),
                   path_length(m, {d, sj, si, tj, ti}),
                   path_length(m, {d, sj, tj, si, ti})});
}

double pair_wait_six_routes(const DistanceMatrix& m, const Car& car,
                            const Request& i, const Request& j) {
  const LocationId d = car.location;
  const LocationId si = i.pickup, ti = i.dropoff, sj = j.pickup, tj = j.dropoff;
  auto w = [&m](std::initializer_list<LocationId> p) { return path_length(m, p); };
  return std::min({w({d, si, sj, ti}) + w({d, si, sj, ti, tj}),
                   w({d, si, sj, tj}) + w({d, si, sj, tj, ti}),
                   w({d, si, ti}) + w({d, si, ti, sj, tj}),
                   w({d, sj, si, ti}) + w({d, sj, si, ti, tj}),
                   w({d, sj, si, tj}) + w({d, sj, si, tj, ti}),
                   w({d, sj, tj}) + w({d, sj, tj, si, ti})});
}

namespace {

[[maybe_unused]] bool close(double a, double b) {
  return std::abs(a - b) <= kTolerance * std::max(1.0, std::abs(a));
}

}  // namespace

double pair_cost(const DistanceMatrix& m, const Car& car, const Request& i,
                 const Request& j) {
  const LocationId d = car.location;
  const double value = std::min(m.at(d, i.pickup) + u_pair(m, i, j),
                                m.at(d, j.pickup) + u_pair(m, j, i));
  assert(close(value, pair_cost_six_routes(m, car, i, j)));
  return value;
}

double pair_wait(const DistanceMatrix& m, const Car& car, const Request& i,
                 const Request& j) {
  const LocationId d = car.location;
  const double value = std::min(2 * m.at(d, i.pickup) + mu_pair(m, i, j),
                                2 * m.at(d, j.pickup) + mu_pair(m, j, i));
  assert(close(value, pair_wait_six_routes(m, car, i, j)));
  return value;
}

namespace {

// Depth-first enumeration of precedence-feasible visit orders. Stops are
// tried in ascending (position, pickup-before-dropoff) order, and a route
// only replaces the incumbent when strictly better, so the incumbent is the
// lexicographically smallest optimal order.
class RouteSearch {
 public:
  RouteSearch(const DistanceMatrix& m, const Car& car,
              std::span<const Request> group, Objective objective)
      : m_(m), car_(car), group_(group), objective_(objective),
        state_(group.size(), 0) {
    best_.value = std::numeric_limits<double>::infinity();
    current_.reserve(2 * group.size());
  }

  Route Run() {
    if (group_.empty()) return Route{0, {}};
    Visit(car_.location, 0.0, 0.0);
    return best_;
  }

 private:
  void Visit(LocationId at, double clock, double latency) {
    if (current_.size() == 2 * group_.size()) {
      const double value = objective_ == Objective::kSum ? clock : latency;
      if (value < best_.value - kTolerance) {
        best_.value = value;
        best_.order = current_;
      }
      return;
    }
    for (std::size_t p = 0; p < group_.size(); ++p) {
      if (state_[p] == 2) continue;
      const bool pickup = state_[p] == 0;
      const LocationId next = pickup ? group_[p].pickup : group_[p].dropoff;
      const double arrive = clock + m_(at, next);
      ++state_[p];
      current_.push_back({static_cast<int>(p),
                          pickup ? StopKind::kPickup : StopKind::kDropoff});
      Visit(next, arrive, pickup ? latency : latency + arrive);
      current_.pop_back();
      --state_[p];
    }
  }

  const DistanceMatrix& m_;
  const Car& car_;
  std::span<const Request> group_;
  Objective objective_;
  std::vector<int> state_;  // 0 = waiting, 1 = on board, 2 = delivered
  std::vector<Stop> current_;
  Route best_;
};

void check_group(const DistanceMatrix& m, const Car& car,
                 std::span<const Request> group) {
  if (static_cast<int>(group.size()) > kMaxGroupSize) {
    throw CapabilityError("group of " + std::to_string(group.size()) +
                          " requests exceeds the exhaustive routing cap of " +
                          std::to_string(kMaxGroupSize));
  }
  if (!m.contains(car.location)) throw DomainError("car location out of range");
  for (const Request& r : group) {
    if (!m.contains(r.pickup) || !m.contains(r.dropoff)) {
      throw DomainError("request location out of range");
    }
  }
}

}  // namespace

Route group_route(const DistanceMatrix& m, const Car& car,
                  std::span<const Request> group, Objective objective) {
  check_group(m, car, group);
  return RouteSearch(m, car, group, objective).Run();
}

Route group_cost(const DistanceMatrix& m, const Car& car,
                 std::span<const Request> group) {
  return group_route(m, car, group, Objective::kSum);
}

Route group_wait(const DistanceMatrix& m, const Car& car,
                 std::span<const Request> group) {
  return group_route(m, car, group, Objective::kLatency);
}

namespace {

void fill_row(const Instance& instance, int i, CostTables& t) {
  const auto& m = instance.metric;
  const auto& r = instance.requests;
  for (int j = 0; j < t.size; ++j) {
    const std::size_t idx = static_cast<std::size_t>(i) * t.size + j;
    if (i == j) continue;
    t.u[idx] = u_pair(m, r[i], r[j]);
    t.mu[idx] = mu_pair(m, r[i], r[j]);
  }
}

CostTables empty_tables(const Instance& instance) {
  CostTables t;
  t.size = instance.num_requests();
  t.u.assign(static_cast<std::size_t>(t.size) * t.size, 0.0);
  t.mu.assign(t.u.size(), 0.0);
  return t;
}

Allocation evaluate(const Instance& instance, std::vector<std::vector<int>> groups,
                    Objective objective, bool exact_size) {
  const int n = instance.num_cars();
  if (static_cast<int>(groups.size()) != n) {
    throw DomainError("allocation has " + std::to_string(groups.size()) +
                      " groups for " + std::to_string(n) + " cars");
  }
  std::vector<char> seen(instance.num_requests(), 0);
  int covered = 0;
  for (int k = 0; k < n; ++k) {
    auto& g = groups[k];
    std::sort(g.begin(), g.end());
    const int size = static_cast<int>(g.size());
    if (exact_size ? size != instance.capacity : size > instance.capacity) {
      throw DomainError("car " + std::to_string(k) + " has " + std::to_string(size) +
                        " requests, capacity is " + std::to_string(instance.capacity));
    }
    for (int i : g) {
      if (i < 0 || i >= instance.num_requests()) {
        throw DomainError("allocation references unknown request " + std::to_string(i));
      }
      if (seen[i]++) {
        throw DomainError("request " + std::to_string(i) + " allocated twice");
      }
      ++covered;
    }
  }
  if (exact_size && covered != instance.num_requests()) {
    throw DomainError("allocation does not cover every request");
  }

  Allocation out;
  out.objective_kind = objective;
  out.orders.resize(n);
  std::vector<Request> members;
  for (int k = 0; k < n; ++k) {
    members.clear();
    for (int i : groups[k]) members.push_back(instance.requests[i]);
    const Route route = group_route(instance.metric, instance.cars[k], members, objective);
    for (const Stop& s : route.order) {
      out.orders[k].push_back({groups[k][s.request], s.kind});
    }
    out.objective += route.value / instance.cars[k].speed;
  }
  out.groups = std::move(groups);
  return out;
}

}  // namespace

CostTables build_cost_tables(const Instance& instance) {
  CostTables t = empty_tables(instance);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < t.size; ++i) fill_row(instance, i, t);
  return t;
}

namespace serial {

CostTables build_cost_tables(const Instance& instance) {
  CostTables t = empty_tables(instance);
  for (int i = 0; i < t.size; ++i) fill_row(instance, i, t);
  return t;
}

}  // namespace serial

Allocation evaluate_allocation(const Instance& instance,
                               std::vector<std::vector<int>> groups,
                               Objective objective) {
  return evaluate(instance, std::move(groups), objective, /*exact_size=*/true);
}

Allocation evaluate_partial_allocation(const Instance& instance,
                                       std::vector<std::vector<int>> groups,
                                       Objective objective) {
  return evaluate(instance, std::move(groups), objective, /*exact_size=*/false);
}

double allocation_cost(const Instance& instance, const Allocation& allocation) {
  return evaluate_allocation(instance, allocation.groups, Objective::kSum).objective;
}

double allocation_wait(const Instance& instance, const Allocation& allocation) {
  return evaluate_allocation(instance, allocation.groups, Objective::kLatency).objective;
}

}  // namespace carshare
