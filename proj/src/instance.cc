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

#include "carshare/instance.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "carshare/errors.h"

namespace carshare {

std::string to_string(Objective objective) {
  return objective == Objective::kSum ? "sum" : "lat";
}

std::string to_string(const Stop& stop) {
  return (stop.kind == StopKind::kPickup ? "s" : "t") + std::to_string(stop.request);
}

bool Instance::is_s_equals_t() const {
  return std::all_of(requests.begin(), requests.end(),
                     [](const Request& r) { return r.same_point(); });
}

void check_instance(const Instance& instance, bool require_balanced) {
  const int size = instance.metric.size();
  if (instance.capacity < 1) throw DomainError("capacity must be at least 1");
  if (instance.dummy_cars < 0 || instance.dummy_cars > instance.num_cars() ||
      instance.dummy_requests < 0 ||
      instance.dummy_requests > instance.num_requests()) {
    throw DomainError("dummy counts out of range");
  }
  for (int k = 0; k < instance.num_cars(); ++k) {
    const Car& car = instance.cars[k];
    if (car.location < 0 || car.location >= size) {
      throw DomainError("car " + std::to_string(k) + " location " +
                        std::to_string(car.location) + " out of range");
    }
    if (!(car.speed > 0) || !std::isfinite(car.speed)) {
      throw DomainError("car " + std::to_string(k) + " has nonpositive speed");
    }
  }
  for (int i = 0; i < instance.num_requests(); ++i) {
    const Request& r = instance.requests[i];
    if (r.pickup < 0 || r.pickup >= size || r.dropoff < 0 || r.dropoff >= size) {
      throw DomainError("request " + std::to_string(i) + " location out of range");
    }
  }
  if (require_balanced && !instance.balanced()) {
    std::ostringstream msg;
    msg << "instance has " << instance.num_requests() << " requests but "
        << instance.num_cars() << " cars x capacity " << instance.capacity
        << " = " << instance.capacity * instance.num_cars();
    throw DomainError(msg.str());
  }
  if (!instance.padded) {
    const ValidationReport report = validate_metric(instance.metric);
    if (!report.ok()) throw DomainError("instance metric invalid: " + report.ToString());
  }
}

namespace {

Instance two_triangle_fixture(double top_edge) {
  using namespace fixtures;
  EdgeGraph g;
  g.size = 6;
  g.edges = {{kP, kQ, top_edge}, {kQ, kR, top_edge}, {kS, kU, 1}, {kU, kT, 1}};
  g.default_cross_distance = 5;
  Instance instance;
  instance.metric = metric_closure(g);
  instance.cars = {{kP}, {kR}, {kU}, {kU}};
  instance.requests = {{kQ, kQ}, {kQ, kQ}, {kP, kP}, {kR, kR},
                       {kS, kS}, {kS, kS}, {kT, kT}, {kT, kT}};
  return instance;
}

}  // namespace

Instance fixture_fig1() {
  using namespace fixtures;
  EdgeGraph g;
  g.size = 3;
  g.edges = {{kA, kB, 1}, {kB, kC, 1}, {kA, kC, 1}};
  g.default_cross_distance = 1;
  Instance instance;
  instance.metric = metric_closure(g);
  instance.cars = {{kA}, {kA}};
  instance.requests = {{kA, kB}, {kA, kC}, {kB, kB}, {kC, kC}};
  return instance;
}

Instance fixture_fig2() { return two_triangle_fixture(4); }

Instance fixture_fig3() { return two_triangle_fixture(2); }

Instance fixture_by_name(std::string_view name) {
  if (name == "fig1") return fixture_fig1();
  if (name == "fig2") return fixture_fig2();
  if (name == "fig3") return fixture_fig3();
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

Instance sub_instance(const Instance& instance, std::span<const int> cars,
                      std::span<const int> requests) {
  Instance out;
  out.metric = instance.metric;
  out.capacity = instance.capacity;
  out.padded = instance.padded;
  for (int k : cars) {
    if (k < 0 || k >= instance.num_cars()) throw DomainError("sub_instance: bad car id");
    out.cars.push_back(instance.cars[k]);
  }
  for (int i : requests) {
    if (i < 0 || i >= instance.num_requests()) {
      throw DomainError("sub_instance: bad request id");
    }
    out.requests.push_back(instance.requests[i]);
  }
  return out;
}

Instance random_instance(int n, int capacity, InstanceMode mode,
                         std::uint64_t seed, int grid) {
  if (n < 1) throw DomainError("random_instance: need at least one car");
  if (capacity < 2) throw DomainError("random_instance: capacity must be >= 2");
  if (grid < 1) throw DomainError("random_instance: grid must be positive");
  const int num_requests = n * capacity;
  const int points_per_request = mode == InstanceMode::kGeneral ? 2 : 1;
  const int size = n + num_requests * points_per_request;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, grid);
  std::vector<std::pair<int, int>> points(size);
  for (auto& p : points) {
    p.first = coord(rng);
    p.second = coord(rng);
  }

  EdgeGraph g;
  g.size = size;
  for (int x = 0; x < size; ++x) {
    for (int y = x + 1; y < size; ++y) {
      const double dx = points[x].first - points[y].first;
      const double dy = points[x].second - points[y].second;
      g.edges.push_back({x, y, std::round(std::hypot(dx, dy))});
    }
  }

  Instance instance;
  instance.metric = metric_closure(g);
  instance.capacity = capacity;
  for (int k = 0; k < n; ++k) instance.cars.push_back({k});
  for (int i = 0; i < num_requests; ++i) {
    const LocationId pickup = n + i * points_per_request;
    const LocationId dropoff = mode == InstanceMode::kGeneral ? pickup + 1 : pickup;
    instance.requests.push_back({pickup, dropoff});
  }
  return instance;
}

}  // namespace carshare
