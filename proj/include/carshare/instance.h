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

// Car-sharing instances: cars, requests, the metric they live in, and the
// allocations solvers produce for them.

#ifndef CARSHARE_INSTANCE_H_
#define CARSHARE_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carshare/metric.h"

namespace carshare {

struct Request {
  LocationId pickup = 0;
  LocationId dropoff = 0;

  bool same_point() const { return pickup == dropoff; }
  bool operator==(const Request&) const = default;
};

struct Car {
  LocationId location = 0;
  double speed = 1.0;

  bool operator==(const Car&) const = default;
};

enum class Objective { kSum, kLatency };

enum class InstanceMode { kGeneral, kSEqualsT };

std::string to_string(Objective objective);

struct Instance {
  DistanceMatrix metric;
  std::vector<Car> cars;
  std::vector<Request> requests;
  // Requests served per car.
  int capacity = 2;
  // Padded instances are deliberately non-metric; see pad_instance().
  bool padded = false;
  // Dummy cars/requests added by padding sit at the end of their lists.
  int dummy_cars = 0;
  int dummy_requests = 0;

  int num_cars() const { return static_cast<int>(cars.size()); }
  int num_requests() const { return static_cast<int>(requests.size()); }
  int num_real_cars() const { return num_cars() - dummy_cars; }
  int num_real_requests() const { return num_requests() - dummy_requests; }
  bool balanced() const { return num_requests() == capacity * num_cars(); }
  // Every request has pickup == dropoff.
  bool is_s_equals_t() const;

  bool operator==(const Instance&) const = default;
};

// Structural checks: ids in range, speeds > 0, capacity >= 1, and (unless
// `require_balanced` is false) |R| == capacity * |D|. The metric is validated
// unless the instance is flagged padded. Throws DomainError.
void check_instance(const Instance& instance, bool require_balanced = true);

enum class StopKind : std::uint8_t { kPickup, kDropoff };

struct Stop {
  int request;  // request id (or position within a group, see paircosts)
  StopKind kind;

  auto operator<=>(const Stop&) const = default;
};

std::string to_string(const Stop& stop);

struct Allocation {
  // groups[k] holds the request ids served by car k, ascending.
  std::vector<std::vector<int>> groups;
  // orders[k] is the visit sequence car k actually uses.
  std::vector<std::vector<Stop>> orders;
  Objective objective_kind = Objective::kSum;
  double objective = 0;
};

// Worst-case instances. Location, car and request numbering follows the
// figure labels: car k_i is index i-1, request r_i is index i-1.
namespace fixtures {

// Three locations at pairwise distance 1.
enum Fig1Location : LocationId { kA = 0, kB = 1, kC = 2 };
// Two triangles: P-Q-R on top, S-U-T at the bottom.
enum Fig2Location : LocationId { kP = 0, kQ = 1, kR = 2, kS = 3, kU = 4, kT = 5 };

}  // namespace fixtures

// Cars k1,k2 at A; requests (A,B), (A,C), (B,B), (C,C).
Instance fixture_fig1();
// Closure of {P-Q:4, Q-R:4, S-U:1, U-T:1}, cross distance 5. Cars at P, R,
// U, U; s=t requests at Q, Q, P, R, S, S, T, T.
Instance fixture_fig2();
// Same topology as fig2 with top edges 2, 2.
Instance fixture_fig3();
// Throws DomainError on an unknown name.
Instance fixture_by_name(std::string_view name);

// Restriction to the listed cars and requests (in the given order). The
// metric is shared unchanged.
Instance sub_instance(const Instance& instance, std::span<const int> cars,
                      std::span<const int> requests);

// Integer grid points in [0, grid]^2, rounded Euclidean distances, metric
// closed. Small grids produce many ties. Deterministic for a fixed seed.
// Throws DomainError if n < 1, capacity < 2 or grid < 1.
Instance random_instance(int n, int capacity, InstanceMode mode,
                         std::uint64_t seed, int grid = 100);

// JSON document:
//   { "locations": int, "distances": [[num]],
//     "cars": [{"location": int, "speed": num?}],
//     "requests": [{"pickup": int, "dropoff": int}],
//     "capacity": int?, "padded": bool?,
//     "dummy_cars": int?, "dummy_requests": int? }
// parse_instance throws ParseError on malformed text and DomainError on
// inconsistent content. With `check` false only the document shape is
// enforced (check_instance is skipped).
Instance parse_instance(std::string_view text, bool check = true);
std::string serialize_instance(const Instance& instance);
Instance load_instance(const std::filesystem::path& path, bool check = true);
void save_instance(const Instance& instance, const std::filesystem::path& path);

// Stable 64-bit FNV-1a digest of the serialized instance, as 16 hex digits.
std::string instance_digest(const Instance& instance);

}  // namespace carshare

#endif  // CARSHARE_INSTANCE_H_
