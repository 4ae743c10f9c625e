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

// Exact optima by exhaustive search, and approximation-ratio bookkeeping.

#ifndef CARSHARE_ORACLE_H_
#define CARSHARE_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carshare/instance.h"
#include "carshare/solvers.h"

namespace carshare {

// Allocations the oracle agrees to enumerate.
inline constexpr std::uint64_t kMaxOracleAllocations = 2520;

// Number of distinct allocations: ordered partitions of the requests into
// per-car groups of exactly `capacity` (or at most `capacity` when
// `at_most`). Saturates at UINT64_MAX.
std::uint64_t allocation_count(int cars, int requests, int capacity, bool at_most);

// Optimal allocation, ties broken towards the lexicographically smallest
// group list. Throws CapabilityError (stating the count) when the instance
// has more than `limit` allocations, DomainError when unbalanced.
Allocation brute_force_opt(const Instance& instance, Objective objective,
                           std::uint64_t limit = kMaxOracleAllocations);

// Same search, but every car serves at most `capacity` requests and the
// instance need not be balanced (requests <= capacity * cars).
Allocation brute_force_opt_capacitated(const Instance& instance, Objective objective,
                                       std::uint64_t limit = kMaxOracleAllocations);

namespace serial {

Allocation brute_force_opt(const Instance& instance, Objective objective,
                           std::uint64_t limit = kMaxOracleAllocations);

}  // namespace serial

enum class Variant { kSum, kSumST, kLat, kLatST };

std::string to_string(Variant variant);
Variant variant_of(const Instance& instance, Objective objective);

// Worst-case ratio proven for the algorithm on the variant, if any. Capacity
// a generalized algorithms: 2a - 1 (sum) and a (latency).
std::optional<double> table_bound(Algorithm algorithm, const AlgoConfig& cfg,
                                  Variant variant, int capacity = 2);

struct RatioRecord {
  int index = -1;  // instance index within a sweep
  std::string digest;
  std::string tag;
  Algorithm algorithm = Algorithm::kMA;
  AlgoConfig config;
  Variant variant = Variant::kSum;
  double objective = 0;  // algorithm's realized objective
  double optimum = 0;    // oracle
  double ratio = 0;      // objective / optimum; 1 when degenerate
  std::optional<double> bound;
  bool within_bound = true;
  // Optimum is 0; ratio excluded from statistics. within_bound then means
  // the algorithm also reached 0.
  bool degenerate = false;
};

// Runs the algorithm with adversarial ties (cfg.ties is overridden) and
// compares with the oracle. Pass `optimum` to reuse a known oracle value.
RatioRecord ratio_check(const Instance& instance, Algorithm algorithm, AlgoConfig cfg,
                        std::optional<double> optimum = std::nullopt);

struct SweepCase {
  Algorithm algorithm;
  AlgoConfig config;
};

// The six capacity-2 configurations (MA, TA, CA with alpha 1 / u and
// alpha 2 / mu) under `objective`.
std::vector<SweepCase> table_cases(Objective objective);

struct SweepOptions {
  int count = 0;
  std::vector<int> ns = {2, 3};  // car counts, cycled by instance index
  int a = 2;                     // capacity
  InstanceMode mode = InstanceMode::kGeneral;
  std::uint64_t seed = 0;
  int grid = 100;  // coordinate range of the random instances
  // Empty: all six table configurations for both objectives when a = 2,
  // both generalized algorithms otherwise.
  std::vector<SweepCase> cases;
};

// Deterministic per-index instance of a sweep.
Instance sweep_instance(const SweepOptions& options, int index);

struct SweepSummaryRow {
  std::string tag;
  Variant variant = Variant::kSum;
  std::optional<double> bound;
  double max_ratio = 0;
  int records = 0;
  int degenerate = 0;
  int violations = 0;
};

struct SweepResult {
  // Instance-major, then case order. Independent of thread scheduling.
  std::vector<RatioRecord> records;
  std::vector<SweepSummaryRow> summary;
  int violations = 0;
};

SweepResult ratio_sweep(const SweepOptions& options);

namespace serial {

SweepResult ratio_sweep(const SweepOptions& options);

}  // namespace serial

}  // namespace carshare

#endif  // CARSHARE_ORACLE_H_
