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

// Allocation algorithms.
//
//   MA(alpha, v)  pair requests by (v_ij + v_ji)/2, then assign pairs to cars
//   TA(alpha)     split each car into a gamma copy (first request, then back
//                 to the depot) and a delta copy, assign requests to copies
//   CA(alpha, v)  better of MA and TA; MA on ties
//   TA(a)         capacity-a transportation algorithm, sum or latency flavor
//
// Under TiePolicy::kAdversarial every matching step enumerates all of its
// optimal matchings and the run returns the combination with the largest
// realized objective. That is the worst output the algorithm may legally
// produce, and needs the problem sizes to stay within the enumeration bounds
// in matching.h.

#ifndef CARSHARE_SOLVERS_H_
#define CARSHARE_SOLVERS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carshare/instance.h"
#include "carshare/matching.h"
#include "carshare/paircosts.h"

namespace carshare {

enum class Algorithm { kMA, kTA, kCA, kTAGeneralSum, kTAGeneralLat };

std::string to_string(Algorithm algorithm);

struct AlgoConfig {
  int alpha = 1;
  Flavor flavor = Flavor::kU;
  TiePolicy ties = TiePolicy::kLexicographic;
  Objective objective = Objective::kSum;
  // Generalized sum variant only: put the return-leg discount on every copy
  // of the last car instead of on one copy per car.
  bool literal_general_sum = false;
};

// Throws DomainError unless alpha is 1 or 2.
void check_config(const AlgoConfig& cfg);

struct SolveReport {
  Allocation allocation;
  std::optional<double> v1;  // MA: weight of the request pairing
  std::optional<double> v2;  // MA: weight of the pair-to-car assignment
  std::optional<double> v3;  // TA: weight of the request-to-copy assignment
  // MA: request pairs (i, j) oriented so that v_ij >= v_ji.
  std::vector<std::pair<int, int>> request_pairs;
  // TA: requests matched to each virtual car, row order of the assignment
  // problem (copy-major: row = copy * n + car).
  std::vector<int> copy_requests;
  Algorithm algorithm = Algorithm::kMA;
  // Branch that produced the allocation (differs from `algorithm` for CA).
  Algorithm branch = Algorithm::kMA;
  AlgoConfig config;
  int capacity = 2;
  // TA only: whether realized <= v3 is implied for this configuration, and
  // whether it held.
  bool v3_bound_checked = false;
  bool v3_bound_holds = true;
  // Number of optimal matching combinations examined (adversarial policy).
  std::size_t tie_candidates = 1;

  // e.g. "MA(1,u)", "TA(2)", "CA(2,mu)", "TA(3)sum".
  std::string tag() const;
};

std::string algorithm_tag(Algorithm algorithm, const AlgoConfig& cfg, int capacity = 2);

// Capacity-2 algorithms. Throw CapabilityError for capacity != 2 and
// DomainError for an unbalanced or malformed instance.
SolveReport ma_solve(const Instance& instance, const AlgoConfig& cfg);
SolveReport ta_solve(const Instance& instance, const AlgoConfig& cfg);
SolveReport ca_solve(const Instance& instance, const AlgoConfig& cfg);

// TA with v3 weights divided by the speed of the car owning the copy.
SolveReport ta_solve_speeds(const Instance& instance, const AlgoConfig& cfg);

// Capacity-a transportation algorithms; `a` must equal instance.capacity.
// CapabilityError for a > kMaxGroupSize. cfg.objective is overridden.
SolveReport ta_general_sum(const Instance& instance, int a, const AlgoConfig& cfg = {});
SolveReport ta_general_lat(const Instance& instance, int a, const AlgoConfig& cfg = {});

// Dispatch by algorithm.
SolveReport solve(const Instance& instance, Algorithm algorithm, const AlgoConfig& cfg);

// Balances a capacity-2 instance.
//   2|D| > |R|: every car moves to a private copy of its location, and
//     2|D| - |R| same-point dummy requests are added at a new location that
//     is 0 from the car copies and L from everything else,
//     L = 1 + 2 * (sum of all distances).
//   2|D| < |R|: ceil(|R|/2) - |D| dummy cars are added at a new location at
//     distance 0 from every location; for odd |R| one dummy request is added
//     there too.
// The result is flagged padded. Throws DomainError if already balanced.
Instance pad_instance(const Instance& instance);

// The padded instance without its dummy requests.
Instance real_requests_only(const Instance& padded);

// Objective of `allocation` counting real requests only: every group loses
// its dummy requests and is re-routed.
Allocation restrict_to_real(const Instance& padded, const Allocation& allocation,
                            Objective objective);

}  // namespace carshare

#endif  // CARSHARE_SOLVERS_H_
