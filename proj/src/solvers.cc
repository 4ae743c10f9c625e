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

#include "carshare/solvers.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>

#include "carshare/errors.h"

namespace carshare {

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMA: return "ma";
    case Algorithm::kTA: return "ta";
    case Algorithm::kCA: return "ca";
    case Algorithm::kTAGeneralSum: return "ta-gen-sum";
    case Algorithm::kTAGeneralLat: return "ta-gen-lat";
  }
  return "?";
}

std::string algorithm_tag(Algorithm algorithm, const AlgoConfig& cfg, int capacity) {
  const std::string a = std::to_string(cfg.alpha);
  const std::string v = to_string(cfg.flavor);
  switch (algorithm) {
    case Algorithm::kMA: return "MA(" + a + "," + v + ")";
    case Algorithm::kTA: return "TA(" + a + ")";
    case Algorithm::kCA: return "CA(" + a + "," + v + ")";
    case Algorithm::kTAGeneralSum: return "TA(" + std::to_string(capacity) + ")sum";
    case Algorithm::kTAGeneralLat: return "TA(" + std::to_string(capacity) + ")lat";
  }
  return "?";
}

std::string SolveReport::tag() const { return algorithm_tag(algorithm, config, capacity); }

void check_config(const AlgoConfig& cfg) {
  if (cfg.alpha != 1 && cfg.alpha != 2) {
    throw DomainError("alpha must be 1 or 2, got " + std::to_string(cfg.alpha));
  }
}

namespace {

void check_pairing_instance(const Instance& instance, const AlgoConfig& cfg) {
  check_config(cfg);
  if (instance.capacity != 2) {
    throw CapabilityError("this algorithm serves exactly 2 requests per car; capacity is " +
                          std::to_string(instance.capacity));
  }
  check_instance(instance);
}

std::vector<MatchingResult> general_candidates(const GeneralMatchingProblem& p,
                                               TiePolicy ties) {
  if (ties == TiePolicy::kLexicographic) return {min_perfect_matching_general(p)};
  auto all = enumerate_min_perfect_matchings(p);
  for (auto& m : all) m.policy = TiePolicy::kAdversarial;
  return all;
}

std::vector<MatchingResult> bipartite_candidates(const BipartiteMatchingProblem& p,
                                                 TiePolicy ties) {
  if (ties == TiePolicy::kLexicographic) return {min_perfect_matching_bipartite(p)};
  auto all = enumerate_min_perfect_matchings(p);
  for (auto& m : all) m.policy = TiePolicy::kAdversarial;
  return all;
}

// Keeps the candidate with the largest realized objective; the earliest one
// wins among equals.
bool worse(double candidate, double incumbent) {
  return candidate > incumbent + weight_tolerance(incumbent);
}

// Sum along d -> s -> t, and the way back t -> d.
double trip(const Instance& in, int car, int request) {
  const auto& m = in.metric;
  const Request& r = in.requests[request];
  return path_length(m, {in.cars[car].location, r.pickup, r.dropoff});
}

double back(const Instance& in, int car, int request) {
  return in.metric(in.requests[request].dropoff, in.cars[car].location);
}

// Shared by TA(alpha) and both capacity-a variants. Row r of `p` is virtual
// car (r / n, r % n), i.e. copy-major.
SolveReport run_copies(const Instance& instance, const BipartiteMatchingProblem& p,
                       const AlgoConfig& cfg, Algorithm algorithm) {
  const int n = instance.num_cars();
  SolveReport best;
  bool have = false;
  const auto candidates = bipartite_candidates(p, cfg.ties);
  for (const MatchingResult& m3 : candidates) {
    std::vector<std::vector<int>> groups(n);
    std::vector<int> copy_requests(p.rows, -1);
    for (auto [row, request] : m3.pairs) {
      groups[row % n].push_back(request);
      copy_requests[row] = request;
    }
    Allocation allocation = evaluate_allocation(instance, groups, cfg.objective);
    if (have && !worse(allocation.objective, best.allocation.objective)) continue;
    best.allocation = std::move(allocation);
    best.v3 = m3.total_weight;
    best.copy_requests = std::move(copy_requests);
    have = true;
    if (cfg.ties == TiePolicy::kLexicographic) break;
  }
  best.algorithm = best.branch = algorithm;
  best.config = cfg;
  best.capacity = instance.capacity;
  best.tie_candidates = candidates.size();
  return best;
}

void check_v3_bound(SolveReport& report) {
  report.v3_bound_checked = true;
  report.v3_bound_holds =
      report.allocation.objective <= *report.v3 + weight_tolerance(*report.v3);
}

BipartiteMatchingProblem ta_problem(const Instance& instance, int alpha, bool by_speed) {
  const int n = instance.num_cars();
  BipartiteMatchingProblem p(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double scale = by_speed ? instance.cars[k].speed : 1.0;
    for (int i = 0; i < 2 * n; ++i) {
      p.set(k, i, (alpha * trip(instance, k, i) + back(instance, k, i)) / scale);
      p.set(n + k, i, trip(instance, k, i) / scale);
    }
  }
  return p;
}

SolveReport ta_impl(const Instance& instance, const AlgoConfig& cfg, bool by_speed) {
  check_pairing_instance(instance, cfg);
  SolveReport report =
      run_copies(instance, ta_problem(instance, cfg.alpha, by_speed), cfg, Algorithm::kTA);
  // Serving the gamma request, driving back, then the delta request is a
  // feasible route, and the optimal route is no longer. For latency that
  // route's latency equals v3 only when alpha = 2. Padded metrics break the
  // triangle inequality, so driving back to the depot can be a shortcut no
  // route can take and the bound does not apply.
  if (!instance.padded && (cfg.objective == Objective::kSum || cfg.alpha == 2)) {
    check_v3_bound(report);
  }
  return report;
}

void check_general_instance(const Instance& instance, int a) {
  if (a < 2) throw DomainError("capacity a must be at least 2");
  if (a > kMaxGroupSize) {
    throw CapabilityError("capacity " + std::to_string(a) + " exceeds the routing cap of " +
                          std::to_string(kMaxGroupSize));
  }
  if (instance.capacity != a) {
    throw DomainError("a = " + std::to_string(a) + " but instance capacity is " +
                      std::to_string(instance.capacity));
  }
  check_instance(instance);
}

}  // namespace

SolveReport ma_solve(const Instance& instance, const AlgoConfig& cfg) {
  check_pairing_instance(instance, cfg);
  const int n = instance.num_cars();
  const int m = instance.num_requests();
  const CostTables tables = build_cost_tables(instance);
  auto v = [&](int i, int j) { return tables.at(cfg.flavor, i, j); };

  GeneralMatchingProblem g1(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) g1.set(i, j, (v(i, j) + v(j, i)) / 2);
  }

  SolveReport best;
  bool have = false;
  std::size_t examined = 0;
  for (const MatchingResult& m1 : general_candidates(g1, cfg.ties)) {
    // Orient each pair so that v_ij >= v_ji; equal values keep i < j.
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> diff;
    for (auto [i, j] : m1.pairs) {
      if (v(i, j) < v(j, i)) std::swap(i, j);
      pairs.emplace_back(i, j);
      diff.push_back((v(i, j) - v(j, i)) / 2);
    }
    BipartiteMatchingProblem g2(n, n);
    for (int k = 0; k < n; ++k) {
      const LocationId d = instance.cars[k].location;
      for (int q = 0; q < n; ++q) {
        const auto [i, j] = pairs[q];
        const double via_i = cfg.alpha * instance.metric(d, instance.requests[i].pickup) + diff[q];
        const double via_j = cfg.alpha * instance.metric(d, instance.requests[j].pickup) - diff[q];
        g2.set(k, q, std::min(via_i, via_j));
      }
    }
    for (const MatchingResult& m2 : bipartite_candidates(g2, cfg.ties)) {
      ++examined;
      std::vector<std::vector<int>> groups(n);
      for (auto [k, q] : m2.pairs) groups[k] = {pairs[q].first, pairs[q].second};
      Allocation allocation = evaluate_allocation(instance, groups, cfg.objective);
      if (have && !worse(allocation.objective, best.allocation.objective)) continue;
      best.allocation = std::move(allocation);
      best.v1 = m1.total_weight;
      best.v2 = m2.total_weight;
      best.request_pairs = pairs;
      have = true;
    }
  }
  best.algorithm = best.branch = Algorithm::kMA;
  best.config = cfg;
  best.capacity = 2;
  best.tie_candidates = examined;
  return best;
}

SolveReport ta_solve(const Instance& instance, const AlgoConfig& cfg) {
  return ta_impl(instance, cfg, /*by_speed=*/false);
}

SolveReport ta_solve_speeds(const Instance& instance, const AlgoConfig& cfg) {
  return ta_impl(instance, cfg, /*by_speed=*/true);
}

SolveReport ca_solve(const Instance& instance, const AlgoConfig& cfg) {
  SolveReport ma = ma_solve(instance, cfg);
  SolveReport ta = ta_solve(instance, cfg);
  const double tol = weight_tolerance(ma.allocation.objective);
  SolveReport out = ta.allocation.objective < ma.allocation.objective - tol ? ta : ma;
  out.v1 = ma.v1;
  out.v2 = ma.v2;
  out.v3 = ta.v3;
  out.request_pairs = ma.request_pairs;
  out.copy_requests = ta.copy_requests;
  out.v3_bound_checked = ta.v3_bound_checked;
  out.v3_bound_holds = ta.v3_bound_holds;
  out.tie_candidates = ma.tie_candidates + ta.tie_candidates;
  out.algorithm = Algorithm::kCA;
  return out;
}

SolveReport ta_general_sum(const Instance& instance, int a, const AlgoConfig& cfg_in) {
  check_general_instance(instance, a);
  AlgoConfig cfg = cfg_in;
  cfg.objective = Objective::kSum;
  const int n = instance.num_cars();
  const int m = instance.num_requests();
  BipartiteMatchingProblem p(a * n, m);
  for (int j = 0; j < a; ++j) {
    for (int k = 0; k < n; ++k) {
      const bool discounted = cfg.literal_general_sum ? k == n - 1 : j == a - 1;
      for (int i = 0; i < m; ++i) {
        const double w = trip(instance, k, i) + (discounted ? 0.0 : back(instance, k, i));
        p.set(j * n + k, i, w);
      }
    }
  }
  SolveReport report = run_copies(instance, p, cfg, Algorithm::kTAGeneralSum);
  // Serving the requests one round trip at a time, with the discounted one
  // last, is a feasible route.
  if (!cfg.literal_general_sum && !instance.padded) check_v3_bound(report);
  return report;
}

SolveReport ta_general_lat(const Instance& instance, int a, const AlgoConfig& cfg_in) {
  check_general_instance(instance, a);
  AlgoConfig cfg = cfg_in;
  cfg.objective = Objective::kLatency;
  const int n = instance.num_cars();
  const int m = instance.num_requests();
  BipartiteMatchingProblem p(a * n, m);
  for (int j = 1; j <= a; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < m; ++i) {
        p.set((j - 1) * n + k, i,
              (a - j + 1) * trip(instance, k, i) + (a - j) * back(instance, k, i));
      }
    }
  }
  SolveReport report = run_copies(instance, p, cfg, Algorithm::kTAGeneralLat);
  // Round trips in copy order give latency exactly v3.
  if (!instance.padded) check_v3_bound(report);
  return report;
}

SolveReport solve(const Instance& instance, Algorithm algorithm, const AlgoConfig& cfg) {
  switch (algorithm) {
    case Algorithm::kMA: return ma_solve(instance, cfg);
    case Algorithm::kTA: return ta_solve(instance, cfg);
    case Algorithm::kCA: return ca_solve(instance, cfg);
    case Algorithm::kTAGeneralSum: return ta_general_sum(instance, instance.capacity, cfg);
    case Algorithm::kTAGeneralLat: return ta_general_lat(instance, instance.capacity, cfg);
  }
  throw DomainError("unknown algorithm");
}

Instance pad_instance(const Instance& instance) {
  if (instance.capacity != 2) throw CapabilityError("padding supports capacity 2 only");
  check_instance(instance, /*require_balanced=*/false);
  const int n = instance.num_cars();
  const int r = instance.num_requests();
  if (2 * n == r) throw DomainError("instance is already balanced");

  const DistanceMatrix& m = instance.metric;
  const int size = m.size();
  Instance out = instance;
  out.padded = true;

  if (2 * n > r) {
    // Locations: originals, then one copy per car, then the dummy spot.
    double total = 0;
    for (int x = 0; x < size; ++x) {
      for (int y = 0; y < size; ++y) total += m(x, y);
    }
    const double far = 1 + 2 * total;
    const int dummy = size + n;
    DistanceMatrix padded(size + n + 1);
    auto origin = [&](int x) { return x < size ? x : instance.cars[x - size].location; };
    for (int x = 0; x < dummy; ++x) {
      for (int y = 0; y < dummy; ++y) padded.set(x, y, x == y ? 0 : m(origin(x), origin(y)));
      padded.set_symmetric(x, dummy, x >= size ? 0 : far);
    }
    padded.set(dummy, dummy, 0);
    out.metric = padded;
    for (int k = 0; k < n; ++k) out.cars[k].location = size + k;
    out.dummy_requests = 2 * n - r;
    for (int i = 0; i < out.dummy_requests; ++i) out.requests.push_back({dummy, dummy});
  } else {
    const int spot = size;
    DistanceMatrix padded(size + 1);
    for (int x = 0; x < size; ++x) {
      for (int y = 0; y < size; ++y) padded.set(x, y, m(x, y));
    }
    out.metric = padded;
    out.dummy_cars = (r + 1) / 2 - n;
    for (int k = 0; k < out.dummy_cars; ++k) out.cars.push_back({spot, 1.0});
    if (r % 2 == 1) {
      out.dummy_requests = 1;
      out.requests.push_back({spot, spot});
    }
  }
  check_instance(out);
  return out;
}

Instance real_requests_only(const Instance& padded) {
  Instance out = padded;
  out.requests.resize(padded.num_real_requests());
  out.dummy_requests = 0;
  return out;
}

Allocation restrict_to_real(const Instance& padded, const Allocation& allocation,
                            Objective objective) {
  const int real = padded.num_real_requests();
  std::vector<std::vector<int>> groups;
  for (const auto& g : allocation.groups) {
    std::vector<int> kept;
    std::copy_if(g.begin(), g.end(), std::back_inserter(kept),
                 [real](int i) { return i < real; });
    groups.push_back(std::move(kept));
  }
  return evaluate_partial_allocation(real_requests_only(padded), std::move(groups), objective);
}

}  // namespace carshare
