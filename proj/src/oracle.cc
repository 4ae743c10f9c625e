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

#include "carshare/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <optional>

#include "carshare/errors.h"
#include "carshare/paircosts.h"

namespace carshare {

std::uint64_t allocation_count(int cars, int requests, int capacity, bool at_most) {
  constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
  // binom[r][s]
  std::vector<std::vector<std::uint64_t>> binom(requests + 1,
                                                std::vector<std::uint64_t>(requests + 1, 0));
  for (int r = 0; r <= requests; ++r) {
    binom[r][0] = 1;
    for (int s = 1; s <= r; ++s) {
      const std::uint64_t a = binom[r - 1][s - 1], b = s <= r - 1 ? binom[r - 1][s] : 0;
      binom[r][s] = a > kSat - b ? kSat : a + b;
    }
  }
  // ways[r] = allocations of r remaining requests to the remaining cars.
  std::vector<std::uint64_t> ways(requests + 1, 0);
  ways[0] = 1;
  for (int k = 0; k < cars; ++k) {
    std::vector<std::uint64_t> next(requests + 1, 0);
    for (int r = 0; r <= requests; ++r) {
      const int lo = at_most ? 0 : capacity;
      for (int s = lo; s <= std::min(capacity, r); ++s) {
        const std::uint64_t w = ways[r - s];
        if (w == 0 || binom[r][s] == 0) continue;
        const std::uint64_t term =
            binom[r][s] > kSat / w ? kSat : binom[r][s] * w;
        next[r] = next[r] > kSat - term ? kSat : next[r] + term;
      }
    }
    ways = std::move(next);
  }
  return ways[requests];
}

namespace {

using Mask = std::uint32_t;

// Car k picks a group from the still-unserved requests; the rest is solved
// recursively and memoized on (k, unserved mask). Groups are tried in
// lexicographic order of their sorted id lists and only a strictly better
// value replaces the incumbent, so the result is the lexicographically
// smallest optimal allocation.
class Search {
 public:
  Search(const Instance& instance, Objective objective, bool at_most)
      : in_(instance), objective_(objective), at_most_(at_most),
        n_(instance.num_cars()), m_(instance.num_requests()),
        group_value_(static_cast<std::size_t>(n_) << m_, kUnknown),
        best_value_(static_cast<std::size_t>(n_ + 1) << m_, kUnknown),
        best_choice_(static_cast<std::size_t>(n_ + 1) << m_, 0) {}

  Mask full() const { return m_ == 0 ? 0 : (Mask{1} << m_) - 1; }

  // Every group car k may take from `remaining`, lexicographic order.
  std::vector<Mask> Choices(int k, Mask remaining) const {
    std::vector<Mask> out;
    const int left = std::popcount(remaining);
    const int later = in_.capacity * (n_ - k - 1);
    std::vector<int> ids;
    for (int i = 0; i < m_; ++i) {
      if (remaining >> i & 1) ids.push_back(i);
    }
    std::function<void(std::size_t, Mask, int)> rec = [&](std::size_t from, Mask g, int size) {
      const bool size_ok = at_most_ ? size <= in_.capacity : size == in_.capacity;
      if (size_ok && left - size <= later) out.push_back(g);
      if (size == in_.capacity) return;
      for (std::size_t t = from; t < ids.size(); ++t) rec(t + 1, g | Mask{1} << ids[t], size + 1);
    };
    rec(0, 0, 0);
    return out;
  }

  double GroupValue(int k, Mask g) {
    double& slot = group_value_[(static_cast<std::size_t>(k) << m_) | g];
    if (slot == kUnknown) {
      std::vector<Request> members;
      for (int i = 0; i < m_; ++i) {
        if (g >> i & 1) members.push_back(in_.requests[i]);
      }
      slot = group_route(in_.metric, in_.cars[k], members, objective_).value /
             in_.cars[k].speed;
    }
    return slot;
  }

  // Optimum for cars k.. serving exactly `remaining`.
  double Best(int k, Mask remaining) {
    const std::size_t key = (static_cast<std::size_t>(k) << m_) | remaining;
    if (best_value_[key] != kUnknown) return best_value_[key];
    double best = std::numeric_limits<double>::infinity();
    Mask choice = 0;
    if (k == n_) {
      best = remaining == 0 ? 0.0 : best;
    } else {
      for (Mask g : Choices(k, remaining)) {
        const double value = GroupValue(k, g) + Best(k + 1, remaining & ~g);
        if (value < best - tolerance(best)) {
          best = value;
          choice = g;
        }
      }
    }
    best_value_[key] = best;
    best_choice_[key] = choice;
    return best;
  }

  // Groups for cars k.., following memoized choices.
  void Reconstruct(int k, Mask remaining, std::vector<std::vector<int>>& groups) {
    for (; k < n_; ++k) {
      Best(k, remaining);
      const Mask g = best_choice_[(static_cast<std::size_t>(k) << m_) | remaining];
      for (int i = 0; i < m_; ++i) {
        if (g >> i & 1) groups[k].push_back(i);
      }
      remaining &= ~g;
    }
  }

  static double tolerance(double reference) {
    return std::isfinite(reference) ? kTolerance * std::max(1.0, std::abs(reference)) : 0.0;
  }

 private:
  static constexpr double kUnknown = -1.0;

  const Instance& in_;
  Objective objective_;
  bool at_most_;
  int n_, m_;
  std::vector<double> group_value_;
  std::vector<double> best_value_;
  std::vector<Mask> best_choice_;
};

void check_oracle_size(const Instance& instance, bool at_most, std::uint64_t limit) {
  const std::uint64_t count = allocation_count(instance.num_cars(), instance.num_requests(),
                                               instance.capacity, at_most);
  if (count > limit || instance.num_requests() > 24) {
    throw CapabilityError("oracle would enumerate " + std::to_string(count) +
                          " allocations; the limit is " + std::to_string(limit));
  }
  if (instance.capacity > kMaxGroupSize) {
    throw CapabilityError("oracle routes groups of at most " +
                          std::to_string(kMaxGroupSize) + " requests");
  }
}

Allocation finish(const Instance& instance, Objective objective, bool at_most,
                  std::vector<std::vector<int>> groups) {
  return at_most ? evaluate_partial_allocation(instance, std::move(groups), objective)
                 : evaluate_allocation(instance, std::move(groups), objective);
}

Allocation solve_serial(const Instance& instance, Objective objective, bool at_most) {
  Search search(instance, objective, at_most);
  std::vector<std::vector<int>> groups(instance.num_cars());
  if (search.Best(0, search.full()) == std::numeric_limits<double>::infinity()) {
    throw DomainError("no feasible allocation");
  }
  search.Reconstruct(0, search.full(), groups);
  return finish(instance, objective, at_most, std::move(groups));
}

// The first car's choices are split across threads. Each thread keeps one
// memo for all of its choices (entries depend only on car and mask); the
// reduction scans the choices in order with the serial tie rule.
Allocation solve_parallel(const Instance& instance, Objective objective, bool at_most) {
  if (instance.num_cars() == 0) return finish(instance, objective, at_most, {});
  const Search probe(instance, objective, at_most);
  const std::vector<Mask> first = probe.Choices(0, probe.full());
  std::vector<double> value(first.size());
  std::vector<std::vector<std::vector<int>>> groups(first.size());
  std::exception_ptr error;

#pragma omp parallel
  {
    std::optional<Search> search;
#pragma omp for schedule(dynamic)
    for (std::size_t c = 0; c < first.size(); ++c) {
      try {
        if (!search) search.emplace(instance, objective, at_most);
        const Mask rest = search->full() & ~first[c];
        value[c] = search->GroupValue(0, first[c]) + search->Best(1, rest);
        groups[c].resize(instance.num_cars());
        for (int i = 0; i < instance.num_requests(); ++i) {
          if (first[c] >> i & 1) groups[c][0].push_back(i);
        }
        search->Reconstruct(1, rest, groups[c]);
      } catch (...) {
#pragma omp critical
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  double best = std::numeric_limits<double>::infinity();
  std::size_t pick = first.size();
  for (std::size_t c = 0; c < first.size(); ++c) {
    if (value[c] < best - Search::tolerance(best)) {
      best = value[c];
      pick = c;
    }
  }
  if (pick == first.size()) throw DomainError("no feasible allocation");
  return finish(instance, objective, at_most, std::move(groups[pick]));
}

}  // namespace

Allocation brute_force_opt(const Instance& instance, Objective objective,
                           std::uint64_t limit) {
  check_instance(instance);
  check_oracle_size(instance, false, limit);
  return solve_parallel(instance, objective, false);
}

Allocation brute_force_opt_capacitated(const Instance& instance, Objective objective,
                                       std::uint64_t limit) {
  check_instance(instance, /*require_balanced=*/false);
  if (instance.num_requests() > instance.capacity * instance.num_cars()) {
    throw DomainError("more requests than total capacity");
  }
  check_oracle_size(instance, true, limit);
  return solve_parallel(instance, objective, true);
}

namespace serial {

Allocation brute_force_opt(const Instance& instance, Objective objective,
                           std::uint64_t limit) {
  check_instance(instance);
  check_oracle_size(instance, false, limit);
  return solve_serial(instance, objective, false);
}

}  // namespace serial

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::kSum: return "sum";
    case Variant::kSumST: return "sum,s=t";
    case Variant::kLat: return "lat";
    case Variant::kLatST: return "lat,s=t";
  }
  return "?";
}

Variant variant_of(const Instance& instance, Objective objective) {
  const bool st = instance.is_s_equals_t();
  if (objective == Objective::kSum) return st ? Variant::kSumST : Variant::kSum;
  return st ? Variant::kLatST : Variant::kLat;
}

std::optional<double> table_bound(Algorithm algorithm, const AlgoConfig& cfg,
                                  Variant variant, int capacity) {
  const int col = static_cast<int>(variant);
  const bool sum = variant == Variant::kSum || variant == Variant::kSumST;
  const bool u1 = cfg.alpha == 1 && cfg.flavor == Flavor::kU;
  const bool mu2 = cfg.alpha == 2 && cfg.flavor == Flavor::kMu;
  // Columns: sum, sum s=t, latency, latency s=t.
  static constexpr double kMA1u[] = {2, 1.5, 3, 2};
  static constexpr double kMA2mu[] = {3, 1.5, 2, 2};
  static constexpr double kTA1[] = {3, 3, 3, 2};
  static constexpr double kTA2[] = {4, 4, 2, 2};
  static constexpr double kCA1u[] = {2, 7.0 / 5, 3, 8.0 / 5};
  static constexpr double kCA2mu[] = {3, 10.0 / 7, 5.0 / 3, 3.0 / 2};
  switch (algorithm) {
    case Algorithm::kMA:
      if (u1) return kMA1u[col];
      if (mu2) return kMA2mu[col];
      return std::nullopt;
    case Algorithm::kTA:
      return cfg.alpha == 1 ? kTA1[col] : kTA2[col];
    case Algorithm::kCA:
      if (u1) return kCA1u[col];
      if (mu2) return kCA2mu[col];
      return std::nullopt;
    case Algorithm::kTAGeneralSum:
      if (!sum || cfg.literal_general_sum) return std::nullopt;
      return 2.0 * capacity - 1;
    case Algorithm::kTAGeneralLat:
      if (sum) return std::nullopt;
      return static_cast<double>(capacity);
  }
  return std::nullopt;
}

RatioRecord ratio_check(const Instance& instance, Algorithm algorithm, AlgoConfig cfg,
                        std::optional<double> optimum) {
  cfg.ties = TiePolicy::kAdversarial;
  if (algorithm == Algorithm::kTAGeneralSum) cfg.objective = Objective::kSum;
  if (algorithm == Algorithm::kTAGeneralLat) cfg.objective = Objective::kLatency;
  const SolveReport report = solve(instance, algorithm, cfg);

  RatioRecord rec;
  rec.digest = instance_digest(instance);
  rec.tag = report.tag();
  rec.algorithm = algorithm;
  rec.config = cfg;
  rec.variant = variant_of(instance, cfg.objective);
  rec.objective = report.allocation.objective;
  rec.optimum = optimum ? *optimum : brute_force_opt(instance, cfg.objective).objective;
  rec.bound = table_bound(algorithm, cfg, rec.variant, instance.capacity);
  if (rec.optimum <= kTolerance) {
    rec.degenerate = true;
    rec.ratio = 1;
    rec.within_bound = rec.objective <= kTolerance;
  } else {
    rec.ratio = rec.objective / rec.optimum;
    rec.within_bound = !rec.bound || rec.ratio <= *rec.bound + kTolerance;
  }
  return rec;
}

std::vector<SweepCase> table_cases(Objective objective) {
  std::vector<SweepCase> cases;
  for (Algorithm algorithm : {Algorithm::kMA, Algorithm::kTA, Algorithm::kCA}) {
    for (int alpha : {1, 2}) {
      AlgoConfig cfg;
      cfg.alpha = alpha;
      cfg.flavor = alpha == 1 ? Flavor::kU : Flavor::kMu;
      cfg.objective = objective;
      cfg.ties = TiePolicy::kAdversarial;
      cases.push_back({algorithm, cfg});
    }
  }
  return cases;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<SweepCase> resolve_cases(const SweepOptions& options) {
  if (!options.cases.empty()) return options.cases;
  if (options.a == 2) {
    auto cases = table_cases(Objective::kSum);
    auto lat = table_cases(Objective::kLatency);
    cases.insert(cases.end(), lat.begin(), lat.end());
    return cases;
  }
  AlgoConfig sum_cfg, lat_cfg;
  sum_cfg.ties = lat_cfg.ties = TiePolicy::kAdversarial;
  lat_cfg.objective = Objective::kLatency;
  return {{Algorithm::kTAGeneralSum, sum_cfg}, {Algorithm::kTAGeneralLat, lat_cfg}};
}

std::vector<RatioRecord> sweep_one(const SweepOptions& options,
                                   const std::vector<SweepCase>& cases, int index) {
  const Instance instance = sweep_instance(options, index);
  std::optional<double> opt_sum, opt_lat;
  std::vector<RatioRecord> out;
  for (const SweepCase& c : cases) {
    Objective objective = c.config.objective;
    if (c.algorithm == Algorithm::kTAGeneralSum) objective = Objective::kSum;
    if (c.algorithm == Algorithm::kTAGeneralLat) objective = Objective::kLatency;
    auto& opt = objective == Objective::kSum ? opt_sum : opt_lat;
    if (!opt) opt = brute_force_opt(instance, objective).objective;
    out.push_back(ratio_check(instance, c.algorithm, c.config, opt));
    out.back().index = index;
  }
  return out;
}

SweepResult summarize(std::vector<std::vector<RatioRecord>> per_instance) {
  SweepResult result;
  for (auto& records : per_instance) {
    for (auto& rec : records) result.records.push_back(std::move(rec));
  }
  for (const RatioRecord& rec : result.records) {
    auto it = std::find_if(result.summary.begin(), result.summary.end(),
                           [&](const SweepSummaryRow& row) {
                             return row.tag == rec.tag && row.variant == rec.variant;
                           });
    if (it == result.summary.end()) {
      result.summary.push_back({rec.tag, rec.variant, rec.bound, 0, 0, 0, 0});
      it = result.summary.end() - 1;
    }
    ++it->records;
    if (rec.degenerate) {
      ++it->degenerate;
    } else {
      it->max_ratio = std::max(it->max_ratio, rec.ratio);
    }
    if (!rec.within_bound) {
      ++it->violations;
      ++result.violations;
    }
  }
  return result;
}

void check_sweep(const SweepOptions& options) {
  if (options.count < 0) throw DomainError("count must be nonnegative");
  if (options.ns.empty()) throw DomainError("sweep needs at least one car count");
  for (int n : options.ns) {
    if (n < 1) throw DomainError("car counts must be positive");
    const std::uint64_t count = allocation_count(n, n * options.a, options.a, false);
    if (count > kMaxOracleAllocations) {
      throw CapabilityError("n = " + std::to_string(n) + ", a = " + std::to_string(options.a) +
                            " needs " + std::to_string(count) +
                            " oracle allocations; the limit is " +
                            std::to_string(kMaxOracleAllocations));
    }
  }
}

}  // namespace

Instance sweep_instance(const SweepOptions& options, int index) {
  const int n = options.ns[static_cast<std::size_t>(index) % options.ns.size()];
  const std::uint64_t seed = splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(index)));
  return random_instance(n, options.a, options.mode, seed, options.grid);
}

SweepResult ratio_sweep(const SweepOptions& options) {
  check_sweep(options);
  const auto cases = resolve_cases(options);
  std::vector<std::vector<RatioRecord>> per_instance(options.count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < options.count; ++i) {
    try {
      per_instance[i] = sweep_one(options, cases, i);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return summarize(std::move(per_instance));
}

namespace serial {

SweepResult ratio_sweep(const SweepOptions& options) {
  check_sweep(options);
  const auto cases = resolve_cases(options);
  std::vector<std::vector<RatioRecord>> per_instance(options.count);
  for (int i = 0; i < options.count; ++i) per_instance[i] = sweep_one(options, cases, i);
  return summarize(std::move(per_instance));
}

}  // namespace serial

}  // namespace carshare
