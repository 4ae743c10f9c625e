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


// Slow reference implementations used as test oracles. Nothing here calls
// into the library beyond the plain data types and the distance matrix, so
// a bug in the library cannot hide behind the same bug in its oracle.

#ifndef CARSHARE_TESTS_INDEPENDENT_H_
#define CARSHARE_TESTS_INDEPENDENT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "carshare/instance.h"
#include "carshare/metric.h"

namespace indep {

using carshare::Car;
using carshare::DistanceMatrix;
using carshare::Instance;
using carshare::Objective;
using carshare::Request;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Best route over every permutation of the 2|group| stops that picks each
// request up before dropping it off. Stop code 2p is the pickup of position
// p, 2p+1 its drop-off.
inline double route(const DistanceMatrix& m, const Car& car,
                    const std::vector<Request>& group, Objective objective) {
  if (group.empty()) return 0;
  std::vector<int> stops(2 * group.size());
  std::iota(stops.begin(), stops.end(), 0);
  double best = kInf;
  do {
    std::vector<bool> picked(group.size(), false);
    bool feasible = true;
    for (int s : stops) {
      if (s % 2 == 0) {
        picked[s / 2] = true;
      } else if (!picked[s / 2]) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    double clock = 0, waits = 0;
    int at = car.location;
    for (int s : stops) {
      const Request& r = group[s / 2];
      const int next = s % 2 == 0 ? r.pickup : r.dropoff;
      clock += m(at, next);
      at = next;
      if (s % 2 == 1) waits += clock;
    }
    best = std::min(best, objective == Objective::kSum ? clock : waits);
  } while (std::next_permutation(stops.begin(), stops.end()));
  return best;
}

// Three-route pair minima, written straight from their definitions.
inline double u(const DistanceMatrix& m, const Request& i, const Request& j) {
  const double a = m(i.pickup, j.pickup) + m(j.pickup, i.dropoff) + m(i.dropoff, j.dropoff);
  const double b = m(i.pickup, j.pickup) + m(j.pickup, j.dropoff) + m(j.dropoff, i.dropoff);
  const double c = m(i.pickup, i.dropoff) + m(i.dropoff, j.pickup) + m(j.pickup, j.dropoff);
  return std::min({a, b, c});
}

inline double mu(const DistanceMatrix& m, const Request& i, const Request& j) {
  const double sij = m(i.pickup, j.pickup);
  const double a = 2 * (sij + m(j.pickup, i.dropoff)) + m(i.dropoff, j.dropoff);
  const double b = 2 * (sij + m(j.pickup, j.dropoff)) + m(j.dropoff, i.dropoff);
  const double c = 2 * m(i.pickup, i.dropoff) + m(i.dropoff, j.pickup) + m(j.pickup, j.dropoff);
  return std::min({a, b, c});
}

// Optimum over every assignment: permute the requests, car k takes the k-th
// block of `capacity`. Each car's term is divided by its speed.
inline double optimum(const Instance& inst, Objective objective) {
  const int a = inst.capacity;
  std::vector<int> perm(inst.requests.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double total = 0;
    for (int k = 0; k < inst.num_cars(); ++k) {
      std::vector<Request> group;
      for (int p = 0; p < a; ++p) group.push_back(inst.requests[perm[k * a + p]]);
      total += route(inst.metric, inst.cars[k], group, objective) / inst.cars[k].speed;
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Minimum perfect matching on a complete graph given as a dense matrix.
inline double min_perfect_matching(const std::vector<std::vector<double>>& w,
                                   std::vector<bool>& used) {
  int first = -1;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) return 0;
  used[first] = true;
  double best = kInf;
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    best = std::min(best, w[first][j] + min_perfect_matching(w, used));
    used[j] = false;
  }
  used[first] = false;
  return best;
}

inline double min_perfect_matching(const std::vector<std::vector<double>>& w) {
  std::vector<bool> used(w.size(), false);
  return min_perfect_matching(w, used);
}

inline double min_assignment(const std::vector<std::vector<double>>& w) {
  std::vector<int> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) total += w[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Random points on an integer grid, rounded Euclidean distances, then
// shortest paths so the triangle inequality holds exactly.
inline DistanceMatrix random_metric(int size, std::mt19937_64& rng, int grid = 50) {
  std::uniform_int_distribution<int> coord(0, grid);
  std::vector<std::pair<int, int>> pts(size);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  std::vector<std::vector<double>> d(size, std::vector<double>(size, 0));
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      const double dx = pts[x].first - pts[y].first, dy = pts[x].second - pts[y].second;
      d[x][y] = std::round(std::sqrt(dx * dx + dy * dy));
    }
  for (int k = 0; k < size; ++k)
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) d[x][y] = std::min(d[x][y], d[x][k] + d[k][y]);
  return DistanceMatrix::FromRows(d);
}

// Complete graph with random integer edge weights, shortest-path closed.
// Unlike the planar metrics these can be far from Euclidean.
inline DistanceMatrix random_graph_metric(int size, std::mt19937_64& rng, int max_weight = 20) {
  std::uniform_int_distribution<int> wd(0, max_weight);
  std::vector<std::vector<double>> d(size, std::vector<double>(size, 0));
  for (int x = 0; x < size; ++x)
    for (int y = x + 1; y < size; ++y) d[x][y] = d[y][x] = wd(rng);
  for (int k = 0; k < size; ++k)
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) d[x][y] = std::min(d[x][y], d[x][k] + d[k][y]);
  return DistanceMatrix::FromRows(d);
}

}  // namespace indep

#endif  // CARSHARE_TESTS_INDEPENDENT_H_
