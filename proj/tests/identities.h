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


// Closed forms that the pairing and transportation steps must satisfy,
// computed from first principles over a solver's output.

#ifndef CARSHARE_TESTS_IDENTITIES_H_
#define CARSHARE_TESTS_IDENTITIES_H_

#include <algorithm>
#include <vector>

#include "carshare/instance.h"
#include "carshare/paircosts.h"
#include "independent.h"

namespace identities {

using carshare::Allocation;
using carshare::Flavor;
using carshare::Instance;

inline double v(const Instance& in, Flavor flavor, int i, int j) {
  const auto& ri = in.requests[i];
  const auto& rj = in.requests[j];
  return flavor == Flavor::kU ? indep::u(in.metric, ri, rj) : indep::mu(in.metric, ri, rj);
}

inline double to_pickup(const Instance& in, int k, int i) {
  return in.metric(in.cars[k].location, in.requests[i].pickup);
}

// sum over (k,{i,j}) of min{alpha w(d_k,s_i) + v_ij, alpha w(d_k,s_j) + v_ji}
inline double pairing_identity(const Instance& in, const Allocation& a, int alpha, Flavor flavor) {
  double total = 0;
  for (int k = 0; k < static_cast<int>(a.groups.size()); ++k) {
    const int i = a.groups[k][0], j = a.groups[k][1];
    total += std::min(alpha * to_pickup(in, k, i) + v(in, flavor, i, j),
                      alpha * to_pickup(in, k, j) + v(in, flavor, j, i));
  }
  return total;
}

// Half of sum over (k,{i,j}) of alpha (w(d_k,s_i) + w(d_k,s_j)) + v_ij + v_ji.
inline double half_sum(const Instance& in, const Allocation& a, int alpha, Flavor flavor) {
  double total = 0;
  for (int k = 0; k < static_cast<int>(a.groups.size()); ++k) {
    const int i = a.groups[k][0], j = a.groups[k][1];
    total += alpha * (to_pickup(in, k, i) + to_pickup(in, k, j)) + v(in, flavor, i, j) +
             v(in, flavor, j, i);
  }
  return total / 2;
}

// sum over (k,{i,j}) of the cheaper of: alpha w(d,s_i,t_i) + w(t_i,d,s_j,t_j)
// and the same with i, j swapped.
inline double copies_identity(const Instance& in, const Allocation& a, int alpha) {
  const auto& m = in.metric;
  double total = 0;
  for (int k = 0; k < static_cast<int>(a.groups.size()); ++k) {
    const int d = in.cars[k].location;
    const auto& ri = in.requests[a.groups[k][0]];
    const auto& rj = in.requests[a.groups[k][1]];
    const double ij = alpha * carshare::path_length(m, {d, ri.pickup, ri.dropoff}) +
                      carshare::path_length(m, {ri.dropoff, d, rj.pickup, rj.dropoff});
    const double ji = alpha * carshare::path_length(m, {d, rj.pickup, rj.dropoff}) +
                      carshare::path_length(m, {rj.dropoff, d, ri.pickup, ri.dropoff});
    total += std::min(ij, ji);
  }
  return total;
}

}  // namespace identities

#endif  // CARSHARE_TESTS_IDENTITIES_H_
