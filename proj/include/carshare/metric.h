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

// Travel-time metric over a finite set of locations.
//
// A DistanceMatrix is a dense square matrix of nonnegative travel times.
// Construction does not enforce the metric axioms; validate_metric() reports
// every violated axiom instance instead, so that deliberately non-metric
// matrices (padded instances) can still be represented.

#ifndef CARSHARE_METRIC_H_
#define CARSHARE_METRIC_H_

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace carshare {

using LocationId = int;

// Slack used for every floating comparison in the library.
inline constexpr double kTolerance = 1e-9;

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int size, double fill = 0.0,
                          double tolerance = kTolerance);

  // Throws DomainError if `rows` is not square.
  static DistanceMatrix FromRows(const std::vector<std::vector<double>>& rows,
                                 double tolerance = kTolerance);

  int size() const { return size_; }
  double tolerance() const { return tolerance_; }

  // Unchecked access.
  double operator()(LocationId x, LocationId y) const {
    return d_[static_cast<std::size_t>(x) * size_ + y];
  }
  // Throws DomainError on out-of-range ids.
  double at(LocationId x, LocationId y) const;

  void set(LocationId x, LocationId y, double value);
  void set_symmetric(LocationId x, LocationId y, double value);

  bool contains(LocationId x) const { return x >= 0 && x < size_; }
  std::span<const double> row(LocationId x) const;
  std::vector<std::vector<double>> rows() const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  int size_ = 0;
  double tolerance_ = kTolerance;
  std::vector<double> d_;
};

// Sum of consecutive distances along `points`; a single point has length 0.
// Throws DomainError on an empty sequence or an out-of-range id.
double path_length(const DistanceMatrix& m, std::span<const LocationId> points);
double path_length(const DistanceMatrix& m,
                   std::initializer_list<LocationId> points);

struct MetricViolation {
  enum class Kind { kNegative, kNonzeroDiagonal, kAsymmetry, kTriangle };
  Kind kind;
  LocationId x = -1;
  LocationId y = -1;
  LocationId z = -1;  // only for kTriangle: d[x][z] > d[x][y] + d[y][z]
  double amount = 0;  // size of the violation

  bool operator==(const MetricViolation&) const = default;
};

struct ValidationReport {
  std::vector<MetricViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
  bool operator==(const ValidationReport&) const = default;
};

std::string to_string(MetricViolation::Kind kind);

// O(size^3). Rows are checked in parallel; the violation order is the same
// as the serial reference (by x, then y, then z).
ValidationReport validate_metric(const DistanceMatrix& m);

struct Edge {
  LocationId x;
  LocationId y;
  double weight;
};

struct EdgeGraph {
  int size = 0;
  std::vector<Edge> edges;
  // Distance assigned to location pairs in different connected components.
  double default_cross_distance = 0;
};

// All-pairs shortest paths over `g` (Floyd-Warshall). Pairs in different
// components get g.default_cross_distance. The result is re-validated; pass
// `report` to receive the validation outcome.
// Throws DomainError on negative weights, self loops, bad ids or size < 1.
DistanceMatrix metric_closure(const EdgeGraph& g,
                              ValidationReport* report = nullptr);

namespace serial {

// Single-threaded reference kernels, kept for testing and benchmarking.
ValidationReport validate_metric(const DistanceMatrix& m);
DistanceMatrix metric_closure(const EdgeGraph& g,
                              ValidationReport* report = nullptr);

}  // namespace serial

}  // namespace carshare

#endif  // CARSHARE_METRIC_H_
