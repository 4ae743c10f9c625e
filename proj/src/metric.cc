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

#include "carshare/metric.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "carshare/errors.h"

namespace carshare {

DistanceMatrix::DistanceMatrix(int size, double fill, double tolerance)
    : size_(size), tolerance_(tolerance) {
  if (size < 0) throw DomainError("DistanceMatrix: negative size");
  if (!(tolerance >= 0)) throw DomainError("DistanceMatrix: negative tolerance");
  d_.assign(static_cast<std::size_t>(size) * size, fill);
  for (int x = 0; x < size; ++x) d_[static_cast<std::size_t>(x) * size + x] = 0;
}

DistanceMatrix DistanceMatrix::FromRows(
    const std::vector<std::vector<double>>& rows, double tolerance) {
  const int n = static_cast<int>(rows.size());
  DistanceMatrix m(n, 0.0, tolerance);
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(rows[x].size()) != n) {
      std::ostringstream msg;
      msg << "distance matrix is not square: row " << x << " has "
          << rows[x].size() << " entries, expected " << n;
      throw DomainError(msg.str());
    }
    for (int y = 0; y < n; ++y) m.d_[static_cast<std::size_t>(x) * n + y] = rows[x][y];
  }
  return m;
}

double DistanceMatrix::at(LocationId x, LocationId y) const {
  if (!contains(x) || !contains(y)) {
    std::ostringstream msg;
    msg << "location id out of range: (" << x << ", " << y << ") with size "
        << size_;
    throw DomainError(msg.str());
  }
  return (*this)(x, y);
}

void DistanceMatrix::set(LocationId x, LocationId y, double value) {
  if (!contains(x) || !contains(y)) {
    throw DomainError("DistanceMatrix::set: location id out of range");
  }
  d_[static_cast<std::size_t>(x) * size_ + y] = value;
}

void DistanceMatrix::set_symmetric(LocationId x, LocationId y, double value) {
  set(x, y, value);
  set(y, x, value);
}

std::span<const double> DistanceMatrix::row(LocationId x) const {
  return {d_.data() + static_cast<std::size_t>(x) * size_,
          static_cast<std::size_t>(size_)};
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(size_);
  for (int x = 0; x < size_; ++x) {
    auto r = row(x);
    out[x].assign(r.begin(), r.end());
  }
  return out;
}

double path_length(const DistanceMatrix& m, std::span<const LocationId> points) {
  if (points.empty()) throw DomainError("path_length: empty path");
  for (LocationId p : points) {
    if (!m.contains(p)) {
      throw DomainError("path_length: location id " + std::to_string(p) +
                        " out of range");
    }
  }
  double total = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += m(points[i - 1], points[i]);
  }
  return total;
}

double path_length(const DistanceMatrix& m,
                   std::initializer_list<LocationId> points) {
  return path_length(m, std::span<const LocationId>(points.begin(), points.size()));
}

std::string to_string(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::kNegative:
      return "negative";
    case MetricViolation::Kind::kNonzeroDiagonal:
      return "nonzero-diagonal";
    case MetricViolation::Kind::kAsymmetry:
      return "asymmetry";
    case MetricViolation::Kind::kTriangle:
      return "triangle";
  }
  return "unknown";
}

std::string ValidationReport::ToString() const {
  if (ok()) return "metric ok";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    out << "\n  " << to_string(v.kind) << " at (" << v.x << ", " << v.y;
    if (v.kind == MetricViolation::Kind::kTriangle) out << ", " << v.z;
    out << ") by " << v.amount;
  }
  return out.str();
}

namespace {

// Violations whose first index is x, in (y, z) order.
void check_row(const DistanceMatrix& m, LocationId x,
               std::vector<MetricViolation>& out) {
  using Kind = MetricViolation::Kind;
  const int n = m.size();
  const double tol = m.tolerance();
  if (m(x, x) != 0) out.push_back({Kind::kNonzeroDiagonal, x, x, -1, m(x, x)});
  for (LocationId y = 0; y < n; ++y) {
    if (m(x, y) < 0) out.push_back({Kind::kNegative, x, y, -1, -m(x, y)});
    if (x < y && std::abs(m(x, y) - m(y, x)) > tol) {
      out.push_back({Kind::kAsymmetry, x, y, -1, std::abs(m(x, y) - m(y, x))});
    }
  }
  for (LocationId y = 0; y < n; ++y) {
    if (y == x) continue;
    for (LocationId z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      const double excess = m(x, z) - (m(x, y) + m(y, z));
      if (excess > tol) out.push_back({Kind::kTriangle, x, y, z, excess});
    }
  }
}

void check_graph(const EdgeGraph& g) {
  if (g.size < 1) throw DomainError("metric_closure: graph needs at least one location");
  if (!(g.default_cross_distance >= 0)) {
    throw DomainError("metric_closure: negative default cross distance");
  }
  for (const Edge& e : g.edges) {
    if (e.x < 0 || e.x >= g.size || e.y < 0 || e.y >= g.size) {
      throw DomainError("metric_closure: edge endpoint out of range");
    }
    if (e.x == e.y) {
      throw DomainError("metric_closure: self loop at " + std::to_string(e.x));
    }
    if (!(e.weight >= 0)) {
      throw DomainError("metric_closure: negative edge weight on (" +
                        std::to_string(e.x) + ", " + std::to_string(e.y) + ")");
    }
  }
}

constexpr double kUnreached = std::numeric_limits<double>::infinity();

std::vector<double> initial_distances(const EdgeGraph& g) {
  const std::size_t n = g.size;
  std::vector<double> d(n * n, kUnreached);
  for (std::size_t x = 0; x < n; ++x) d[x * n + x] = 0;
  for (const Edge& e : g.edges) {
    double& a = d[e.x * n + e.y];
    double& b = d[e.y * n + e.x];
    a = std::min(a, e.weight);
    b = std::min(b, e.weight);
  }
  return d;
}

DistanceMatrix finish_closure(const EdgeGraph& g, const std::vector<double>& d,
                              ValidationReport* report, bool parallel) {
  const int n = g.size;
  DistanceMatrix m(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double v = d[static_cast<std::size_t>(x) * n + y];
      m.set(x, y, v == kUnreached ? g.default_cross_distance : v);
    }
  }
  if (report != nullptr) {
    *report = parallel ? validate_metric(m) : serial::validate_metric(m);
  }
  return m;
}

}  // namespace

ValidationReport validate_metric(const DistanceMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<MetricViolation>> per_row(n);
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x) check_row(m, x, per_row[x]);
  ValidationReport report;
  for (auto& r : per_row) {
    report.violations.insert(report.violations.end(), r.begin(), r.end());
  }
  return report;
}

DistanceMatrix metric_closure(const EdgeGraph& g, ValidationReport* report) {
  check_graph(g);
  const int n = g.size;
  std::vector<double> d = initial_distances(g);
  for (int k = 0; k < n; ++k) {
    // Row k is invariant during pass k since d[k][k] == 0.
    const double* dk = d.data() + static_cast<std::size_t>(k) * n;
#pragma omp parallel for
    for (int i = 0; i < n; ++i) {
      double* di = d.data() + static_cast<std::size_t>(i) * n;
      const double dik = di[k];
      if (dik == kUnreached) continue;
      for (int j = 0; j < n; ++j) {
        const double via = dik + dk[j];
        if (via < di[j]) di[j] = via;
      }
    }
  }
  return finish_closure(g, d, report, /*parallel=*/true);
}

namespace serial {

ValidationReport validate_metric(const DistanceMatrix& m) {
  ValidationReport report;
  for (LocationId x = 0; x < m.size(); ++x) check_row(m, x, report.violations);
  return report;
}

DistanceMatrix metric_closure(const EdgeGraph& g, ValidationReport* report) {
  check_graph(g);
  const std::size_t n = g.size;
  std::vector<double> d = initial_distances(g);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d[i * n + k] + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
  return finish_closure(g, d, report, /*parallel=*/false);
}

}  // namespace serial

}  // namespace carshare
