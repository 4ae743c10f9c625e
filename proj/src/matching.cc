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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "carshare/errors.h"
#include "carshare/matching.h"

namespace carshare {

std::string to_string(TiePolicy policy) {
  return policy == TiePolicy::kLexicographic ? "lex" : "adversarial";
}

double weight_tolerance(double reference) {
  return 1e-9 * std::max(1.0, std::abs(reference));
}

double matching_weight(const GeneralMatchingProblem& p,
                       const std::vector<std::pair<int, int>>& pairs) {
  double total = 0;
  for (auto [i, j] : pairs) total += p.weight(i, j);
  return total;
}

double matching_weight(const BipartiteMatchingProblem& p,
                       const std::vector<std::pair<int, int>>& pairs) {
  double total = 0;
  for (auto [i, j] : pairs) total += p.weight(i, j);
  return total;
}

namespace {

void check_finite(const std::vector<double>& weights) {
  for (double w : weights) {
    if (!std::isfinite(w)) throw DomainError("matching weights must be finite");
  }
}

void check_general(const GeneralMatchingProblem& p) {
  if (p.size < 0 || p.size % 2 != 0) {
    throw DomainError("perfect matching needs an even vertex count, got " +
                      std::to_string(p.size));
  }
  if (p.weights.size() != static_cast<std::size_t>(p.size) * p.size) {
    throw DomainError("weight matrix size does not match vertex count");
  }
  check_finite(p.weights);
}

void check_bipartite(const BipartiteMatchingProblem& p) {
  if (p.rows != p.cols) {
    throw DomainError("bipartite matching needs a square matrix, got " +
                      std::to_string(p.rows) + "x" + std::to_string(p.cols));
  }
  if (p.weights.size() != static_cast<std::size_t>(p.rows) * p.cols) {
    throw DomainError("weight matrix size does not match dimensions");
  }
  check_finite(p.weights);
}

// Depth-first search over perfect matchings in lexicographic order of the
// pair list. A lower bound (sum of per-vertex halves of the cheapest incident
// edge) prunes branches that cannot reach `limit`.
class GeneralSearch {
 public:
  explicit GeneralSearch(const GeneralMatchingProblem& p)
      : p_(p), matched_(p.size, 0), floor_(p.size, 0.0) {
    for (int i = 0; i < p.size; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < p.size; ++j) {
        if (j != i) best = std::min(best, p.weight(i, j));
      }
      floor_[i] = p.size > 1 ? best / 2 : 0;
    }
  }

  double Minimum() {
    best_ = std::numeric_limits<double>::infinity();
    collect_ = false;
    Recurse(0.0, Floor());
    return best_;
  }

  std::vector<MatchingResult> Collect(double limit, std::size_t cap) {
    best_ = limit;
    collect_ = true;
    cap_ = cap;
    found_.clear();
    Recurse(0.0, Floor());
    return std::move(found_);
  }

 private:
  double Floor() const {
    double f = 0;
    for (double x : floor_) f += x;
    return f;
  }

  void Recurse(double partial, double floor_left) {
    if (collect_ && found_.size() >= cap_) return;
    const double tol = weight_tolerance(best_);
    if (partial + floor_left > best_ + tol && std::isfinite(best_)) return;
    int i = 0;
    while (i < p_.size && matched_[i]) ++i;
    if (i == p_.size) {
      if (collect_) {
        found_.push_back({current_, partial, TiePolicy::kLexicographic});
      } else if (partial < best_) {
        best_ = partial;
      }
      return;
    }
    matched_[i] = 1;
    for (int j = i + 1; j < p_.size; ++j) {
      if (matched_[j]) continue;
      matched_[j] = 1;
      current_.emplace_back(i, j);
      Recurse(partial + p_.weight(i, j), floor_left - floor_[i] - floor_[j]);
      current_.pop_back();
      matched_[j] = 0;
    }
    matched_[i] = 0;
  }

  const GeneralMatchingProblem& p_;
  std::vector<char> matched_;
  std::vector<double> floor_;
  std::vector<std::pair<int, int>> current_;
  std::vector<MatchingResult> found_;
  double best_ = 0;
  bool collect_ = false;
  std::size_t cap_ = 0;
};

class BipartiteSearch {
 public:
  explicit BipartiteSearch(const BipartiteMatchingProblem& p)
      : p_(p), used_(p.cols, 0), floor_(p.rows + 1, 0.0) {
    // floor_[r] = sum of row minima for rows r..end.
    for (int r = p.rows - 1; r >= 0; --r) {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < p.cols; ++c) best = std::min(best, p.weight(r, c));
      floor_[r] = floor_[r + 1] + best;
    }
  }

  double Minimum() {
    best_ = std::numeric_limits<double>::infinity();
    collect_ = false;
    Recurse(0, 0.0);
    return best_;
  }

  std::vector<MatchingResult> Collect(double limit, std::size_t cap) {
    best_ = limit;
    collect_ = true;
    cap_ = cap;
    found_.clear();
    Recurse(0, 0.0);
    return std::move(found_);
  }

 private:
  void Recurse(int row, double partial) {
    if (collect_ && found_.size() >= cap_) return;
    if (std::isfinite(best_) && partial + floor_[row] > best_ + weight_tolerance(best_)) {
      return;
    }
    if (row == p_.rows) {
      if (collect_) {
        found_.push_back({current_, partial, TiePolicy::kLexicographic});
      } else if (partial < best_) {
        best_ = partial;
      }
      return;
    }
    for (int c = 0; c < p_.cols; ++c) {
      if (used_[c]) continue;
      used_[c] = 1;
      current_.emplace_back(row, c);
      Recurse(row + 1, partial + p_.weight(row, c));
      current_.pop_back();
      used_[c] = 0;
    }
  }

  const BipartiteMatchingProblem& p_;
  std::vector<char> used_;
  std::vector<double> floor_;
  std::vector<std::pair<int, int>> current_;
  std::vector<MatchingResult> found_;
  double best_ = 0;
  bool collect_ = false;
  std::size_t cap_ = 0;
};

void check_enumerable(const GeneralMatchingProblem& p) {
  if (p.size > kMaxEnumerableVertices) {
    throw CapabilityError("general matching enumeration is limited to " +
                          std::to_string(kMaxEnumerableVertices) + " vertices, got " +
                          std::to_string(p.size));
  }
}

void check_enumerable(const BipartiteMatchingProblem& p) {
  if (p.rows > kMaxEnumerableSide) {
    throw CapabilityError("bipartite matching enumeration is limited to " +
                          std::to_string(kMaxEnumerableSide) + "x" +
                          std::to_string(kMaxEnumerableSide) + ", got " +
                          std::to_string(p.rows) + "x" + std::to_string(p.cols));
  }
}

}  // namespace

MatchingResult min_perfect_matching_general(const GeneralMatchingProblem& p) {
  check_general(p);
  MatchingResult engine = blossom_min_perfect_matching(p);
  if (p.size > kMaxEnumerableVertices) return engine;
  // Canonical optimum: the first optimal matching in lexicographic order.
  auto optima = GeneralSearch(p).Collect(engine.total_weight, 1);
  return optima.empty() ? engine : optima.front();
}

MatchingResult min_perfect_matching_bipartite(const BipartiteMatchingProblem& p) {
  check_bipartite(p);
  MatchingResult engine = hungarian_min_assignment(p);
  if (p.rows > kMaxEnumerableSide) return engine;
  auto optima = BipartiteSearch(p).Collect(engine.total_weight, 1);
  return optima.empty() ? engine : optima.front();
}

MatchingResult exhaustive_min_perfect_matching(const GeneralMatchingProblem& p) {
  check_general(p);
  check_enumerable(p);
  GeneralSearch search(p);
  return search.Collect(search.Minimum(), 1).front();
}

MatchingResult exhaustive_min_assignment(const BipartiteMatchingProblem& p) {
  check_bipartite(p);
  check_enumerable(p);
  BipartiteSearch search(p);
  return search.Collect(search.Minimum(), 1).front();
}

std::vector<MatchingResult> enumerate_min_perfect_matchings(
    const GeneralMatchingProblem& p, std::size_t cap) {
  check_general(p);
  check_enumerable(p);
  GeneralSearch search(p);
  return search.Collect(search.Minimum(), cap);
}

std::vector<MatchingResult> enumerate_min_perfect_matchings(
    const BipartiteMatchingProblem& p, std::size_t cap) {
  check_bipartite(p);
  check_enumerable(p);
  BipartiteSearch search(p);
  return search.Collect(search.Minimum(), cap);
}

}  // namespace carshare
