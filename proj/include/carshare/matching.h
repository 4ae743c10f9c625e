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

// Minimum-weight perfect matching on complete graphs and on square bipartite
// graphs, plus exhaustive baselines and enumeration of all optima.
//
// Engines:
//   general    -- O(n^3) primal-dual blossom algorithm
//   bipartite  -- shortest augmenting path with potentials (negative weights ok)
//
// The front ends return the lexicographically smallest optimal pair list when
// the problem is small enough to enumerate, and the raw engine output
// otherwise.

#ifndef CARSHARE_MATCHING_H_
#define CARSHARE_MATCHING_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace carshare {

enum class TiePolicy { kLexicographic, kAdversarial };

std::string to_string(TiePolicy policy);

struct GeneralMatchingProblem {
  GeneralMatchingProblem() = default;
  explicit GeneralMatchingProblem(int n)
      : size(n), weights(static_cast<std::size_t>(n) * n, 0.0) {}

  int size = 0;
  std::vector<double> weights;  // row-major, kept symmetric by set()

  double weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * size + j]; }
  void set(int i, int j, double w) {
    weights[static_cast<std::size_t>(i) * size + j] = w;
    weights[static_cast<std::size_t>(j) * size + i] = w;
  }
};

struct BipartiteMatchingProblem {
  BipartiteMatchingProblem() = default;
  BipartiteMatchingProblem(int r, int c)
      : rows(r), cols(c), weights(static_cast<std::size_t>(r) * c, 0.0) {}

  int rows = 0;
  int cols = 0;
  std::vector<double> weights;

  double weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * cols + j]; }
  void set(int i, int j, double w) { weights[static_cast<std::size_t>(i) * cols + j] = w; }
};

struct MatchingResult {
  // General: (i, j) with i < j, sorted by i. Bipartite: (row, col) by row.
  std::vector<std::pair<int, int>> pairs;
  double total_weight = 0;
  TiePolicy policy = TiePolicy::kLexicographic;
};

inline constexpr int kMaxEnumerableVertices = 12;
inline constexpr int kMaxEnumerableSide = 8;

// Raw engines. No canonicalization; the blossom engine throws
// CapabilityError if weights are too large to scale exactly.
MatchingResult blossom_min_perfect_matching(const GeneralMatchingProblem& p);
MatchingResult hungarian_min_assignment(const BipartiteMatchingProblem& p);

// Throw DomainError on odd vertex count / non-square matrix or non-finite
// weights.
MatchingResult min_perfect_matching_general(const GeneralMatchingProblem& p);
MatchingResult min_perfect_matching_bipartite(const BipartiteMatchingProblem& p);

// Brute force over all (2m-1)!! pairings / all permutations. Returns the
// lexicographically smallest optimum. CapabilityError past the bounds above.
MatchingResult exhaustive_min_perfect_matching(const GeneralMatchingProblem& p);
MatchingResult exhaustive_min_assignment(const BipartiteMatchingProblem& p);

// Every optimal perfect matching (within tolerance), in lexicographic order,
// at most `cap` of them. CapabilityError past the bounds above.
std::vector<MatchingResult> enumerate_min_perfect_matchings(
    const GeneralMatchingProblem& p, std::size_t cap = 1u << 20);
std::vector<MatchingResult> enumerate_min_perfect_matchings(
    const BipartiteMatchingProblem& p, std::size_t cap = 1u << 20);

// Sum of the weights of `pairs` in p.
double matching_weight(const GeneralMatchingProblem& p,
                       const std::vector<std::pair<int, int>>& pairs);
double matching_weight(const BipartiteMatchingProblem& p,
                       const std::vector<std::pair<int, int>>& pairs);

// Tolerance used to call two matching totals equal.
double weight_tolerance(double reference);

}  // namespace carshare

#endif  // CARSHARE_MATCHING_H_
