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

// Maximum-weight maximum-cardinality matching, primal-dual with blossoms,
// O(n^3). Endpoint p of edge k is vertex edges[k].{i,j} for p = 2k, 2k+1.
// Vertex duals are stored doubled so integer weights keep every quantity
// integral. A minimum-weight perfect matching on a complete graph is obtained
// by maximizing C - w.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "carshare/errors.h"
#include "carshare/matching.h"

namespace carshare {
namespace {

using i64 = std::int64_t;

struct WeightedEdge {
  int i, j;
  i64 w;
};

class Blossom {
 public:
  Blossom(int nvertex, std::vector<WeightedEdge> edges)
      : n_(nvertex), edges_(std::move(edges)) {}

  // mate[v] = partner vertex or -1.
  std::vector<int> Solve();

 private:
  i64 slack(int k) const {
    const WeightedEdge& e = edges_[k];
    return dual_[e.i] + dual_[e.j] - 2 * e.w;
  }
  int endpoint(int p) const { return p & 1 ? edges_[p / 2].j : edges_[p / 2].i; }

  static int wrap(int j, int size) { return ((j % size) + size) % size; }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void AssignLabel(int w, int t, int p);
  int ScanBlossom(int v, int w);
  void AddBlossom(int base, int k);
  void ExpandBlossom(int b, bool endstage);
  void AugmentBlossom(int b, int v);
  void AugmentMatching(int k);

  int n_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, parent_, base_, bestedge_;
  std::vector<std::vector<int>> childs_, endps_, bestedges_;
  std::vector<char> has_bestedges_;
  std::vector<int> unused_;
  std::vector<i64> dual_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

void Blossom::AssignLabel(int w, int t, int p) {
  const int b = inblossom_[w];
  assert(label_[w] == 0 && label_[b] == 0);
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    const int base = base_[b];
    assert(mate_[base] >= 0);
    AssignLabel(endpoint(mate_[base]), 1, mate_[base] ^ 1);
  }
}

// Trace back from v and w to find either a new blossom base or an augmenting
// path. Returns the base or -1.
int Blossom::ScanBlossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    assert(label_[b] == 1);
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint(labelend_[b]);
      b = inblossom_[v];
      assert(label_[b] == 2);
      v = endpoint(labelend_[b]);
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void Blossom::AddBlossom(int base, int k) {
  int v = edges_[k].i, w = edges_[k].j;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  auto& path = childs_[b];
  auto& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint(labelend_[bv]);
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint(labelend_[bw]);
    bw = inblossom_[w];
  }
  assert(label_[bb] == 1);
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;
  for (int leaf : leaves(b)) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  }

  std::vector<int> bestedgeto(2 * n_, -1);
  for (int sub : path) {
    std::vector<std::vector<int>> lists;
    if (!has_bestedges_[sub]) {
      for (int leaf : leaves(sub)) {
        std::vector<int> ks;
        for (int p : neighbend_[leaf]) ks.push_back(p / 2);
        lists.push_back(std::move(ks));
      }
    } else {
      lists.push_back(bestedges_[sub]);
    }
    for (const auto& list : lists) {
      for (int kk : list) {
        int i = edges_[kk].i, j = edges_[kk].j;
        if (inblossom_[j] == b) std::swap(i, j);
        const int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = kk;
        }
      }
    }
    bestedges_[sub].clear();
    has_bestedges_[sub] = 0;
    bestedge_[sub] = -1;
  }
  bestedges_[b].clear();
  for (int kk : bestedgeto) {
    if (kk != -1) bestedges_[b].push_back(kk);
  }
  has_bestedges_[b] = 1;
  bestedge_[b] = -1;
  for (int kk : bestedges_[b]) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
}

void Blossom::ExpandBlossom(int b, bool endstage) {
  const std::vector<int> kids = childs_[b];
  for (int s : kids) {
    parent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      ExpandBlossom(s, endstage);
    } else {
      for (int leaf : leaves(s)) inblossom_[leaf] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    // Relabel the sub-blossoms on the even-length path from the entry child
    // to the base.
    const auto& ch = childs_[b];
    const auto& ep = endps_[b];
    const int len = static_cast<int>(ch.size());
    const int entrychild = inblossom_[endpoint(labelend_[b] ^ 1)];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
    int jstep, endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint(p ^ 1)] = 0;
      label_[endpoint(ep[wrap(j - endptrick, len)] ^ endptrick ^ 1)] = 0;
      AssignLabel(endpoint(p ^ 1), 2, p);
      allowedge_[ep[wrap(j - endptrick, len)] / 2] = 1;
      j += jstep;
      p = ep[wrap(j - endptrick, len)] ^ endptrick;
      allowedge_[p / 2] = 1;
      j += jstep;
    }
    int bv = ch[wrap(j, len)];
    label_[endpoint(p ^ 1)] = label_[bv] = 2;
    labelend_[endpoint(p ^ 1)] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (ch[wrap(j, len)] != entrychild) {
      bv = ch[wrap(j, len)];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int v = -1;
      for (int leaf : leaves(bv)) {
        v = leaf;
        if (label_[leaf] != 0) break;
      }
      if (label_[v] != 0) {
        assert(label_[v] == 2);
        assert(inblossom_[v] == bv);
        label_[v] = 0;
        label_[endpoint(mate_[base_[bv]])] = 0;
        AssignLabel(v, 2, labelend_[v]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  bestedges_[b].clear();
  has_bestedges_[b] = 0;
  bestedge_[b] = -1;
  unused_.push_back(b);
}

// Swap matched/unmatched edges over the alternating path through blossom b
// between vertex v and the base.
void Blossom::AugmentBlossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) AugmentBlossom(t, v);
  auto& ch = childs_[b];
  auto& ep = endps_[b];
  const int len = static_cast<int>(ch.size());
  const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep, endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = ch[wrap(j, len)];
    const int p = ep[wrap(j - endptrick, len)] ^ endptrick;
    if (t >= n_) AugmentBlossom(t, endpoint(p));
    j += jstep;
    t = ch[wrap(j, len)];
    if (t >= n_) AugmentBlossom(t, endpoint(p ^ 1));
    mate_[endpoint(p)] = p ^ 1;
    mate_[endpoint(p ^ 1)] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
  assert(base_[b] == v);
}

void Blossom::AugmentMatching(int k) {
  const int v = edges_[k].i, w = edges_[k].j;
  const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
  for (const auto& start : starts) {
    int s = start[0];
    int p = start[1];
    while (true) {
      const int bs = inblossom_[s];
      assert(label_[bs] == 1);
      if (bs >= n_) AugmentBlossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint(labelend_[bs]);
      const int bt = inblossom_[t];
      assert(label_[bt] == 2);
      s = endpoint(labelend_[bt]);
      const int j = endpoint(labelend_[bt] ^ 1);
      assert(base_[bt] == t);
      if (bt >= n_) AugmentBlossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> Blossom::Solve() {
  const int n = n_;
  const int nedge = static_cast<int>(edges_.size());
  if (nedge == 0) return std::vector<int>(n, -1);
  i64 maxweight = 0;
  for (const WeightedEdge& e : edges_) maxweight = std::max(maxweight, e.w);

  neighbend_.assign(n, {});
  for (int k = 0; k < nedge; ++k) {
    neighbend_[edges_[k].i].push_back(2 * k + 1);
    neighbend_[edges_[k].j].push_back(2 * k);
  }
  mate_.assign(n, -1);
  label_.assign(2 * n, 0);
  labelend_.assign(2 * n, -1);
  inblossom_.resize(n);
  for (int v = 0; v < n; ++v) inblossom_[v] = v;
  parent_.assign(2 * n, -1);
  childs_.assign(2 * n, {});
  base_.assign(2 * n, -1);
  for (int v = 0; v < n; ++v) base_[v] = v;
  endps_.assign(2 * n, {});
  bestedge_.assign(2 * n, -1);
  bestedges_.assign(2 * n, {});
  has_bestedges_.assign(2 * n, 0);
  unused_.clear();
  for (int b = n; b < 2 * n; ++b) unused_.push_back(b);
  dual_.assign(2 * n, 0);
  for (int v = 0; v < n; ++v) dual_[v] = maxweight;
  allowedge_.assign(nedge, 0);

  for (int stage = 0; stage < n; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n; b < 2 * n; ++b) {
      bestedges_[b].clear();
      has_bestedges_[b] = 0;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();
    for (int v = 0; v < n; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) AssignLabel(v, 1, -1);
    }

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        assert(label_[inblossom_[v]] == 1);
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint(p);
          if (inblossom_[v] == inblossom_[w]) continue;
          i64 kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              AssignLabel(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = ScanBlossom(v, w);
              if (base >= 0) {
                AddBlossom(base, k);
              } else {
                AugmentMatching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              assert(label_[inblossom_[w]] == 2);
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      // Dual update. Maximum cardinality: no type-1 delta until nothing
      // else applies.
      int deltatype = -1;
      i64 delta = 0;
      int deltaedge = -1, deltablossom = -1;
      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const i64 d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const i64 kslack = slack(bestedge_[b]);
          assert(kslack % 2 == 0);
          const i64 d = kslack / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
            (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<i64>(0, *std::min_element(dual_.begin(), dual_.begin() + n));
      }

      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[deltaedge] = 1;
        int i = edges_[deltaedge].i, j = edges_[deltaedge].j;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = 1;
        const int i = edges_[deltaedge].i;
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else {
        ExpandBlossom(deltablossom, false);
      }
    }
    if (!augmented) break;

    for (int b = n; b < 2 * n; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
        ExpandBlossom(b, true);
      }
    }
  }

  std::vector<int> partner(n, -1);
  for (int v = 0; v < n; ++v) {
    if (mate_[v] >= 0) partner[v] = endpoint(mate_[v]);
  }
  return partner;
}

// Weights are scaled to integers on a 2^-20 grid.
constexpr double kScale = 1 << 20;
constexpr double kMaxAbsWeight = 1e9;

}  // namespace

MatchingResult blossom_min_perfect_matching(const GeneralMatchingProblem& p) {
  const int n = p.size;
  MatchingResult result;
  if (n == 0) return result;
  double max_abs = 0;
  for (double w : p.weights) max_abs = std::max(max_abs, std::abs(w));
  if (max_abs > kMaxAbsWeight) {
    throw CapabilityError("edge weight magnitude exceeds exact-scaling limit");
  }
  const i64 offset = static_cast<i64>(std::llround((max_abs + 1) * kScale));
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const i64 scaled = static_cast<i64>(std::llround(p.weight(i, j) * kScale));
      edges.push_back({i, j, offset - scaled});
    }
  }
  const std::vector<int> mate = Blossom(n, std::move(edges)).Solve();
  for (int i = 0; i < n; ++i) {
    if (mate[i] < 0) throw CapabilityError("blossom engine left a vertex unmatched");
    if (i < mate[i]) {
      result.pairs.emplace_back(i, mate[i]);
      result.total_weight += p.weight(i, mate[i]);
    }
  }
  return result;
}

}  // namespace carshare
