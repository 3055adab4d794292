#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynmincut/graph.hpp"

namespace dynmincut {

class CutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CutResult {
  Weight value = 0;
  std::vector<VertexId> side;       // sorted; nonempty proper subset of V
  std::vector<EdgeKey> cut_edges;   // sorted keys crossing (side, V \ side)
};

/// Largest vertex count brute_force_mincut accepts.
inline constexpr std::size_t kMaxBruteForceVertices = 24;

namespace detail {

inline CutResult finish_cut(const WeightedGraph& g, std::vector<VertexId> side, Weight value) {
  std::sort(side.begin(), side.end());
  CutResult out;
  out.value = value;
  out.side = std::move(side);
  for (const auto& [e, w] : g.weights()) {
    const bool a = std::binary_search(out.side.begin(), out.side.end(), e.u);
    const bool b = std::binary_search(out.side.begin(), out.side.end(), e.v);
    if (a != b) out.cut_edges.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Exact global minimum cut by Stoer-Wagner with a lazy binary heap for the
/// maximum-adjacency order: O(|V| |E| log |V|). Disconnected inputs yield
/// value 0 with `side` a union of components.
inline CutResult stoer_wagner(const WeightedGraph& g) {
  const std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
  const std::size_t n = ids.size();
  if (n < 2) throw CutError("stoer_wagner: need at least two vertices, got " + std::to_string(n));

  std::unordered_map<VertexId, std::size_t> index;
  index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);

  std::vector<std::unordered_map<std::size_t, Weight>> adj(n);
  for (const auto& [e, w] : g.weights()) {
    const auto a = index.at(e.u);
    const auto b = index.at(e.v);
    adj[a][b] += w;
    adj[b][a] += w;
  }

  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<bool> alive(n, true);

  Weight best = std::numeric_limits<Weight>::max();
  std::vector<std::size_t> best_side;

  std::vector<Weight> key(n);
  std::vector<bool> added(n);
  for (std::size_t remaining = n; remaining > 1; --remaining) {
    std::fill(key.begin(), key.end(), 0);
    std::fill(added.begin(), added.end(), false);
    std::priority_queue<std::pair<Weight, std::size_t>> heap;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i]) heap.emplace(0, n - 1 - i);  // ties pop the smallest index
    }
    std::size_t prev = n;
    std::size_t last = n;
    while (!heap.empty()) {
      const auto [k, rev] = heap.top();
      heap.pop();
      const std::size_t x = n - 1 - rev;
      if (added[x] || k != key[x]) continue;
      added[x] = true;
      prev = last;
      last = x;
      for (const auto& [y, w] : adj[x]) {
        if (!added[y]) {
          key[y] += w;
          heap.emplace(key[y], n - 1 - y);
        }
      }
    }
    if (key[last] < best) {
      best = key[last];
      best_side = members[last];
    }
    if (best == 0) break;

    // Merge `last` into `prev`.
    for (const auto& [y, w] : adj[last]) {
      if (y == prev) continue;
      adj[prev][y] += w;
      adj[y][prev] += w;
      adj[y].erase(last);
    }
    adj[prev].erase(last);
    adj[last].clear();
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    members[last].clear();
    alive[last] = false;
  }

  std::vector<VertexId> side;
  side.reserve(best_side.size());
  for (auto i : best_side) side.push_back(ids[i]);
  return detail::finish_cut(g, std::move(side), best);
}

namespace detail {

// Lexicographic order of the sorted member lists of two bitmask sets.
inline bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t low = (a ^ b) & (~(a ^ b) + 1);
  const std::uint32_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;  // b continues with a larger element
  return (a & above) == 0;               // a is a proper prefix of b
}

}  // namespace detail

/// Exact global minimum cut by enumerating all 2^(|V|-1) - 1 bipartitions in
/// Gray-code order. Among minimum cuts, returns the side whose sorted vertex
/// list is lexicographically smallest. Test oracle; |V| <= 24.
inline CutResult brute_force_mincut(const WeightedGraph& g) {
  const std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
  const std::size_t n = ids.size();
  if (n < 2) throw CutError("brute_force_mincut: need at least two vertices");
  if (n > kMaxBruteForceVertices) {
    throw CutError("brute_force_mincut: " + std::to_string(n) + " vertices exceeds limit of " +
                   std::to_string(kMaxBruteForceVertices));
  }
  std::unordered_map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);

  bool unit = true;
  std::vector<std::uint32_t> mask_adj(n, 0);
  std::vector<std::vector<std::pair<std::size_t, Weight>>> adj(n);
  for (const auto& [e, w] : g.weights()) {
    const auto a = index.at(e.u);
    const auto b = index.at(e.v);
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
    mask_adj[a] |= 1u << b;
    mask_adj[b] |= 1u << a;
    unit = unit && w == 1;
  }

  // `other` holds the side without vertex 0; S is its complement.
  const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  std::uint32_t other = 0;
  Weight cut = 0;
  Weight best = std::numeric_limits<Weight>::max();
  std::uint32_t best_s = 0;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const std::size_t x = 1 + static_cast<std::size_t>(std::countr_zero(i));
    const std::uint32_t bit = 1u << x;
    const bool moving_out = (other & bit) == 0;
    Weight same = 0;  // weight from x to its current side
    Weight diff = 0;  // weight from x to the opposite side
    if (unit) {
      const std::uint32_t mine = moving_out ? (all & ~other) : other;
      same = std::popcount(mask_adj[x] & mine);
      diff = std::popcount(mask_adj[x]) - same;
    } else {
      for (const auto& [y, w] : adj[x]) {
        const bool y_other = (other >> y) & 1u;
        (y_other != moving_out ? same : diff) += w;
      }
    }
    cut += same - diff;
    other ^= bit;
    const std::uint32_t s = all & ~other;
    if (cut < best || (cut == best && detail::lex_less(s, best_s))) {
      best = cut;
      best_s = s;
    }
  }

  std::vector<VertexId> side;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_s >> i) & 1u) side.push_back(ids[i]);
  }
  return detail::finish_cut(g, std::move(side), best);
}

/// Copies a simple graph into the weighted container with unit weights.
inline WeightedGraph to_weighted(const DynamicGraph& g) {
  WeightedGraph w;
  for (VertexId v = 0; v < g.vertex_count(); ++v) w.add_vertex(v);
  for (const auto& e : g.edges()) w.add_weight(e, 1);
  return w;
}

}  // namespace dynmincut
