#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynmincut/dynamic_forest.hpp"
#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"

namespace dynmincut {

/// Maximal k-packing of edge-disjoint forests T_1..T_k over a dynamic weighted
/// graph, maintained as k layered dynamic spanning forests.
///
/// A key e of weight w(e) is a bundle of w(e) unit copies. Level i sees the
/// residual graph G minus the copies used by T_1..T_{i-1}, so e is live at
/// level i iff w(e) - |{j in usage(e) : j < i}| > 0. Each level's forest spans
/// its residual graph, which is exactly maximality. A forest holds at most one
/// copy of any key.
///
/// Levels are 1-based in this interface.
class ForestPacking {
 public:
  ForestPacking(std::size_t n, std::size_t k, std::vector<VertexId> vertices, std::uint64_t seed = 0)
      : n_(n), k_(k), seed_(seed), vertices_(std::move(vertices)) {
    if (k_ == 0) throw std::invalid_argument("forest packing: k must be positive");
  }

  /// Packing over all vertices [0, n).
  ForestPacking(std::size_t n, std::size_t k, std::uint64_t seed = 0)
      : ForestPacking(n, k, iota_vertices(n), seed) {}

  std::size_t k() const { return k_; }
  std::size_t vertex_range() const { return n_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  void increment(const EdgeKey& e) {
    last_mutations_ = 0;
    auto it = states_.find(e);
    if (it == states_.end()) {
      const EdgeId id = next_id_++;
      it = states_.emplace(e, KeyState{0, id, {}}).first;
      by_id_.emplace(id, e);
    }
    KeyState& st = it->second;
    if (static_cast<Weight>(st.usage.size()) < st.weight) {
      ++st.weight;  // already live on every level
      return;
    }
    ++st.weight;
    run_chain(Walk{e, 1, st.weight - 1, st.weight, 0, 0});
  }

  void decrement(const EdgeKey& e) {
    last_mutations_ = 0;
    auto it = states_.find(e);
    if (it == states_.end() || it->second.weight == 0) {
      throw WeightUnderflowError("forest packing: decrement of absent key " + to_string(e));
    }
    KeyState& st = it->second;
    --st.weight;
    if (static_cast<Weight>(st.usage.size()) < st.weight) return;
    run_chain(Walk{e, 1, st.weight + 1, st.weight, 0, 0});
    if (st.weight == 0) {
      by_id_.erase(st.id);
      states_.erase(it);
    }
  }

  /// Equivalent to |delta| unit increments or decrements.
  void apply_delta(const EdgeKey& e, Weight delta) {
    if (delta < 0 && weight(e) + delta < 0) {
      throw WeightUnderflowError("forest packing: weight of " + to_string(e) + " would become " +
                                 std::to_string(weight(e) + delta));
    }
    std::size_t mutations = 0;
    for (; delta > 0; --delta) {
      increment(e);
      mutations += last_mutations_;
    }
    for (; delta < 0; ++delta) {
      decrement(e);
      mutations += last_mutations_;
    }
    last_mutations_ = mutations;
  }

  Weight weight(const EdgeKey& e) const {
    auto it = states_.find(e);
    return it == states_.end() ? 0 : it->second.weight;
  }

  /// Levels whose forest currently holds a copy of e, ascending.
  std::vector<std::uint32_t> usage(const EdgeKey& e) const {
    auto it = states_.find(e);
    return it == states_.end() ? std::vector<std::uint32_t>{} : it->second.usage;
  }

  bool live_at(const EdgeKey& e, std::uint32_t level) const {
    auto it = states_.find(e);
    if (it == states_.end()) return false;
    const auto& u = it->second.usage;
    const auto below = std::lower_bound(u.begin(), u.end(), level) - u.begin();
    return it->second.weight - below > 0;
  }

  /// Keys with positive weight, sorted.
  std::vector<EdgeKey> keys() const {
    std::vector<EdgeKey> out;
    out.reserve(states_.size());
    for (const auto& [e, st] : states_) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Keys with a copy in T_level, sorted.
  std::vector<EdgeKey> forest(std::uint32_t level) const {
    std::vector<EdgeKey> out;
    for (const auto& [e, st] : states_) {
      if (std::binary_search(st.usage.begin(), st.usage.end(), level)) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The level structure backing T_level, or nullptr if nothing reached it.
  const DynamicForest* level_structure(std::uint32_t level) const {
    if (level == 0 || level > levels_.size()) return nullptr;
    return &levels_[level - 1];
  }

  /// H = T_1 ∪ ... ∪ T_k with weight_H(e) = |usage(e)|.
  WeightedGraph union_graph() const {
    WeightedGraph h(vertices_);
    for (const auto& [e, st] : states_) {
      if (!st.usage.empty()) h.add_weight(e, static_cast<Weight>(st.usage.size()));
    }
    return h;
  }

  /// Forest edges added or removed by the most recent operation.
  std::size_t last_mutations() const { return last_mutations_; }
  /// Longest replacement chain seen (levels touched by one propagated deletion).
  std::size_t max_chain() const { return max_chain_; }

 private:
  struct KeyState {
    Weight weight;
    EdgeId id;
    std::vector<std::uint32_t> usage;
  };

  // Reconciles one key's presence on levels >= start after its weight moved
  // from w_old to w_new (or after a shallower level began using a copy).
  // cnt_* count usage levels below `start` before and after the change.
  struct Walk {
    EdgeKey key;
    std::uint32_t start;
    Weight w_old;
    Weight w_new;
    Weight cnt_old;
    Weight cnt_new;
  };

  static std::vector<VertexId> iota_vertices(std::size_t n) {
    std::vector<VertexId> v(n);
    std::iota(v.begin(), v.end(), VertexId{0});
    return v;
  }

  DynamicForest& level(std::uint32_t i) {
    while (levels_.size() < i) levels_.emplace_back(n_, derive_seed(seed_, levels_.size()));
    return levels_[i - 1];
  }

  void run_chain(Walk first) {
    std::optional<Walk> job = first;
    std::size_t chain = 0;
    while (job) {
      ++chain;
      job = walk(*job);
    }
    max_chain_ = std::max(max_chain_, chain);
  }

  std::optional<Walk> walk(const Walk& job) {
    KeyState& st = states_.at(job.key);
    Weight cnt_old = job.cnt_old;
    Weight cnt_new = job.cnt_new;
    for (std::uint32_t lvl = job.start; lvl <= k_; ++lvl) {
      const Weight r_old = job.w_old - cnt_old;
      const Weight r_new = job.w_new - cnt_new;
      if (r_old == r_new) break;
      const bool used = std::binary_search(st.usage.begin(), st.usage.end(), lvl);
      bool used_now = used;
      std::optional<Walk> next;
      bool moved_copy = false;
      if (r_old <= 0 && r_new > 0) {
        if (level(lvl).insert(st.id, job.key.u, job.key.v) == InsertOutcome::joined) {
          add_usage(st, lvl);
          used_now = true;
          ++last_mutations_;
        }
      } else if (r_old > 0 && r_new <= 0) {
        const EraseOutcome out = level(lvl).erase(st.id);
        if (out.was_tree) {
          remove_usage(st, lvl);
          used_now = false;
          ++last_mutations_;
          moved_copy = true;
          if (out.replacement) {
            const EdgeKey other = by_id_.at(*out.replacement);
            KeyState& ost = states_.at(other);
            add_usage(ost, lvl);
            ++last_mutations_;
            const auto below = static_cast<Weight>(
                std::upper_bound(ost.usage.begin(), ost.usage.end(), lvl) - ost.usage.begin());
            if (lvl < k_) next = Walk{other, lvl + 1, ost.weight, ost.weight, below - 1, below};
          }
        }
      }
      cnt_old += used ? 1 : 0;
      cnt_new += used_now ? 1 : 0;
      // Removing a used copy equalizes the residuals below, so the walk ends here.
      if (moved_copy) return next;
    }
    return std::nullopt;
  }

  static void add_usage(KeyState& st, std::uint32_t lvl) {
    st.usage.insert(std::upper_bound(st.usage.begin(), st.usage.end(), lvl), lvl);
  }

  static void remove_usage(KeyState& st, std::uint32_t lvl) {
    st.usage.erase(std::lower_bound(st.usage.begin(), st.usage.end(), lvl));
  }

  std::size_t n_;
  std::size_t k_;
  std::uint64_t seed_;
  std::vector<VertexId> vertices_;
  std::deque<DynamicForest> levels_;
  std::unordered_map<EdgeKey, KeyState, EdgeKeyHash> states_;
  std::unordered_map<EdgeId, EdgeKey> by_id_;
  EdgeId next_id_ = 0;
  std::size_t last_mutations_ = 0;
  std::size_t max_chain_ = 0;
};

}  // namespace dynmincut
