#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dynmincut/euler_tour_forest.hpp"
#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"

namespace dynmincut {

class ForestError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class InsertOutcome { joined, spare };

struct EraseOutcome {
  bool was_tree = false;
  std::optional<EdgeId> replacement;

  bool untouched() const { return !was_tree; }
};

/// Spanning forest of a multigraph whose edges are opaque handles, using the
/// level scheme of Holm, de Lichtenberg and Thorup over Euler-tour treaps.
///
/// Every edge has a level in [0, log2 n]. Forest F_i holds the tree edges of
/// level >= i and each tree of F_i has at most n / 2^i vertices. Deleting a
/// tree edge at level l searches levels l, l-1, ..., 0 for a replacement,
/// first promoting the smaller side's level-i tree edges, then each scanned
/// non-replacement edge, to level i + 1. Amortized O(log^2 n) per update.
///
/// An insertion changes the forest by at most one edge; a deletion removes at
/// most one forest edge and adds at most one replacement.
class DynamicForest {
 public:
  explicit DynamicForest(std::size_t n, std::uint64_t seed = 0) : n_(n), seed_(seed) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t forest_size() const { return forest_size_; }

  bool contains(EdgeId id) const { return edges_.contains(id); }
  bool in_forest(EdgeId id) const {
    auto it = edges_.find(id);
    return it != edges_.end() && it->second.tree;
  }

  std::pair<VertexId, VertexId> endpoints(EdgeId id) const {
    const auto& r = record(id);
    return {r.u, r.v};
  }

  bool connected(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return true;
    if (levels_.empty()) return false;
    return levels_.front().connected(u, v);
  }

  InsertOutcome insert(EdgeId id, VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ForestError("dynamic forest: self-loop handle");
    if (edges_.contains(id)) {
      throw ForestError("dynamic forest: handle " + std::to_string(id) + " already live");
    }
    auto& base = level(0);
    if (!base.connected(u, v)) {
      edges_.emplace(id, EdgeRecord{u, v, 0, true});
      base.link(u, v, id);
      base.set_edge_flag(id, true);
      ++forest_size_;
      return InsertOutcome::joined;
    }
    edges_.emplace(id, EdgeRecord{u, v, 0, false});
    add_nontree(id, 0);
    return InsertOutcome::spare;
  }

  EraseOutcome erase(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) {
      throw ForestError("dynamic forest: handle " + std::to_string(id) + " not live");
    }
    const EdgeRecord rec = it->second;
    if (!rec.tree) {
      remove_nontree(id, rec.level);
      edges_.erase(it);
      return {};
    }
    edges_.erase(it);
    --forest_size_;
    for (std::uint32_t i = 0; i <= rec.level; ++i) levels_[i].cut(id);

    for (std::uint32_t i = rec.level + 1; i-- > 0;) {
      if (auto found = search_level(i, rec.u, rec.v)) return {true, found};
    }
    return {true, std::nullopt};
  }

  /// Forest handles in ascending order.
  std::vector<EdgeId> forest_edges() const {
    std::vector<EdgeId> out;
    out.reserve(forest_size_);
    for (const auto& [id, r] : edges_) {
      if (r.tree) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Live handles in ascending order.
  std::vector<EdgeId> edge_ids() const {
    std::vector<EdgeId> out;
    out.reserve(edges_.size());
    for (const auto& [id, r] : edges_) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint32_t level_of(EdgeId id) const { return record(id).level; }

 private:
  struct EdgeRecord {
    VertexId u;
    VertexId v;
    std::uint32_t level;
    bool tree;
  };

  using Incidence = std::unordered_map<VertexId, std::unordered_set<EdgeId>>;

  const EdgeRecord& record(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) {
      throw ForestError("dynamic forest: handle " + std::to_string(id) + " not live");
    }
    return it->second;
  }

  void check_vertex(VertexId v) const {
    if (v >= n_) throw VertexRangeError("dynamic forest: vertex " + std::to_string(v) + " out of range");
  }

  // std::deque keeps references to existing levels valid while new ones are appended.
  detail::EulerTourForest& level(std::size_t i) {
    while (levels_.size() <= i) {
      levels_.emplace_back(n_, derive_seed(seed_, levels_.size()));
      nontree_.emplace_back();
    }
    return levels_[i];
  }

  void add_nontree(EdgeId id, std::uint32_t lvl) {
    const auto& r = edges_.at(id);
    auto& etf = level(lvl);
    auto& inc = nontree_[lvl];
    for (VertexId x : {r.u, r.v}) {
      auto& set = inc[x];
      set.insert(id);
      if (set.size() == 1) etf.set_vertex_flag(x, true);
    }
  }

  void remove_nontree(EdgeId id, std::uint32_t lvl) {
    const auto& r = edges_.at(id);
    auto& inc = nontree_[lvl];
    for (VertexId x : {r.u, r.v}) {
      auto it = inc.find(x);
      it->second.erase(id);
      if (it->second.empty()) {
        inc.erase(it);
        levels_[lvl].set_vertex_flag(x, false);
      }
    }
  }

  // After the tree edge (u, v) was cut at levels <= i, look for a level-i
  // replacement, promoting the smaller side's level-i edges as we go.
  std::optional<EdgeId> search_level(std::uint32_t i, VertexId u, VertexId v) {
    auto& here = levels_[i];
    const VertexId small = here.tree_size(u) <= here.tree_size(v) ? u : v;

    while (auto f = here.find_flagged_edge(small)) {
      auto& fr = edges_.at(*f);
      here.set_edge_flag(*f, false);
      fr.level = i + 1;
      auto& up = level(i + 1);
      up.link(fr.u, fr.v, *f);
      up.set_edge_flag(*f, true);
    }

    while (auto w = here.find_flagged_vertex(small)) {
      const EdgeId f = *nontree_[i].at(*w).begin();
      auto& fr = edges_.at(f);
      const VertexId other = fr.u == *w ? fr.v : fr.u;
      remove_nontree(f, i);
      if (here.connected(other, small)) {
        fr.level = i + 1;
        add_nontree(f, i + 1);
        continue;
      }
      fr.tree = true;
      for (std::uint32_t j = 0; j <= i; ++j) levels_[j].link(fr.u, fr.v, f);
      here.set_edge_flag(f, true);
      ++forest_size_;
      return f;
    }
    return std::nullopt;
  }

  std::size_t n_;
  std::uint64_t seed_;
  std::deque<detail::EulerTourForest> levels_;
  std::deque<Incidence> nontree_;
  std::unordered_map<EdgeId, EdgeRecord> edges_;
  std::size_t forest_size_ = 0;
};

}  // namespace dynmincut
