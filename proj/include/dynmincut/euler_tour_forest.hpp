#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"

namespace dynmincut {

using EdgeId = std::uint64_t;

namespace detail {

/// Forest of Euler tours, each stored as an implicit treap.
///
/// A tree with vertex set V and edge set E is one sequence containing one
/// node per vertex and two arc nodes per edge (u->v and v->u). A vertex
/// node always sits cyclically right after some arc entering that vertex, so
/// rotating a tour (reroot) and splitting it at an edge's two arcs (cut)
/// both keep every vertex node on its own side.
///
/// Each node carries two flag bits aggregated over its subtree, which lets the
/// level structure enumerate "tree edges of this level" and "vertices with
/// non-tree edges on this level" inside one tree in O(log n) per hit.
class EulerTourForest {
 public:
  static constexpr std::uint8_t kEdgeFlag = 1;
  static constexpr std::uint8_t kVertexFlag = 2;

  EulerTourForest(std::size_t n, std::uint64_t seed) : vertex_node_(n, kNil), rng_(seed) {}

  std::size_t vertex_count() const { return vertex_node_.size(); }

  bool connected(VertexId u, VertexId v) const {
    if (u == v) return true;
    const auto a = vertex_node_.at(u);
    const auto b = vertex_node_.at(v);
    if (a == kNil || b == kNil) return false;
    return root(a) == root(b);
  }

  /// Number of vertices in the tree containing v.
  std::size_t tree_size(VertexId v) const {
    const auto a = vertex_node_.at(v);
    if (a == kNil) return 1;
    return nodes_[root(a)].vertices;
  }

  bool has_edge(EdgeId id) const { return arcs_.contains(id); }

  /// Joins the trees of u and v with edge `id`. Requires !connected(u, v).
  void link(VertexId u, VertexId v, EdgeId id) {
    if (arcs_.contains(id)) throw std::logic_error("euler tour: edge linked twice");
    if (connected(u, v)) throw std::logic_error("euler tour: link would close a cycle");
    const auto nu = ensure_vertex(u);
    const auto nv = ensure_vertex(v);
    const auto tu = reroot(nu);
    const auto tv = reroot(nv);
    const auto uv = new_node(false, id);
    const auto vu = new_node(false, id);
    finish(merge(merge(merge(tu, uv), tv), vu));
    arcs_.emplace(id, std::make_pair(uv, vu));
  }

  /// Removes edge `id`, splitting its tree in two.
  void cut(EdgeId id) {
    auto it = arcs_.find(id);
    if (it == arcs_.end()) throw std::logic_error("euler tour: cutting absent edge");
    auto [first, second] = it->second;
    arcs_.erase(it);
    if (index_of(first) > index_of(second)) std::swap(first, second);
    // tour = A first B second C  ->  trees (A C) and (B)
    const Index a = split_before(first).first;
    split_after(first);
    const Index b = split_before(second).first;
    const Index c = split_after(second).second;
    finish(merge(a, c));
    if (b != kNil) finish(b);
    free_node(first);
    free_node(second);
  }

  void set_vertex_flag(VertexId v, bool on) {
    auto x = vertex_node_.at(v);
    if (x == kNil) {
      if (!on) return;
      x = ensure_vertex(v);
    }
    set_own(x, kVertexFlag, on);
  }

  void set_edge_flag(EdgeId id, bool on) { set_own(arcs_.at(id).first, kEdgeFlag, on); }

  /// Some flagged edge in the tree containing v.
  std::optional<EdgeId> find_flagged_edge(VertexId v) const {
    const auto x = find_flagged(v, kEdgeFlag);
    if (x == kNil) return std::nullopt;
    return nodes_[x].label;
  }

  /// Some flagged vertex in the tree containing v.
  std::optional<VertexId> find_flagged_vertex(VertexId v) const {
    const auto x = find_flagged(v, kVertexFlag);
    if (x == kNil) return std::nullopt;
    return static_cast<VertexId>(nodes_[x].label);
  }

 private:
  using Index = std::int32_t;
  static constexpr Index kNil = -1;

  struct Node {
    Index left = kNil;
    Index right = kNil;
    Index parent = kNil;
    std::uint32_t priority = 0;
    std::uint32_t count = 1;
    std::uint32_t vertices = 0;
    std::uint8_t own = 0;
    std::uint8_t agg = 0;
    bool is_vertex = false;
    std::uint64_t label = 0;
  };

  Index new_node(bool is_vertex, std::uint64_t label) {
    Index x;
    if (!free_.empty()) {
      x = free_.back();
      free_.pop_back();
      nodes_[x] = Node{};
    } else {
      x = static_cast<Index>(nodes_.size());
      nodes_.emplace_back();
    }
    Node& n = nodes_[x];
    n.priority = static_cast<std::uint32_t>(rng_() >> 32);
    n.is_vertex = is_vertex;
    n.vertices = is_vertex ? 1 : 0;
    n.label = label;
    return x;
  }

  void free_node(Index x) { free_.push_back(x); }

  Index ensure_vertex(VertexId v) {
    auto& slot = vertex_node_.at(v);
    if (slot == kNil) slot = new_node(true, v);
    return slot;
  }

  std::uint32_t count(Index x) const { return x == kNil ? 0 : nodes_[x].count; }
  std::uint32_t vertices(Index x) const { return x == kNil ? 0 : nodes_[x].vertices; }
  std::uint8_t agg(Index x) const { return x == kNil ? 0 : nodes_[x].agg; }

  void update(Index x) {
    Node& n = nodes_[x];
    n.count = 1 + count(n.left) + count(n.right);
    n.vertices = (n.is_vertex ? 1 : 0) + vertices(n.left) + vertices(n.right);
    n.agg = n.own | agg(n.left) | agg(n.right);
  }

  void finish(Index root) {
    if (root != kNil) nodes_[root].parent = kNil;
  }

  Index root(Index x) const {
    while (nodes_[x].parent != kNil) x = nodes_[x].parent;
    return x;
  }

  std::size_t index_of(Index x) const {
    std::size_t i = count(nodes_[x].left);
    while (nodes_[x].parent != kNil) {
      const Index p = nodes_[x].parent;
      if (nodes_[p].right == x) i += count(nodes_[p].left) + 1;
      x = p;
    }
    return i;
  }

  Index merge(Index a, Index b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    if (nodes_[a].priority > nodes_[b].priority) {
      const Index r = merge(nodes_[a].right, b);
      nodes_[a].right = r;
      nodes_[r].parent = a;
      update(a);
      return a;
    }
    const Index l = merge(a, nodes_[b].left);
    nodes_[b].left = l;
    nodes_[l].parent = b;
    update(b);
    return b;
  }

  /// Splits x's sequence into (everything before x, x and after).
  std::pair<Index, Index> split_before(Index x) {
    Index lhs = nodes_[x].left;
    if (lhs != kNil) nodes_[lhs].parent = kNil;
    nodes_[x].left = kNil;
    update(x);
    Index rhs = x;
    Index cur = x;
    Index p = nodes_[x].parent;
    while (p != kNil) {
      const Index pp = nodes_[p].parent;
      if (nodes_[p].right == cur) {
        nodes_[p].right = lhs;
        if (lhs != kNil) nodes_[lhs].parent = p;
        update(p);
        lhs = p;
      } else {
        nodes_[p].left = rhs;
        nodes_[rhs].parent = p;
        update(p);
        rhs = p;
      }
      cur = p;
      p = pp;
    }
    finish(lhs);
    finish(rhs);
    return {lhs, rhs};
  }

  /// Splits x's sequence into (everything up to x, everything after x).
  std::pair<Index, Index> split_after(Index x) {
    Index rhs = nodes_[x].right;
    if (rhs != kNil) nodes_[rhs].parent = kNil;
    nodes_[x].right = kNil;
    update(x);
    Index lhs = x;
    Index cur = x;
    Index p = nodes_[x].parent;
    while (p != kNil) {
      const Index pp = nodes_[p].parent;
      if (nodes_[p].left == cur) {
        nodes_[p].left = rhs;
        if (rhs != kNil) nodes_[rhs].parent = p;
        update(p);
        rhs = p;
      } else {
        nodes_[p].right = lhs;
        nodes_[lhs].parent = p;
        update(p);
        lhs = p;
      }
      cur = p;
      p = pp;
    }
    finish(lhs);
    finish(rhs);
    return {lhs, rhs};
  }

  /// Rotates x's tour so that it starts at x; returns the new root.
  Index reroot(Index x) {
    auto [a, b] = split_before(x);
    const Index r = merge(b, a);
    finish(r);
    return r;
  }

  void set_own(Index x, std::uint8_t bit, bool on) {
    Node& n = nodes_[x];
    const std::uint8_t next = on ? (n.own | bit) : (n.own & ~bit);
    if (next == n.own) return;
    n.own = next;
    for (Index y = x; y != kNil; y = nodes_[y].parent) update(y);
  }

  Index find_flagged(VertexId v, std::uint8_t bit) const {
    const Index start = vertex_node_.at(v);
    if (start == kNil) return kNil;
    Index x = root(start);
    if (!(nodes_[x].agg & bit)) return kNil;
    while (!(nodes_[x].own & bit)) {
      const Index l = nodes_[x].left;
      x = (agg(l) & bit) ? l : nodes_[x].right;
    }
    return x;
  }

  std::vector<Node> nodes_;
  std::vector<Index> free_;
  std::vector<Index> vertex_node_;
  std::unordered_map<EdgeId, std::pair<Index, Index>> arcs_;
  SplitMix64 rng_;
};

}  // namespace detail
}  // namespace dynmincut
