#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dynmincut {

using VertexId = std::uint32_t;
using Weight = std::int64_t;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VertexRangeError : public GraphError {
 public:
  using GraphError::GraphError;
};

class SelfLoopError : public GraphError {
 public:
  using GraphError::GraphError;
};

class DuplicateEdgeError : public GraphError {
 public:
  using GraphError::GraphError;
};

class MissingEdgeError : public GraphError {
 public:
  using GraphError::GraphError;
};

class WeightUnderflowError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// Unordered vertex pair stored as (u, v) with u < v.
struct EdgeKey {
  VertexId u = 0;
  VertexId v = 0;

  static EdgeKey of(VertexId a, VertexId b) {
    if (a == b) throw SelfLoopError("self-loop on vertex " + std::to_string(a));
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
  }

  VertexId other(VertexId x) const { return x == u ? v : u; }

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

inline std::string to_string(const EdgeKey& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    std::uint64_t x = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

/// +1 inserts, -1 deletes.
enum class UpdateSign : int { insert = 1, remove = -1 };

inline int to_int(UpdateSign s) { return static_cast<int>(s); }

/// Simple undirected graph on the fixed vertex set [0, n) with exact
/// min-degree tracking.
class DynamicGraph {
 public:
  explicit DynamicGraph(std::size_t n = 0) : adjacency_(n), degree_(n, 0) {
    for (VertexId v = 0; v < n; ++v) by_degree_.emplace(0, v);
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  bool has_edge(const EdgeKey& e) const {
    return e.v < adjacency_.size() && adjacency_[e.u].contains(e.v);
  }

  void insert_edge(const EdgeKey& e) {
    check_range(e);
    if (!adjacency_[e.u].insert(e.v).second) {
      throw DuplicateEdgeError("edge " + to_string(e) + " already present");
    }
    adjacency_[e.v].insert(e.u);
    bump(e.u, +1);
    bump(e.v, +1);
    ++edge_count_;
  }

  void delete_edge(const EdgeKey& e) {
    check_range(e);
    if (adjacency_[e.u].erase(e.v) == 0) {
      throw MissingEdgeError("edge " + to_string(e) + " not present");
    }
    adjacency_[e.v].erase(e.u);
    bump(e.u, -1);
    bump(e.v, -1);
    --edge_count_;
  }

  void apply(const EdgeKey& e, UpdateSign s) {
    if (s == UpdateSign::insert) {
      insert_edge(e);
    } else {
      delete_edge(e);
    }
  }

  std::size_t degree(VertexId v) const { return degree_.at(v); }
  const std::unordered_set<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }

  /// Minimum degree over all n vertices; 0 for the empty vertex set.
  std::size_t min_degree() const { return by_degree_.empty() ? 0 : by_degree_.begin()->first; }

  /// The vertex attaining min_degree(), ties broken by smallest id.
  VertexId min_degree_vertex() const {
    if (by_degree_.empty()) throw GraphError("graph has no vertices");
    return by_degree_.begin()->second;
  }

  /// All edges in canonical sorted order.
  std::vector<EdgeKey> edges() const {
    std::vector<EdgeKey> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < adjacency_.size(); ++u) {
      for (VertexId v : adjacency_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_range(const EdgeKey& e) const {
    if (e.u == e.v) throw SelfLoopError("self-loop " + to_string(e));
    if (e.v >= adjacency_.size()) {
      throw VertexRangeError("edge " + to_string(e) + " outside vertex range [0, " +
                             std::to_string(adjacency_.size()) + ")");
    }
  }

  void bump(VertexId v, int delta) {
    by_degree_.erase({degree_[v], v});
    degree_[v] = static_cast<std::size_t>(static_cast<long long>(degree_[v]) + delta);
    by_degree_.emplace(degree_[v], v);
  }

  std::vector<std::unordered_set<VertexId>> adjacency_;
  std::vector<std::size_t> degree_;
  std::set<std::pair<std::size_t, VertexId>> by_degree_;
  std::size_t edge_count_ = 0;
};

/// Weighted graph over an explicit vertex set. Stored weights are always
/// positive; an entry whose weight drops to zero is erased.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::vector<VertexId> vertices) {
    for (VertexId v : vertices) vertices_.insert(v);
  }

  void add_vertex(VertexId v) { vertices_.insert(v); }
  bool has_vertex(VertexId v) const { return vertices_.contains(v); }
  const std::set<VertexId>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  void add_weight(const EdgeKey& e, Weight delta) {
    if (e.u == e.v) throw SelfLoopError("self-loop key " + to_string(e));
    if (delta == 0) return;
    auto it = weights_.find(e);
    Weight current = it == weights_.end() ? 0 : it->second;
    Weight next = current + delta;
    if (next < 0) {
      throw WeightUnderflowError("weight of " + to_string(e) + " would become " +
                                 std::to_string(next));
    }
    total_ += delta;
    if (next == 0) {
      weights_.erase(it);
    } else if (it == weights_.end()) {
      vertices_.insert(e.u);
      vertices_.insert(e.v);
      weights_.emplace(e, next);
    } else {
      it->second = next;
    }
  }

  void set_weight(const EdgeKey& e, Weight w) { add_weight(e, w - weight(e)); }

  Weight weight(const EdgeKey& e) const {
    auto it = weights_.find(e);
    return it == weights_.end() ? 0 : it->second;
  }

  const std::map<EdgeKey, Weight>& weights() const { return weights_; }
  std::size_t edge_count() const { return weights_.size(); }
  Weight total_weight() const { return total_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.vertices_ == b.vertices_ && a.weights_ == b.weights_;
  }

 private:
  std::set<VertexId> vertices_;
  std::map<EdgeKey, Weight> weights_;
  Weight total_ = 0;
};

/// Sum of weights of edges with exactly one endpoint in `side`.
/// `side` is indexed by vertex id.
inline Weight cut_weight(const WeightedGraph& g, const std::vector<bool>& side) {
  Weight total = 0;
  for (const auto& [e, w] : g.weights()) {
    if (side[e.u] != side[e.v]) total += w;
  }
  return total;
}

}  // namespace dynmincut
