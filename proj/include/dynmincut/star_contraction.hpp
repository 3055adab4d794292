#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"
#include "dynmincut/stable_sampler.hpp"

namespace dynmincut {

enum class ContractionMode { eager, lazy };

struct StarConfig {
  double c_p = 800.0;  // center sampling constant: p = min(1, c_p log2 n / tau)
  double c_b = 1.0;    // lazy budget constant: B = ceil(c_b n log2^4 n / max(delta, 1))
};

struct WeightDelta {
  EdgeKey key;
  Weight delta;

  friend bool operator==(const WeightDelta&, const WeightDelta&) = default;
};

/// Where an original edge currently lands in the contracted graph.
struct EdgeImage {
  enum class Kind : std::uint8_t { unmapped, internal, mapped };
  Kind kind = Kind::unmapped;
  EdgeKey key{};

  static EdgeImage unmapped() { return {}; }
  static EdgeImage internal() { return {Kind::internal, {}}; }
  static EdgeImage mapped(EdgeKey k) { return {Kind::mapped, k}; }

  friend bool operator==(const EdgeImage&, const EdgeImage&) = default;
};

inline double log2_n(std::size_t n) { return n <= 1 ? 0.0 : std::log2(static_cast<double>(n)); }

inline double center_probability(std::size_t n, double tau, double c_p) {
  return std::min(1.0, c_p * log2_n(n) / tau);
}

/// Fully dynamic tau-star contraction of a simple graph, kept as a weighted
/// graph over a fixed random center set R.
///
/// Each non-center v is contracted into rep(v), a stable uniform sample of its
/// center neighbors; centers represent themselves. An original edge (u, v)
/// maps to (rep(u), rep(v)) when both exist and differ, is internal when they
/// coincide, and is unmapped otherwise. The contraction is complete when no
/// live edge is unmapped and no relabel work is pending.
///
/// In eager mode a representative change relabels all incident edges at once.
/// In lazy mode it enqueues the relabel and each update drains at most B edge
/// moves, so the contraction may be transiently incomplete.
class StarContraction {
 public:
  StarContraction(std::size_t n, double tau, ContractionMode mode, std::uint64_t seed,
                  StarConfig cfg = {})
      : StarContraction(n, tau, mode, seed, cfg, sample_centers(n, tau, seed, cfg.c_p)) {}

  /// Instance with a caller-chosen center set.
  static StarContraction with_centers(std::size_t n, double tau, ContractionMode mode,
                                      std::uint64_t seed, std::vector<VertexId> centers,
                                      StarConfig cfg = {}) {
    return StarContraction(n, tau, mode, seed, cfg, std::move(centers));
  }

  /// Applies one edge update and returns the contracted weight changes, in the
  /// order: the edge's own delta, then batched relabel deltas sorted by key.
  std::vector<WeightDelta> apply_update(const EdgeKey& e, UpdateSign s) {
    graph_.apply(e, s);
    ++updates_;
    std::vector<WeightDelta> out;
    std::map<EdgeKey, Weight> acc;

    if (s == UpdateSign::insert) {
      image_.emplace(e, EdgeImage::unmapped());
      ++unmapped_;
      retarget(e, desired_image(e), acc);
    } else {
      retarget(e, EdgeImage::unmapped(), acc);
      image_.erase(e);
      --unmapped_;
    }
    flush(acc, out);

    const bool cu = is_center(e.u);
    const bool cv = is_center(e.v);
    if (cu != cv) {
      const VertexId c = cu ? e.u : e.v;
      const VertexId x = cu ? e.v : e.u;
      const auto before = representative(x);
      const bool changed = s == UpdateSign::insert ? samplers_[x].insert(c) : samplers_[x].remove(c);
      if (changed) {
        ++rep_changes_;
        if (mode_ == ContractionMode::eager) {
          for (VertexId y : graph_.neighbors(x)) {
            const EdgeKey f = EdgeKey::of(x, y);
            retarget(f, desired_image(f), acc);
          }
          flush(acc, out);
        } else {
          const auto& nb = graph_.neighbors(x);
          queue_.push_back(RelabelTask{x, before, representative(x), {nb.begin(), nb.end()}, 0});
          pending_moves_ += nb.size();
        }
      }
    }

    if (mode_ == ContractionMode::lazy) {
      drain(budget(), acc);
      flush(acc, out);
    }
    if (!queue_.empty()) ++updates_with_pending_;
    return out;
  }

  bool is_complete() const { return queue_.empty() && unmapped_ == 0; }

  const WeightedGraph& contracted_graph() const { return contracted_; }

  /// Original edges whose image is the contracted key c, sorted.
  std::vector<EdgeKey> preimage_of(const EdgeKey& c) const {
    auto it = preimage_.find(c);
    if (it == preimage_.end()) return {};
    std::vector<EdgeKey> out(it->second.begin(), it->second.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  EdgeImage image_of(const EdgeKey& e) const {
    auto it = image_.find(e);
    if (it == image_.end()) throw MissingEdgeError("no image for absent edge " + to_string(e));
    return it->second;
  }

  /// Image the edge should have under the current representatives.
  EdgeImage desired_image(const EdgeKey& e) const {
    const auto ru = representative(e.u);
    const auto rv = representative(e.v);
    if (!ru || !rv) return EdgeImage::unmapped();
    if (*ru == *rv) return EdgeImage::internal();
    return EdgeImage::mapped(EdgeKey::of(*ru, *rv));
  }

  std::optional<VertexId> representative(VertexId v) const {
    if (is_center(v)) return v;
    return samplers_.at(v).current();
  }

  bool is_center(VertexId v) const { return is_center_.at(v); }
  const std::vector<VertexId>& centers() const { return centers_; }
  const DynamicGraph& graph() const { return graph_; }

  double tau() const { return tau_; }
  ContractionMode mode() const { return mode_; }
  double sampling_probability() const { return center_probability(graph_.vertex_count(), tau_, cfg_.c_p); }

  /// Per-update lazy relabel budget for the current minimum degree.
  std::size_t budget() const {
    const double n = static_cast<double>(graph_.vertex_count());
    const double lg = log2_n(graph_.vertex_count());
    const double delta = std::max<double>(1.0, static_cast<double>(graph_.min_degree()));
    const double b = std::ceil(cfg_.c_b * n * lg * lg * lg * lg / delta);
    return b < 1.0 ? 1 : static_cast<std::size_t>(b);
  }

  std::size_t pending_tasks() const { return queue_.size(); }
  std::size_t pending_moves() const { return pending_moves_; }

  std::size_t updates() const { return updates_; }
  std::size_t rep_changes() const { return rep_changes_; }
  std::size_t updates_with_pending() const { return updates_with_pending_; }

 private:
  struct RelabelTask {
    VertexId vertex;
    std::optional<VertexId> from;
    std::optional<VertexId> to;
    std::vector<VertexId> neighbors;
    std::size_t cursor;
  };

  StarContraction(std::size_t n, double tau, ContractionMode mode, std::uint64_t seed, StarConfig cfg,
                  std::vector<VertexId> centers)
      : tau_(tau), mode_(mode), cfg_(cfg), graph_(n), is_center_(n, false) {
    if (!(tau > 0)) throw std::invalid_argument("star contraction: tau must be positive");
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (VertexId c : centers) is_center_.at(c) = true;
    centers_ = std::move(centers);
    contracted_ = WeightedGraph(centers_);
    samplers_.reserve(n);
    for (VertexId v = 0; v < n; ++v) samplers_.emplace_back(SplitMix64(derive_seed(seed, 1, v)));
  }

  static std::vector<VertexId> sample_centers(std::size_t n, double tau, std::uint64_t seed, double c_p) {
    if (!(tau > 0)) throw std::invalid_argument("star contraction: tau must be positive");
    const double p = center_probability(n, tau, c_p);
    SplitMix64 rng(derive_seed(seed, 0));
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v) {
      if (p >= 1.0 || rng.uniform01() < p) out.push_back(v);
    }
    return out;
  }

  void retarget(const EdgeKey& e, const EdgeImage& next, std::map<EdgeKey, Weight>& acc) {
    EdgeImage& cur = image_.at(e);
    if (cur == next) return;
    if (cur.kind == EdgeImage::Kind::mapped) {
      acc[cur.key] -= 1;
      auto it = preimage_.find(cur.key);
      it->second.erase(e);
      if (it->second.empty()) preimage_.erase(it);
    } else if (cur.kind == EdgeImage::Kind::unmapped) {
      --unmapped_;
    }
    if (next.kind == EdgeImage::Kind::mapped) {
      acc[next.key] += 1;
      preimage_[next.key].insert(e);
    } else if (next.kind == EdgeImage::Kind::unmapped) {
      ++unmapped_;
    }
    cur = next;
  }

  void flush(std::map<EdgeKey, Weight>& acc, std::vector<WeightDelta>& out) {
    for (const auto& [k, d] : acc) {
      if (d == 0) continue;
      contracted_.add_weight(k, d);
      out.push_back({k, d});
    }
    acc.clear();
  }

  void drain(std::size_t budget, std::map<EdgeKey, Weight>& acc) {
    while (budget > 0 && !queue_.empty()) {
      RelabelTask& t = queue_.front();
      while (budget > 0 && t.cursor < t.neighbors.size()) {
        const EdgeKey f = EdgeKey::of(t.vertex, t.neighbors[t.cursor++]);
        --budget;
        --pending_moves_;
        if (graph_.has_edge(f)) retarget(f, desired_image(f), acc);
      }
      if (t.cursor == t.neighbors.size()) queue_.pop_front();
    }
  }

  double tau_;
  ContractionMode mode_;
  StarConfig cfg_;
  DynamicGraph graph_;
  std::vector<bool> is_center_;
  std::vector<VertexId> centers_;
  std::vector<StableSampler<VertexId>> samplers_;
  WeightedGraph contracted_;
  std::unordered_map<EdgeKey, EdgeImage, EdgeKeyHash> image_;
  std::unordered_map<EdgeKey, std::unordered_set<EdgeKey, EdgeKeyHash>, EdgeKeyHash> preimage_;
  std::size_t unmapped_ = 0;
  std::deque<RelabelTask> queue_;
  std::size_t pending_moves_ = 0;
  std::size_t updates_ = 0;
  std::size_t rep_changes_ = 0;
  std::size_t updates_with_pending_ = 0;
};

}  // namespace dynmincut
