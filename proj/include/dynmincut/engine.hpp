#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmincut/forest_packing.hpp"
#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"
#include "dynmincut/star_contraction.hpp"
#include "dynmincut/static_mincut.hpp"

namespace dynmincut {

/// theorem1: eager contractions, each feeding a maximal 2^(i+1)-forest packing;
/// queries cut the packed union graph. theorem2: lazy contractions; queries
/// cut the contracted graph directly.
enum class EngineMode { theorem1, theorem2 };

inline const char* to_string(EngineMode m) { return m == EngineMode::theorem1 ? "theorem1" : "theorem2"; }

struct EngineConfig {
  EngineMode mode = EngineMode::theorem1;
  std::size_t copies = 0;  // 0 selects ceil(5 log2 n)
  double c_p = 800.0;
  double c_b = 1.0;
  std::uint64_t seed = 0;
  bool report_edges = false;
};

inline std::size_t default_copies(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(5.0 * log2_n(n))));
}

/// Number of tau = 2^i instances per copy: i = 0 .. ceil(log2 n).
inline std::size_t instance_count(std::size_t n) {
  return 1 + static_cast<std::size_t>(std::ceil(log2_n(n)));
}

/// Largest i with 2^i <= delta; delta >= 1.
inline std::size_t top_level_for(std::size_t delta) {
  return static_cast<std::size_t>(std::bit_width(delta)) - 1;
}

struct QueryStats {
  std::size_t copies_used = 0;
  std::size_t copies_skipped = 0;
  bool trivial_won = true;
};

/// Fully dynamic edge connectivity: returns min(delta_G, best contracted cut)
/// over independent copies of the tau = 2^i contraction grid. Never
/// underestimates lambda_G.
class Engine {
 public:
  Engine(std::size_t n, EngineConfig cfg) : cfg_(cfg), graph_(n) {
    if (cfg_.copies == 0) cfg_.copies = default_copies(n);
    const std::size_t levels = instance_count(n);
    complete_steps_.assign(levels, 0);
    const auto contraction = cfg_.mode == EngineMode::theorem1 ? ContractionMode::eager : ContractionMode::lazy;
    const StarConfig star{cfg_.c_p, cfg_.c_b};
    copies_.resize(cfg_.copies);
    for (std::size_t c = 0; c < cfg_.copies; ++c) {
      auto& copy = copies_[c];
      copy.reserve(levels);
      for (std::size_t i = 0; i < levels; ++i) {
        const std::uint64_t seed = derive_seed(cfg_.seed, c, i);
        Instance inst{StarContraction(n, std::ldexp(1.0, static_cast<int>(i)), contraction, seed, star), std::nullopt};
        if (cfg_.mode == EngineMode::theorem1) {
          inst.packing.emplace(n, std::size_t{2} << i, inst.contraction.centers(), derive_seed(seed, 7));
        }
        copy.push_back(std::move(inst));
      }
    }
  }

  const EngineConfig& config() const { return cfg_; }
  const DynamicGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t copies() const { return copies_.size(); }
  std::size_t levels() const { return copies_.empty() ? 0 : copies_.front().size(); }

  void update(const EdgeKey& e, UpdateSign s) {
    graph_.apply(e, s);
    for (auto& copy : copies_) {
      for (auto& inst : copy) {
        auto deltas = inst.contraction.apply_update(e, s);
        if (inst.packing) {
          for (const auto& d : deltas) inst.packing->apply_delta(d.key, d.delta);
        }
      }
      for (std::size_t i = 0; i < copy.size(); ++i) {
        if (copy[i].contraction.is_complete()) ++complete_steps_[i];
      }
    }
    ++updates_;
  }

  void insert(VertexId u, VertexId v) { update(EdgeKey::of(u, v), UpdateSign::insert); }
  void remove(VertexId u, VertexId v) { update(EdgeKey::of(u, v), UpdateSign::remove); }

  Weight query_value() { return evaluate(false).value; }

  /// Minimum cut over original edges. Requires report_edges.
  CutResult query_cut() {
    if (!cfg_.report_edges) throw std::logic_error("engine: query_cut requires report_edges");
    return evaluate(true);
  }

  const QueryStats& last_query() const { return last_query_; }

  const StarContraction& contraction(std::size_t copy, std::size_t level) const {
    return copies_.at(copy).at(level).contraction;
  }
  const ForestPacking* packing(std::size_t copy, std::size_t level) const {
    const auto& p = copies_.at(copy).at(level).packing;
    return p ? &*p : nullptr;
  }

  std::size_t updates() const { return updates_; }

  /// Fraction of (copy, post-update) observations where instance `level` was complete.
  double completeness_rate(std::size_t level) const {
    if (updates_ == 0) return 1.0;
    return static_cast<double>(complete_steps_.at(level)) / static_cast<double>(updates_ * copies_.size());
  }

  /// Fraction of (instance, post-update) observations with pending relabel work.
  double queue_occupancy() const {
    std::size_t pending = 0;
    std::size_t total = 0;
    for (const auto& copy : copies_) {
      for (const auto& inst : copy) {
        pending += inst.contraction.updates_with_pending();
        total += inst.contraction.updates();
      }
    }
    return total == 0 ? 0.0 : static_cast<double>(pending) / static_cast<double>(total);
  }

 private:
  struct Instance {
    StarContraction contraction;
    std::optional<ForestPacking> packing;
  };

  CutResult evaluate(bool with_edges) {
    last_query_ = {};
    const std::size_t n = graph_.vertex_count();
    const std::size_t delta = graph_.min_degree();
    if (n < 2 || delta == 0) {
      CutResult out;
      if (n >= 2) out.side = component_of(graph_.min_degree_vertex());
      return out;
    }
    const std::size_t top = top_level_for(delta);

    Weight best = static_cast<Weight>(delta);
    std::optional<CutResult> winner;
    std::size_t winner_copy = 0;
    for (std::size_t c = 0; c < copies_.size(); ++c) {
      const Instance& inst = copies_[c].at(top);
      if (!inst.contraction.is_complete()) {
        ++last_query_.copies_skipped;
        continue;
      }
      ++last_query_.copies_used;
      const WeightedGraph target =
          inst.packing ? inst.packing->union_graph() : inst.contraction.contracted_graph();
      if (target.vertex_count() < 2) continue;
      CutResult cut = stoer_wagner(target);
      if (cut.value < best) {
        best = cut.value;
        winner = std::move(cut);
        winner_copy = c;
      }
    }

    CutResult out;
    out.value = best;
    if (!winner) {
      const VertexId v = graph_.min_degree_vertex();
      out.side = {v};
      if (with_edges) {
        for (VertexId y : graph_.neighbors(v)) out.cut_edges.push_back(EdgeKey::of(v, y));
        std::sort(out.cut_edges.begin(), out.cut_edges.end());
      }
      return out;
    }
    last_query_.trivial_won = false;
    if (with_edges) lift(copies_[winner_copy].at(top).contraction, *winner, out);
    return out;
  }

  // Maps a cut of the contracted graph back to original vertices and edges.
  void lift(const StarContraction& sc, const CutResult& cut, CutResult& out) const {
    const auto& side = cut.side;
    auto inside = [&](VertexId c) { return std::binary_search(side.begin(), side.end(), c); };
    for (const auto& [key, w] : sc.contracted_graph().weights()) {
      if (inside(key.u) == inside(key.v)) continue;
      for (const auto& e : sc.preimage_of(key)) out.cut_edges.push_back(e);
    }
    std::sort(out.cut_edges.begin(), out.cut_edges.end());
    for (VertexId v = 0; v < graph_.vertex_count(); ++v) {
      const auto r = sc.representative(v);
      if (r && inside(*r)) out.side.push_back(v);
    }
  }

  std::vector<VertexId> component_of(VertexId start) const {
    std::vector<bool> seen(graph_.vertex_count(), false);
    std::vector<VertexId> stack{start};
    std::vector<VertexId> out;
    seen[start] = true;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      out.push_back(x);
      for (VertexId y : graph_.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  EngineConfig cfg_;
  DynamicGraph graph_;
  std::vector<std::vector<Instance>> copies_;
  QueryStats last_query_;
  std::size_t updates_ = 0;
  std::vector<std::size_t> complete_steps_;
};

}  // namespace dynmincut
