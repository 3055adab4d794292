#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynmincut/graph.hpp"
#include "dynmincut/random.hpp"
#include "dynmincut/stream.hpp"

namespace dynmincut {

enum class StreamModel { erdos_insert_delete, sliding_window, dense_regular };

inline std::optional<StreamModel> parse_model(const std::string& s) {
  if (s == "erdos-insert-delete") return StreamModel::erdos_insert_delete;
  if (s == "sliding-window") return StreamModel::sliding_window;
  if (s == "dense-regular") return StreamModel::dense_regular;
  return std::nullopt;
}

inline const char* to_string(StreamModel m) {
  switch (m) {
    case StreamModel::erdos_insert_delete: return "erdos-insert-delete";
    case StreamModel::sliding_window: return "sliding-window";
    case StreamModel::dense_regular: return "dense-regular";
  }
  return "?";
}

struct GenOptions {
  std::size_t n = 16;
  std::size_t steps = 100;  // update events, warm-up included
  std::uint64_t seed = 0;
  StreamModel model = StreamModel::erdos_insert_delete;
  std::size_t query_every = 0;  // 0: no queries
  bool cut_queries = false;     // emit '?e' instead of '?'
  std::size_t degree = 0;       // dense-regular target degree; 0 picks a default
  std::size_t window = 0;       // sliding-window edge budget; 0 picks 2n
};

/// Even degree used by dense-regular when none is requested.
inline std::size_t default_regular_degree(std::size_t n) {
  const std::size_t cap = n >= 2 ? ((n - 2) & ~std::size_t{1}) : 0;
  const std::size_t want = std::max<std::size_t>(10, (n / 3) & ~std::size_t{1});
  return std::min(cap, want);
}

namespace detail {

// Edge set with O(1) uniform sampling.
class EdgeBag {
 public:
  bool contains(const EdgeKey& e) const { return pos_.contains(e); }
  std::size_t size() const { return items_.size(); }
  void add(const EdgeKey& e) {
    pos_.emplace(e, items_.size());
    items_.push_back(e);
  }
  void drop(const EdgeKey& e) {
    const auto it = pos_.find(e);
    const std::size_t i = it->second;
    pos_.erase(it);
    if (i + 1 != items_.size()) {
      items_[i] = items_.back();
      pos_[items_[i]] = i;
    }
    items_.pop_back();
  }
  const EdgeKey& pick(SplitMix64& rng) const { return items_[uniform_below(rng, items_.size())]; }

 private:
  std::vector<EdgeKey> items_;
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> pos_;
};

class Emitter {
 public:
  Emitter(const GenOptions& o, UpdateStream& s) : opts_(o), stream_(s) {}

  bool full() const { return updates_ >= opts_.steps; }

  void update(const EdgeKey& e, bool insert) {
    StreamEvent ev;
    ev.kind = insert ? StreamEvent::Kind::insert : StreamEvent::Kind::remove;
    ev.edge = e;
    stream_.events.push_back(ev);
    if (insert) {
      bag.add(e);
    } else {
      bag.drop(e);
    }
    ++updates_;
    if (opts_.query_every != 0 && updates_ % opts_.query_every == 0) {
      StreamEvent q;
      q.kind = opts_.cut_queries ? StreamEvent::Kind::query_cut : StreamEvent::Kind::query_value;
      stream_.events.push_back(q);
    }
  }

  EdgeBag bag;

 private:
  const GenOptions& opts_;
  UpdateStream& stream_;
  std::size_t updates_ = 0;
};

inline EdgeKey random_pair(SplitMix64& rng, std::size_t n) {
  const auto u = static_cast<VertexId>(uniform_below(rng, n));
  auto v = static_cast<VertexId>(uniform_below(rng, n - 1));
  if (v >= u) ++v;
  return EdgeKey::of(u, v);
}

}  // namespace detail

/// Deterministic update stream for the chosen model. Every insert and delete
/// is legal against the replayed graph.
///
/// erdos-insert-delete toggles a uniformly random vertex pair each step.
/// sliding-window inserts random new edges and retires the oldest once the
/// edge count reaches the window. dense-regular inserts a shuffled circulant
/// d-regular graph, then applies random double-edge swaps (-ab, -cd, +ac, +bd),
/// so the minimum degree never drops below d - 1 after warm-up.
inline UpdateStream generate_stream(const GenOptions& o) {
  UpdateStream s;
  s.n = o.n;
  if (o.steps == 0) return s;
  if (o.n < 2) throw std::invalid_argument("generator: need n >= 2 to emit updates");
  SplitMix64 rng(derive_seed(o.seed, 0x5EED));
  detail::Emitter out(o, s);
  const std::size_t pairs = o.n * (o.n - 1) / 2;

  switch (o.model) {
    case StreamModel::erdos_insert_delete: {
      while (!out.full()) {
        const EdgeKey e = detail::random_pair(rng, o.n);
        out.update(e, !out.bag.contains(e));
      }
      break;
    }
    case StreamModel::sliding_window: {
      const std::size_t window = std::min(pairs, o.window == 0 ? 2 * o.n : o.window);
      std::deque<EdgeKey> fifo;
      while (!out.full()) {
        if (out.bag.size() >= window) {
          const EdgeKey old = fifo.front();
          fifo.pop_front();
          out.update(old, false);
          continue;
        }
        EdgeKey e = detail::random_pair(rng, o.n);
        while (out.bag.contains(e)) e = detail::random_pair(rng, o.n);
        fifo.push_back(e);
        out.update(e, true);
      }
      break;
    }
    case StreamModel::dense_regular: {
      const std::size_t d = o.degree == 0 ? default_regular_degree(o.n) : o.degree;
      if (d % 2 != 0 || d + 1 > o.n) {
        throw std::invalid_argument("generator: dense-regular degree must be even and below n");
      }
      std::vector<EdgeKey> base;
      for (VertexId i = 0; i < o.n; ++i) {
        for (std::size_t j = 1; j <= d / 2; ++j) {
          base.push_back(EdgeKey::of(i, static_cast<VertexId>((i + j) % o.n)));
        }
      }
      shuffle(base, rng);
      for (const auto& e : base) {
        if (out.full()) break;
        out.update(e, true);
      }
      while (!out.full()) {
        if (out.bag.size() < 2) break;
        bool swapped = false;
        for (int attempt = 0; attempt < 64 && !swapped; ++attempt) {
          const EdgeKey ab = out.bag.pick(rng);
          const EdgeKey cd = out.bag.pick(rng);
          VertexId a = ab.u;
          VertexId b = ab.v;
          const VertexId c = cd.u;
          const VertexId dd = cd.v;
          if (rng() & 1) std::swap(a, b);
          if (a == c || a == dd || b == c || b == dd) continue;
          const EdgeKey ac = EdgeKey::of(a, c);
          const EdgeKey bd = EdgeKey::of(b, dd);
          if (out.bag.contains(ac) || out.bag.contains(bd)) continue;
          const EdgeKey plan[4] = {ab, cd, ac, bd};
          const bool ins[4] = {false, false, true, true};
          for (int k = 0; k < 4 && !out.full(); ++k) out.update(plan[k], ins[k]);
          swapped = true;
        }
        if (!swapped) {
          const EdgeKey e = out.bag.pick(rng);
          out.update(e, false);
          if (!out.full()) out.update(e, true);
        }
      }
      break;
    }
  }
  return s;
}

}  // namespace dynmincut
