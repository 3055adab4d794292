#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "dynmincut/random.hpp"

namespace dynmincut {

class SamplerError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Uniform sample of a dynamic set that rarely changes.
///
/// Every element receives an independent uniform 64-bit priority on insertion
/// and the sample is the element of minimum priority. Since priorities are
/// i.i.d., the minimum is uniform over the live set at all times; an insertion
/// displaces it only when the newcomer draws the smallest priority
/// (probability 1/|S| after the insert), and a removal changes it only when the
/// removed element was the minimum (probability 1/|S| before the removal).
///
/// Priority collisions are redrawn, so live priorities are pairwise distinct.
template <class Element, class Rng = SplitMix64>
class StableSampler {
 public:
  explicit StableSampler(Rng rng = Rng{}) : rng_(std::move(rng)) {}

  /// Adds `x`; returns true iff current() changed.
  bool insert(const Element& x) {
    if (priority_.contains(x)) throw SamplerError("sampler: duplicate insert");
    std::uint64_t p = draw();
    while (priority_taken(p)) p = draw();
    const auto before = current();
    priority_.emplace(x, p);
    heap_.emplace(p, x);
    return before != current();
  }

  /// Removes `x`; returns true iff current() changed.
  bool remove(const Element& x) {
    auto it = priority_.find(x);
    if (it == priority_.end()) throw SamplerError("sampler: removing absent element");
    const bool was_min = heap_.begin()->second == x;
    heap_.erase({it->second, x});
    priority_.erase(it);
    return was_min;
  }

  std::optional<Element> current() const {
    if (heap_.empty()) return std::nullopt;
    return heap_.begin()->second;
  }

  bool contains(const Element& x) const { return priority_.contains(x); }
  std::size_t size() const { return priority_.size(); }
  bool empty() const { return priority_.empty(); }

  /// Priority of a live element; exposed for invariant checks.
  std::uint64_t priority_of(const Element& x) const { return priority_.at(x); }

  const std::map<Element, std::uint64_t>& priorities() const { return priority_; }

 private:
  std::uint64_t draw() { return static_cast<std::uint64_t>(rng_()); }

  bool priority_taken(std::uint64_t p) const {
    auto it = heap_.lower_bound({p, Element{}});
    if (it != heap_.end() && it->first == p) return true;
    // Element{} may not be the smallest Element; check the predecessor too.
    return it != heap_.begin() && std::prev(it)->first == p;
  }

  Rng rng_;
  std::map<Element, std::uint64_t> priority_;
  std::set<std::pair<std::uint64_t, Element>> heap_;
};

}  // namespace dynmincut
