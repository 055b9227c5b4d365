// Copyright 2026 The mcnc Authors.
//
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

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "mcnc/error.hpp"
#include "mcnc/instance.hpp"

namespace mcnc::detail {

using Mask = std::uint64_t;

inline Mask bit(std::size_t v) { return Mask{1} << v; }

inline Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (auto v : s) m |= bit(v);
  return m;
}

inline VertexSet from_mask(Mask m) {
  VertexSet s;
  while (m) {
    s.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

/// Bitmask reachability over an instance with at most 64 vertices.
class CutOracle {
 public:
  explicit CutOracle(const Instance& inst) : n_(inst.vertex_count()) {
    if (n_ > 64) fail_budget("cut search supports at most 64 vertices");
    nbr_.resize(n_, 0);
    for (auto [a, b] : inst.edges()) {
      nbr_[a] |= bit(b);
      nbr_[b] |= bit(a);
    }
    for (const auto& c : inst.commodities()) {
      src_.push_back(to_mask(inst.attach(c.source)));
      snk_.push_back(to_mask(inst.attach(c.sink)));
    }
  }

  std::size_t vertex_count() const { return n_; }
  Mask all() const { return n_ == 64 ? ~Mask{0} : bit(n_) - 1; }

  bool connected(std::size_t i, Mask removed) const {
    Mask reach = src_[i] & ~removed;
    Mask frontier = reach;
    const Mask target = snk_[i] & ~removed;
    while (frontier) {
      if (reach & target) return true;
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= nbr_[std::countr_zero(f)];
      next &= ~removed & ~reach;
      reach |= next;
      frontier = next;
    }
    return (reach & target) != 0;
  }

  bool is_multicut(Mask removed) const {
    for (std::size_t i = 0; i < src_.size(); ++i)
      if (connected(i, removed)) return false;
    return true;
  }

  /// Shortest open path of the first still-connected commodity.
  std::optional<std::vector<std::size_t>> open_path(Mask removed) const {
    for (std::size_t i = 0; i < src_.size(); ++i) {
      auto p = shortest_path(i, removed);
      if (p) return p;
    }
    return std::nullopt;
  }

  std::optional<std::vector<std::size_t>> shortest_path(std::size_t i, Mask removed) const {
    std::vector<int> parent(n_, -2);
    std::vector<std::size_t> queue;
    for (Mask s = src_[i] & ~removed; s; s &= s - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(s));
      parent[v] = -1;
      queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      if (snk_[i] & bit(v)) {
        std::vector<std::size_t> path;
        for (int w = static_cast<int>(v); w >= 0; w = parent[w]) path.push_back(static_cast<std::size_t>(w));
        return std::vector<std::size_t>(path.rbegin(), path.rend());
      }
      for (Mask nb = nbr_[v] & ~removed; nb; nb &= nb - 1) {
        auto w = static_cast<std::size_t>(std::countr_zero(nb));
        if (parent[w] != -2) continue;
        parent[w] = static_cast<int>(v);
        queue.push_back(w);
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t n_;
  std::vector<Mask> nbr_;
  std::vector<Mask> src_;
  std::vector<Mask> snk_;
};

}  // namespace mcnc::detail
