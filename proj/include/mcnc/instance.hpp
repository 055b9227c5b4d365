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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcnc/label.hpp"

namespace mcnc {

/// Sorted list of vertex indices into Instance::vertices().
using VertexSet = std::vector<std::size_t>;

struct Commodity {
  std::string source;
  std::string sink;
};

/// Node-capacitated multicommodity instance: an undirected graph plus paired
/// source/sink terminals, each attached to a nonempty set of graph vertices.
class Instance {
 public:
  Instance() = default;

  /// Validates: unique vertex labels, edges between distinct known vertices,
  /// distinct terminal ids not clashing with vertex labels, and a nonempty
  /// attach set for every terminal. Throws InvalidInput otherwise.
  Instance(std::vector<Label> vertices,
           std::vector<std::pair<Label, Label>> edges,
           std::vector<Commodity> commodities,
           std::map<std::string, std::vector<Label>> attach);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Label>& vertices() const { return vertices_; }
  const Label& vertex(std::size_t i) const { return vertices_.at(i); }
  std::optional<std::size_t> index_of(const Label& label) const;
  std::size_t require_index(const Label& label) const;

  /// Edges as index pairs (i < j), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * vertices_.size() + b] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_.at(v); }

  const std::vector<Commodity>& commodities() const { return commodities_; }
  std::size_t commodity_count() const { return commodities_.size(); }
  bool is_terminal(const std::string& id) const { return attach_.count(id) != 0; }
  bool is_source(const std::string& id) const;
  /// f(id) as sorted vertex indices.
  const VertexSet& attach(const std::string& id) const;

  /// f(S) and f(T): unions over all sources / all sinks.
  VertexSet source_attach_union() const;
  VertexSet sink_attach_union() const;
  /// Sources s with v in f(s), in commodity order.
  std::vector<std::string> sources_at(std::size_t v) const;

  std::vector<std::pair<Label, Label>> edge_labels() const;
  std::map<std::string, std::vector<Label>> attach_labels() const;

 private:
  std::vector<Label> vertices_;
  std::map<Label, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<Commodity> commodities_;
  std::map<std::string, VertexSet> attach_;
};

/// The instance network: graph vertices, then sources, then sinks (commodity order).
struct DirectedNetwork {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::size_t graph_vertex_count = 0;
};

DirectedNetwork instance_network(const Instance& inst);

/// Strong product. Vertex order is lexicographic with the first factor major;
/// vertex (u, v) has index u * n2 + v. Throws InvalidInput when terminal ids collide.
Instance strong_product(const Instance& a, const Instance& b);

/// Copy of `inst` with every terminal id suffixed.
Instance rename_terminals(const Instance& inst, const std::string& suffix);

/// True iff removing `cut` leaves no s_i to t_i path for any commodity.
bool is_multicut(const Instance& inst, const VertexSet& cut);

/// Finds a path from f(s_i) to f(t_i) avoiding `removed`; shortest, ties
/// broken by lowest vertex index. Returns the vertex sequence or nullopt.
std::optional<std::vector<std::size_t>> find_open_path(const Instance& inst, std::size_t commodity,
                                                       const std::vector<bool>& removed);

struct MinCutResult {
  std::size_t size = 0;
  VertexSet witness;
};

/// Exhaustive minimum multicut, subsets in increasing size and lexicographic
/// order within a size. Throws BudgetExceeded above `max_vertices`.
MinCutResult min_multicut(const Instance& inst, std::size_t max_vertices = 22);

/// All inclusion-minimal multicuts, sorted by size then lexicographically.
/// Requires at most 64 vertices.
std::vector<VertexSet> minimal_multicuts(const Instance& inst);

/// Shrinks a multicut greedily in the given vertex order to an inclusion-minimal one.
VertexSet shrink_to_minimal(const Instance& inst, VertexSet cut, const std::vector<std::size_t>& order);

std::string format_vertex_set(const Instance& inst, const VertexSet& set);

}  // namespace mcnc
