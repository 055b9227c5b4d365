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

#include "mcnc/instance.hpp"

#include <algorithm>
#include <set>

#include "cut_oracle.hpp"
#include "mcnc/error.hpp"

namespace mcnc {

Instance::Instance(std::vector<Label> vertices,
                   std::vector<std::pair<Label, Label>> edges,
                   std::vector<Commodity> commodities,
                   std::map<std::string, std::vector<Label>> attach)
    : vertices_(std::move(vertices)), commodities_(std::move(commodities)) {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(vertices_[i], i).second)
      fail_input("duplicate vertex label " + vertices_[i].to_string());
  }

  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (const auto& [a, b] : edges) {
    const std::size_t i = require_index(a), j = require_index(b);
    if (i == j) fail_input("self-loop at " + a.to_string());
    edge_set.emplace(std::min(i, j), std::max(i, j));
  }
  edges_.assign(edge_set.begin(), edge_set.end());
  adj_.assign(n * n, 0);
  neighbors_.assign(n, {});
  for (auto [i, j] : edges_) {
    adj_[i * n + j] = adj_[j * n + i] = 1;
    neighbors_[i].push_back(j);
    neighbors_[j].push_back(i);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());

  std::set<std::string> terminals;
  for (const auto& c : commodities_) {
    for (const auto* id : {&c.source, &c.sink}) {
      if (!terminals.insert(*id).second) fail_input("terminal id '" + *id + "' used twice");
      if (index_.count(Label(*id))) fail_input("terminal id '" + *id + "' clashes with a vertex label");
    }
  }
  for (const auto& [id, members] : attach) {
    if (!terminals.count(id)) fail_input("attach entry for unknown terminal '" + id + "'");
  }
  for (const auto& id : terminals) {
    auto it = attach.find(id);
    if (it == attach.end() || it->second.empty()) fail_input("terminal '" + id + "' has an empty attach set");
    VertexSet set;
    for (const auto& l : it->second) set.push_back(require_index(l));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    attach_.emplace(id, std::move(set));
  }
}

std::optional<std::size_t> Instance::index_of(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::require_index(const Label& label) const {
  auto i = index_of(label);
  if (!i) fail_input("unknown vertex " + label.to_string());
  return *i;
}

bool Instance::is_source(const std::string& id) const {
  return std::any_of(commodities_.begin(), commodities_.end(),
                     [&](const Commodity& c) { return c.source == id; });
}

const VertexSet& Instance::attach(const std::string& id) const {
  auto it = attach_.find(id);
  if (it == attach_.end()) fail_input("unknown terminal '" + id + "'");
  return it->second;
}

namespace {

VertexSet union_of(const Instance& inst, bool sources) {
  std::set<std::size_t> u;
  for (const auto& c : inst.commodities()) {
    const auto& s = inst.attach(sources ? c.source : c.sink);
    u.insert(s.begin(), s.end());
  }
  return {u.begin(), u.end()};
}

}  // namespace

VertexSet Instance::source_attach_union() const { return union_of(*this, true); }
VertexSet Instance::sink_attach_union() const { return union_of(*this, false); }

std::vector<std::string> Instance::sources_at(std::size_t v) const {
  std::vector<std::string> out;
  for (const auto& c : commodities_) {
    const auto& s = attach(c.source);
    if (std::binary_search(s.begin(), s.end(), v)) out.push_back(c.source);
  }
  return out;
}

std::vector<std::pair<Label, Label>> Instance::edge_labels() const {
  std::vector<std::pair<Label, Label>> out;
  for (auto [i, j] : edges_) out.emplace_back(vertices_[i], vertices_[j]);
  return out;
}

std::map<std::string, std::vector<Label>> Instance::attach_labels() const {
  std::map<std::string, std::vector<Label>> out;
  for (const auto& [id, set] : attach_) {
    auto& dst = out[id];
    for (auto v : set) dst.push_back(vertices_[v]);
  }
  return out;
}

DirectedNetwork instance_network(const Instance& inst) {
  DirectedNetwork net;
  const std::size_t n = inst.vertex_count();
  net.graph_vertex_count = n;
  for (const auto& v : inst.vertices()) net.nodes.push_back(v.to_string());
  for (auto [i, j] : inst.edges()) {
    net.arcs.emplace_back(i, j);
    net.arcs.emplace_back(j, i);
  }
  const std::size_t k = inst.commodity_count();
  for (std::size_t c = 0; c < k; ++c) net.nodes.push_back(inst.commodities()[c].source);
  for (std::size_t c = 0; c < k; ++c) net.nodes.push_back(inst.commodities()[c].sink);
  for (std::size_t c = 0; c < k; ++c) {
    for (auto v : inst.attach(inst.commodities()[c].source)) net.arcs.emplace_back(n + c, v);
    for (auto v : inst.attach(inst.commodities()[c].sink)) net.arcs.emplace_back(v, n + k + c);
  }
  return net;
}

Instance strong_product(const Instance& a, const Instance& b) {
  for (const auto& c : b.commodities()) {
    if (a.is_terminal(c.source) || a.is_terminal(c.sink))
      fail_input("strong product: terminal id collision on '" + c.source + "'/'" + c.sink + "'");
  }
  const std::size_t n1 = a.vertex_count(), n2 = b.vertex_count();
  std::vector<Label> vertices;
  vertices.reserve(n1 * n2);
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) vertices.push_back(product_label(u, v));

  auto near1 = [&](std::size_t u, std::size_t w) { return u == w || a.adjacent(u, w); };
  auto near2 = [&](std::size_t v, std::size_t w) { return v == w || b.adjacent(v, w); };
  std::vector<std::pair<Label, Label>> edges;
  for (std::size_t x = 0; x < n1 * n2; ++x)
    for (std::size_t y = x + 1; y < n1 * n2; ++y)
      if (near1(x / n2, y / n2) && near2(x % n2, y % n2)) edges.emplace_back(vertices[x], vertices[y]);

  std::vector<Commodity> commodities = a.commodities();
  commodities.insert(commodities.end(), b.commodities().begin(), b.commodities().end());

  std::map<std::string, std::vector<Label>> attach;
  for (const auto& c : a.commodities()) {
    for (const auto& id : {c.source, c.sink}) {
      auto& dst = attach[id];
      for (auto u : a.attach(id))
        for (std::size_t v = 0; v < n2; ++v) dst.push_back(vertices[u * n2 + v]);
    }
  }
  for (const auto& c : b.commodities()) {
    for (const auto& id : {c.source, c.sink}) {
      auto& dst = attach[id];
      for (std::size_t u = 0; u < n1; ++u)
        for (auto v : b.attach(id)) dst.push_back(vertices[u * n2 + v]);
    }
  }
  return Instance(std::move(vertices), std::move(edges), std::move(commodities), std::move(attach));
}

Instance rename_terminals(const Instance& inst, const std::string& suffix) {
  std::vector<Commodity> commodities;
  std::map<std::string, std::vector<Label>> attach;
  const auto labels = inst.attach_labels();
  for (const auto& c : inst.commodities()) {
    commodities.push_back({c.source + suffix, c.sink + suffix});
    attach[c.source + suffix] = labels.at(c.source);
    attach[c.sink + suffix] = labels.at(c.sink);
  }
  return Instance(inst.vertices(), inst.edge_labels(), std::move(commodities), std::move(attach));
}

std::optional<std::vector<std::size_t>> find_open_path(const Instance& inst, std::size_t commodity,
                                                       const std::vector<bool>& removed) {
  const auto& c = inst.commodities().at(commodity);
  const std::size_t n = inst.vertex_count();
  std::vector<long> parent(n, -2);
  std::vector<std::size_t> queue;
  for (auto v : inst.attach(c.source)) {
    if (removed[v]) continue;
    parent[v] = -1;
    queue.push_back(v);
  }
  const auto& sinks = inst.attach(c.sink);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    if (std::binary_search(sinks.begin(), sinks.end(), v)) {
      std::vector<std::size_t> path;
      for (long w = static_cast<long>(v); w >= 0; w = parent[w]) path.push_back(static_cast<std::size_t>(w));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto w : inst.neighbors(v)) {
      if (removed[w] || parent[w] != -2) continue;
      parent[w] = static_cast<long>(v);
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

bool is_multicut(const Instance& inst, const VertexSet& cut) {
  std::vector<bool> removed(inst.vertex_count(), false);
  for (auto v : cut) {
    if (v >= inst.vertex_count()) fail_input("multicut member out of range");
    removed[v] = true;
  }
  for (std::size_t i = 0; i < inst.commodity_count(); ++i)
    if (find_open_path(inst, i, removed)) return false;
  return true;
}

MinCutResult min_multicut(const Instance& inst, std::size_t max_vertices) {
  const std::size_t n = inst.vertex_count();
  if (n > max_vertices || n > 63)
    fail_budget("brute-force multicut limited to " + std::to_string(max_vertices) + " vertices, instance has " +
                std::to_string(n));
  detail::CutOracle oracle(inst);
  for (std::size_t size = 0; size <= n; ++size) {
    // Lexicographic k-combinations of 0..n-1.
    std::vector<std::size_t> combo(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      detail::Mask m = 0;
      for (auto v : combo) m |= detail::bit(v);
      if (oracle.is_multicut(m)) return {size, combo};
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  fail_internal("vertex set is not a multicut");
}

namespace {

bool is_minimal(const detail::CutOracle& oracle, detail::Mask cut) {
  for (detail::Mask c = cut; c; c &= c - 1) {
    if (oracle.is_multicut(cut & ~(c & -c))) return false;
  }
  return true;
}

// Branch on the first member of a minimal cut lying on an open path; earlier
// path vertices are forbidden in that branch, so each minimal cut is reached once.
void enumerate_minimal(const detail::CutOracle& oracle, detail::Mask chosen, detail::Mask forbidden,
                       std::vector<detail::Mask>& out) {
  auto path = oracle.open_path(chosen);
  if (!path) {
    if (is_minimal(oracle, chosen)) out.push_back(chosen);
    return;
  }
  detail::Mask blocked = forbidden;
  for (auto v : *path) {
    if (!(blocked & detail::bit(v))) enumerate_minimal(oracle, chosen | detail::bit(v), blocked, out);
    blocked |= detail::bit(v);
  }
}

}  // namespace

std::vector<VertexSet> minimal_multicuts(const Instance& inst) {
  detail::CutOracle oracle(inst);
  std::vector<detail::Mask> masks;
  enumerate_minimal(oracle, 0, 0, masks);
  std::vector<VertexSet> out;
  for (auto m : masks) out.push_back(detail::from_mask(m));
  std::sort(out.begin(), out.end(), [](const VertexSet& x, const VertexSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet shrink_to_minimal(const Instance& inst, VertexSet cut, const std::vector<std::size_t>& order) {
  if (!is_multicut(inst, cut)) fail_input("shrink_to_minimal: input is not a multicut");
  for (auto v : order) {
    auto it = std::find(cut.begin(), cut.end(), v);
    if (it == cut.end()) continue;
    VertexSet trial = cut;
    trial.erase(trial.begin() + (it - cut.begin()));
    if (is_multicut(inst, trial)) cut = std::move(trial);
  }
  return cut;
}

std::string format_vertex_set(const Instance& inst, const VertexSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += inst.vertex(set[i]).to_string();
  }
  return out + "}";
}

}  // namespace mcnc
