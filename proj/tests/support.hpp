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

// Independent oracles and random generators shared by the test binaries.
// Oracles work on plain adjacency matrices and integer grids and never call
// the library routine they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mcnc/code.hpp"
#include "mcnc/instance.hpp"
#include "mcnc/linalg.hpp"
#include "mcnc/product.hpp"
#include "mcnc/random.hpp"

namespace testing_support {

using Grid = std::vector<std::vector<std::uint32_t>>;

inline Grid to_grid(const mcnc::FieldMatrix& m) {
  Grid g(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m.at(r, c);
  return g;
}

inline mcnc::FieldMatrix from_grid(const mcnc::PrimeField& f, const Grid& g, std::size_t cols) {
  mcnc::FieldMatrix m(f, g.size(), cols);
  for (std::size_t r = 0; r < g.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, g[r][c]);
  return m;
}

inline mcnc::FieldMatrix random_matrix(mcnc::Rng& rng, const mcnc::PrimeField& f, std::size_t rows, std::size_t cols,
                                       double density = 0.6) {
  mcnc::FieldMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.chance(density)) m.set(r, c, static_cast<mcnc::Residue>(rng.below(f.modulus())));
  return m;
}

/// Kronecker product straight from the index formula.
inline Grid naive_kron(const Grid& a, std::size_t ac, const Grid& b, std::size_t bc, std::uint32_t q) {
  Grid out(a.size() * b.size(), std::vector<std::uint32_t>(ac * bc));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t l = 0; l < bc; ++l)
          out[i * b.size() + k][j * bc + l] = static_cast<std::uint32_t>((std::uint64_t{a[i][j]} * b[k][l]) % q);
  return out;
}

inline Grid naive_mul(const Grid& a, const Grid& b, std::size_t bc, std::uint32_t q) {
  Grid out(a.size(), std::vector<std::uint32_t>(bc, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < bc; ++j) out[i][j] = static_cast<std::uint32_t>((out[i][j] + std::uint64_t{a[i][k]} * b[k][j]) % q);
  return out;
}

/// Rank as log_q of the size of the row space, found by enumerating every
/// combination of rows. Keep q^rows small.
inline std::size_t span_rank(const Grid& g, std::size_t cols, std::uint32_t q) {
  std::set<std::vector<std::uint32_t>> span;
  std::vector<std::uint32_t> coeff(g.size(), 0);
  while (true) {
    std::vector<std::uint32_t> v(cols, 0);
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) v[c] = static_cast<std::uint32_t>((v[c] + std::uint64_t{coeff[r]} * g[r][c]) % q);
    span.insert(v);
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == q) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  std::size_t size = span.size(), r = 0;
  while (size > 1) {
    size /= q;
    ++r;
  }
  return r;
}

/// Plain adjacency-matrix view of an instance, for the graph oracles.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs;  // (f(s_i), f(t_i))
};

inline Graph to_graph(const mcnc::Instance& inst) {
  Graph g;
  g.n = inst.vertex_count();
  g.adj.assign(g.n, std::vector<bool>(g.n, false));
  for (const auto& [a, b] : inst.edge_labels()) {
    const auto i = *inst.index_of(a), j = *inst.index_of(b);
    g.adj[i][j] = g.adj[j][i] = true;
  }
  const auto attach = inst.attach_labels();
  for (const auto& c : inst.commodities()) {
    std::vector<std::size_t> s, t;
    for (const auto& l : attach.at(c.source)) s.push_back(*inst.index_of(l));
    for (const auto& l : attach.at(c.sink)) t.push_back(*inst.index_of(l));
    g.pairs.emplace_back(s, t);
  }
  return g;
}

/// Depth-first reachability with `removed` deleted.
inline bool oracle_connected(const Graph& g, std::size_t i, std::uint64_t removed) {
  std::vector<bool> seen(g.n, false);
  std::vector<std::size_t> stack;
  for (auto s : g.pairs[i].first)
    if (!(removed >> s & 1)) {
      seen[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto t : g.pairs[i].second)
      if (t == v) return true;
    for (std::size_t w = 0; w < g.n; ++w)
      if (g.adj[v][w] && !seen[w] && !(removed >> w & 1)) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return false;
}

inline bool oracle_is_multicut(const Graph& g, std::uint64_t removed) {
  for (std::size_t i = 0; i < g.pairs.size(); ++i)
    if (oracle_connected(g, i, removed)) return false;
  return true;
}

inline std::size_t oracle_min_cut(const Graph& g) {
  std::size_t best = g.n;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(m));
    if (size < best && oracle_is_multicut(g, m)) best = size;
  }
  return best;
}

inline std::vector<std::uint64_t> oracle_minimal_cuts(const Graph& g) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
    if (!oracle_is_multicut(g, m)) continue;
    bool minimal = true;
    for (std::size_t v = 0; v < g.n && minimal; ++v)
      if ((m >> v & 1) && oracle_is_multicut(g, m & ~(std::uint64_t{1} << v))) minimal = false;
    if (minimal) out.push_back(m);
  }
  return out;
}

inline std::uint64_t to_mask(const mcnc::VertexSet& s) {
  std::uint64_t m = 0;
  for (auto v : s) m |= std::uint64_t{1} << v;
  return m;
}

inline mcnc::VertexSet from_mask(std::uint64_t m) {
  mcnc::VertexSet s;
  for (std::size_t v = 0; v < 64; ++v)
    if (m >> v & 1) s.push_back(v);
  return s;
}

/// Rank of the rows of L indexed by `cut`, by row-space enumeration.
inline std::size_t oracle_cut_rank(const mcnc::LinearCode& code, std::uint64_t cut) {
  Grid rows;
  const auto g = to_grid(code.matrix());
  for (std::size_t v = 0; v < g.size(); ++v)
    if (cut >> v & 1) rows.push_back(g[v]);
  return span_rank(rows, code.message_count(), code.field().modulus());
}

/// Random instance with disjoint routed paths. Vertices are v0..v{n-1};
/// commodity i has terminals <prefix>s<i>/<prefix>t<i>. Each path becomes a
/// chain of edges; extra random edges and extra attachments are sprinkled in.
struct RoutedInstance {
  mcnc::Instance instance;
  std::vector<mcnc::RoutedPath> paths;
};

inline RoutedInstance random_routed_instance(mcnc::Rng& rng, std::size_t n, const std::string& prefix,
                                             std::size_t max_commodities = 3) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  const std::size_t k = 1 + rng.below(max_commodities);
  std::vector<std::vector<std::size_t>> routes;
  std::size_t at = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (at >= n || (i > 0 && rng.chance(0.25))) {
      routes.emplace_back();  // commodity without a path
      continue;
    }
    const std::size_t len = 1 + rng.below(std::min<std::size_t>(3, n - at));
    routes.emplace_back(order.begin() + static_cast<long>(at), order.begin() + static_cast<long>(at + len));
    at += len;
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto add_edge = [&](std::size_t a, std::size_t b) {
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  };
  for (const auto& r : routes)
    for (std::size_t j = 0; j + 1 < r.size(); ++j) add_edge(r[j], r[j + 1]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng.chance(0.2)) add_edge(a, b);

  std::vector<mcnc::Label> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.emplace_back("v" + std::to_string(i));
  std::vector<std::pair<mcnc::Label, mcnc::Label>> edge_labels;
  for (const auto& [a, b] : edges) edge_labels.emplace_back(vertices[a], vertices[b]);
  std::vector<mcnc::Commodity> commodities;
  std::map<std::string, std::vector<mcnc::Label>> attach;
  std::vector<mcnc::RoutedPath> paths;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string s = prefix + "s" + std::to_string(i), t = prefix + "t" + std::to_string(i);
    commodities.push_back({s, t});
    std::set<std::size_t> fs, ft;
    if (!routes[i].empty()) {
      fs.insert(routes[i].front());
      ft.insert(routes[i].back());
    } else {
      fs.insert(rng.below(n));
      ft.insert(rng.below(n));
    }
    if (rng.chance(0.3)) fs.insert(rng.below(n));
    if (rng.chance(0.3)) ft.insert(rng.below(n));
    for (auto v : fs) attach[s].push_back(vertices[v]);
    for (auto v : ft) attach[t].push_back(vertices[v]);
  }
  mcnc::Instance inst(vertices, edge_labels, commodities, attach);
  for (std::size_t i = 0; i < k; ++i) {
    if (routes[i].empty()) continue;
    mcnc::RoutedPath p;
    p.commodity = i;
    for (auto v : routes[i]) p.vertices.push_back(*inst.index_of(vertices[v]));
    paths.push_back(std::move(p));
  }
  return {std::move(inst), std::move(paths)};
}

/// Random simple graph on v0..v{n-1} with `k` commodities with random attach sets.
inline mcnc::Instance random_instance(mcnc::Rng& rng, std::size_t n, std::size_t k, const std::string& prefix,
                                      double density = 0.4) {
  std::vector<mcnc::Label> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.emplace_back("v" + std::to_string(i));
  std::vector<std::pair<mcnc::Label, mcnc::Label>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng.chance(density)) edges.emplace_back(vertices[a], vertices[b]);
  std::vector<mcnc::Commodity> commodities;
  std::map<std::string, std::vector<mcnc::Label>> attach;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string s = prefix + "s" + std::to_string(i), t = prefix + "t" + std::to_string(i);
    commodities.push_back({s, t});
    for (const auto& id : {s, t}) {
      std::set<std::size_t> set{static_cast<std::size_t>(rng.below(n))};
      if (rng.chance(0.3)) set.insert(rng.below(n));
      for (auto v : set) attach[id].push_back(vertices[v]);
    }
  }
  return mcnc::Instance(vertices, edges, commodities, attach);
}

/// Random multicut: start from all vertices, drop vertices in random order
/// while the set stays a multicut, stopping early with probability `stop`.
inline mcnc::VertexSet random_multicut(mcnc::Rng& rng, const mcnc::Instance& inst, double stop = 0.15) {
  const Graph g = to_graph(inst);
  std::vector<std::size_t> order(inst.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::uint64_t cut = inst.vertex_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.vertex_count()) - 1;
  for (auto v : order) {
    if (rng.chance(stop)) break;
    const std::uint64_t next = cut & ~(std::uint64_t{1} << v);
    if (oracle_is_multicut(g, next)) cut = next;
  }
  return from_mask(cut);
}

}  // namespace testing_support
