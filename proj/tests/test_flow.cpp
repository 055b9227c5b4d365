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

#include <gtest/gtest.h>

#include <set>

#include "mcnc/error.hpp"
#include "mcnc/flow.hpp"
#include "mcnc/saks.hpp"
#include "support.hpp"

using namespace mcnc;
namespace ts = testing_support;

namespace {

Instance triangle() {
  return Instance({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}},
                  {{"s1", "t1"}, {"s2", "t2"}, {"s3", "t3"}},
                  {{"s1", {"a"}}, {"t1", {"b"}}, {"s2", {"b"}}, {"t2", {"c"}}, {"s3", {"c"}}, {"t3", {"a"}}});
}

// Checks that `r` is a feasible flow made of genuine paths.
void expect_feasible(const Instance& inst, const FlowResult& r) {
  ASSERT_EQ(r.paths.size(), r.flows.size());
  std::vector<Rational> load(inst.vertex_count(), Rational(0));
  Rational total = 0;
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    const auto& p = r.paths[i];
    EXPECT_GT(r.flows[i], 0);
    const auto& c = inst.commodities()[p.commodity];
    const auto& src = inst.attach(c.source);
    const auto& snk = inst.attach(c.sink);
    EXPECT_TRUE(std::binary_search(src.begin(), src.end(), p.vertices.front()));
    EXPECT_TRUE(std::binary_search(snk.begin(), snk.end(), p.vertices.back()));
    EXPECT_EQ(std::set<std::size_t>(p.vertices.begin(), p.vertices.end()).size(), p.vertices.size());
    for (std::size_t j = 0; j + 1 < p.vertices.size(); ++j) EXPECT_TRUE(inst.adjacent(p.vertices[j], p.vertices[j + 1]));
    for (auto v : p.vertices) load[v] += r.flows[i];
    total += r.flows[i];
  }
  for (const auto& l : load) EXPECT_LE(l, 1);
  EXPECT_EQ(total, r.value);
}

}  // namespace

TEST(RationalText, FormatAndParse) {
  EXPECT_EQ(format_rational(Rational(2)), "2/1");
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("4"), Rational(4));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  for (int p = -7; p <= 7; ++p)
    for (int q = 1; q <= 5; ++q) EXPECT_EQ(parse_rational(format_rational(Rational(p, q))), Rational(p, q));
}

TEST(EnumeratePaths, PathGraph) {
  auto inst = path_instance(5);
  auto paths = enumerate_paths(inst, 0, 5);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].vertices, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(enumerate_paths(inst, 0, 4).empty());
}

TEST(EnumeratePaths, DisconnectedIsEmpty) {
  Instance inst({"a", "b"}, {}, {{"s", "t"}}, {{"s", {"a"}}, {"t", {"b"}}});
  EXPECT_TRUE(enumerate_paths(inst, 0, 2).empty());
  auto r = max_multicommodity_flow(inst);
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(r.paths.empty());
}

TEST(EnumeratePaths, TwoByTwoIncludesDiagonal) {
  auto b = saks_bundle(2, 2);
  // Commodity 0 runs from {p1} x V2 = {0, 1} to {p2} x V2 = {2, 3}.
  auto paths = enumerate_paths(b.instance, 0, 4);
  std::set<std::vector<std::size_t>> got;
  for (const auto& p : paths) got.insert(p.vertices);
  EXPECT_TRUE(got.count({0, 3}));
  EXPECT_TRUE(got.count({1, 2}));
  EXPECT_TRUE(got.count({0, 2}));
  auto induced = enumerate_paths(b.instance, 0, 4, true);
  for (const auto& p : induced) EXPECT_EQ(p.vertices.size(), 2u);
  EXPECT_EQ(induced.size(), 4u);
}

TEST(EnumeratePaths, InducedIsSubsetOfSimple) {
  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    auto inst = ts::random_instance(rng, 3 + rng.below(4), 1 + rng.below(2), "x", 0.5);
    for (std::size_t c = 0; c < inst.commodity_count(); ++c) {
      auto all = enumerate_paths(inst, c, inst.vertex_count());
      auto ind = enumerate_paths(inst, c, inst.vertex_count(), true);
      EXPECT_LE(ind.size(), all.size());
      for (const auto& p : ind) EXPECT_NE(std::find(all.begin(), all.end(), p), all.end());
      // Every simple path contains an induced one on a subset of its vertices.
      for (const auto& p : all) {
        std::set<std::size_t> vs(p.vertices.begin(), p.vertices.end());
        bool covered = false;
        for (const auto& q : ind)
          if (std::all_of(q.vertices.begin(), q.vertices.end(), [&](std::size_t v) { return vs.count(v) != 0; }))
            covered = true;
        EXPECT_TRUE(covered);
      }
    }
  }
}

TEST(EnumeratePaths, BudgetExceeded) {
  auto b = saks_bundle(4, 2);
  EXPECT_THROW(enumerate_paths(b.instance, 0, 16, false, 10), Error);
  try {
    max_multicommodity_flow(b.instance, {0, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(MaxFlow, PathIsOne) {
  auto r = max_multicommodity_flow(path_instance(4));
  EXPECT_EQ(r.value, 1);
  EXPECT_TRUE(r.exact);
  expect_feasible(path_instance(4), r);
}

TEST(MaxFlow, TwoByTwoIsTwo) {
  auto b = saks_bundle(2, 2);
  auto r = max_multicommodity_flow(b.instance);
  EXPECT_EQ(format_rational(r.value), "2/1");
  expect_feasible(b.instance, r);
}

TEST(MaxFlow, TriangleIsThreeHalves) {
  auto inst = triangle();
  auto r = max_multicommodity_flow(inst);
  EXPECT_EQ(r.value, Rational(3, 2));
  expect_feasible(inst, r);
  EXPECT_EQ(min_multicut(inst).size, 2u);
}

TEST(MaxFlow, ShortMaxLenIsNotExact) {
  auto inst = path_instance(4);
  auto r = max_multicommodity_flow(inst, {3, 1000});
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.value, 0);
}

TEST(MaxFlow, SandwichedBetweenPackingAndCut) {
  Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    auto ri = ts::random_routed_instance(rng, 2 + rng.below(7), "x");
    auto r = max_multicommodity_flow(ri.instance);
    expect_feasible(ri.instance, r);
    EXPECT_GE(r.value, Rational(ri.paths.size()));
    EXPECT_LE(r.value, Rational(ts::oracle_min_cut(ts::to_graph(ri.instance))));
  }
}

TEST(MaxFlow, MonotoneInMaxLen) {
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    auto inst = ts::random_instance(rng, 4 + rng.below(3), 2, "x", 0.45);
    Rational prev = 0;
    for (std::size_t len = 1; len <= inst.vertex_count(); ++len) {
      auto r = max_multicommodity_flow(inst, {len, 50000});
      EXPECT_GE(r.value, prev);
      prev = r.value;
    }
    EXPECT_EQ(prev, max_multicommodity_flow(inst).value);
  }
}

TEST(MaxFlow, InvariantUnderVertexRelabelling) {
  Rng rng(54);
  for (int t = 0; t < 20; ++t) {
    auto inst = ts::random_instance(rng, 3 + rng.below(4), 2, "x", 0.5);
    std::vector<std::size_t> perm(inst.vertex_count());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<Label> vs;
    for (auto p : perm) vs.push_back(inst.vertex(p));
    Instance shuffled(vs, inst.edge_labels(), inst.commodities(), inst.attach_labels());
    EXPECT_EQ(max_multicommodity_flow(inst).value, max_multicommodity_flow(shuffled).value);
  }
}

TEST(MaxFlow, SaksFlowBelowCodingRate) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {2, 3}}) {
    auto b = saks_bundle(n, k);
    auto r = max_multicommodity_flow(b.instance);
    expect_feasible(b.instance, r);
    EXPECT_LT(r.value, Rational(b.decodability->rate));
  }
}
