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

#include <memory>
#include <set>

#include "mcnc/error.hpp"
#include "mcnc/product.hpp"
#include "mcnc/saks.hpp"
#include "support.hpp"

using namespace mcnc;
namespace ts = testing_support;

namespace {

std::shared_ptr<const Bundle> share(Bundle b) { return std::make_shared<const Bundle>(std::move(b)); }

Bundle path_factor(std::size_t n, const std::string& tag) {
  auto inst = path_instance(n, "s" + tag, "t" + tag);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return disjoint_path_code(inst, {{0, all}});
}

Bundle random_factor(Rng& rng, std::size_t max_n, const std::string& prefix, PrimeField f = PrimeField(2)) {
  auto ri = ts::random_routed_instance(rng, 2 + rng.below(max_n - 1), prefix, 2);
  return disjoint_path_code(ri.instance, ri.paths, f);
}

// Rate formula evaluated from the factor data alone.
std::size_t expected_rate(const Bundle& a, const Bundle& b) {
  const std::size_t n1 = a.instance.vertex_count(), n2 = b.instance.vertex_count();
  return n1 * b.decodability->rate + n2 * a.decodability->rate -
         a.decodability->rate * b.instance.sink_attach_union().size();
}

std::size_t expected_bound(const Bundle& a, const Bundle& b) {
  const std::size_t n1 = a.instance.vertex_count(), n2 = b.instance.vertex_count();
  return n1 * b.certifiability->bound + n2 * a.certifiability->bound -
         a.certifiability->bound * b.instance.source_attach_union().size();
}

void expect_decoders_sound(const Bundle& b) {
  const auto& w = *b.decodability;
  for (const auto& [m, d] : w.decoders) {
    auto dl = vec_mul(b.code.matrix(), d);
    EXPECT_NE(dl[m], 0u);
    for (auto c : support(dl))
      EXPECT_TRUE(c == m || std::binary_search(w.fixed.begin(), w.fixed.end(), c)) << "column " << c;
  }
  EXPECT_EQ(w.decoders.size() + w.fixed.size(), b.code.message_count());
}

}  // namespace

TEST(ProductCode, TwoByTwoMatrix) {
  auto b = product_bundle(share(path_factor(2, "1")), share(path_factor(2, "2")));
  PrimeField f(2);
  auto ones = FieldMatrix::from_rows(f, {{1}, {1}});
  auto expected = hstack({kron(FieldMatrix::identity(f, 2), ones), kron(ones, FieldMatrix::identity(f, 2))});
  EXPECT_EQ(b.code.matrix(), expected);
  EXPECT_EQ(b.code.matrix(), FieldMatrix::from_rows(f, {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}));
  EXPECT_EQ(b.code.rate_of("s1"), 2u);
  EXPECT_EQ(b.code.rate_of("s2"), 2u);
  EXPECT_EQ(b.code.ordering(), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(ProductCode, LexicographicSchedule) {
  // Reversed factor orderings must give the reversed lexicographic schedule.
  Instance i1({"a", "b"}, {{"a", "b"}}, {{"s1", "t1"}}, {{"s1", {"b"}}, {"t1", {"a"}}});
  auto b1 = disjoint_path_code(i1, {{0, {1, 0}}});
  auto b2 = path_factor(3, "2");
  auto prod = product_bundle(share(b1), share(b2));
  // (b, p1) is index 3, then (b, p2), (b, p3), (a, p1), ...
  EXPECT_EQ(prod.code.ordering(), (std::vector<std::size_t>{3, 4, 5, 0, 1, 2}));
}

TEST(ProductCode, PointFactorLeavesCodeUnchanged) {
  Instance point({"o"}, {}, {}, {});
  auto right = path_factor(4, "2");
  auto prod = product_bundle(share(empty_code(point)), share(right));
  EXPECT_EQ(prod.code.matrix(), right.code.matrix());
  EXPECT_EQ(prod.decodability->rate, right.decodability->rate);
  EXPECT_EQ(prod.certifiability->bound, right.certifiability->bound);
  EXPECT_TRUE(check_certifiable(prod.instance, prod.code, *prod.certifiability, CertifyMode::exhaustive()).ok);
}

TEST(ProductCode, FieldMismatchRejected) {
  auto a = path_factor(2, "1");
  auto inst = path_instance(2, "s2", "t2");
  auto b = disjoint_path_code(inst, {{0, {0, 1}}}, PrimeField(3));
  EXPECT_THROW(product_bundle(share(a), share(b)), Error);
}

TEST(ProductDecodability, SaksTwoTwo) {
  auto b = saks_bundle(2, 2);
  ASSERT_TRUE(b.decodability.has_value());
  EXPECT_EQ(b.decodability->fixed.size(), 1u);
  EXPECT_EQ(b.decodability->rate, 3u);
  EXPECT_FALSE(verify_decoders(b.instance, b.code, *b.decodability).has_value());
  expect_decoders_sound(b);
}

TEST(ProductDecodability, SaksThreeTwo) {
  auto b = saks_bundle(3, 2);
  EXPECT_EQ(b.decodability->rate, 5u);
  EXPECT_EQ(b.certifiability->bound, 5u);
  EXPECT_FALSE(verify_decoders(b.instance, b.code, *b.decodability).has_value());
  expect_decoders_sound(b);
}

TEST(ProductRate, FormulasMatchFactorData) {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    auto a = random_factor(rng, 4, "a");
    auto c = random_factor(rng, 4, "b");
    EXPECT_EQ(product_rate(a, c), expected_rate(a, c));
    EXPECT_EQ(product_bound(a, c), expected_bound(a, c));
    auto p = product_bundle(share(a), share(c));
    EXPECT_EQ(p.decodability->rate, expected_rate(a, c));
    EXPECT_EQ(p.certifiability->bound, expected_bound(a, c));
  }
}

TEST(ProductBundle, RandomPairsPassEveryCheck) {
  Rng rng(42);
  const std::uint32_t fields[] = {2, 3, 5};
  for (int t = 0; t < 30; ++t) {
    PrimeField f(fields[t % 3]);
    auto a = random_factor(rng, 4, "a", f);
    auto c = random_factor(rng, 4, "b", f);
    auto p = product_bundle(share(a), share(c));
    EXPECT_TRUE(check_valid(p.instance, p.code).ok);
    EXPECT_FALSE(verify_encoders(p.instance, p.code, p.encoders).has_value());
    EXPECT_FALSE(verify_decoders(p.instance, p.code, *p.decodability).has_value());
    expect_decoders_sound(p);
    auto cert = check_certifiable(p.instance, p.code, *p.certifiability, CertifyMode::exhaustive());
    EXPECT_TRUE(cert.ok) << (cert.failure ? cert.failure->to_string() : "");
  }
}

TEST(ProductBundle, ZeroBoundFactors) {
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    auto ri = ts::random_routed_instance(rng, 3, "a", 2);
    auto a = empty_code(ri.instance);
    auto c = random_factor(rng, 4, "b");
    auto p = product_bundle(share(a), share(c));
    EXPECT_EQ(p.certifiability->bound, ri.instance.vertex_count() * c.certifiability->bound);
    EXPECT_TRUE(check_certifiable(p.instance, p.code, *p.certifiability, CertifyMode::exhaustive()).ok);
  }
}

TEST(ProductBundle, AssociativeInRateAndBound) {
  Rng rng(44);
  for (int t = 0; t < 8; ++t) {
    auto a = share(random_factor(rng, 3, "a"));
    auto b = share(random_factor(rng, 3, "b"));
    auto c = share(random_factor(rng, 3, "c"));
    auto left = product_bundle(share(product_bundle(a, b)), c);
    auto right = product_bundle(a, share(product_bundle(b, c)));
    EXPECT_EQ(left.decodability->rate, right.decodability->rate);
    EXPECT_EQ(left.certifiability->bound, right.certifiability->bound);
    EXPECT_EQ(left.instance.vertex_count(), right.instance.vertex_count());
  }
}

TEST(Projection, EveryProjectionIsAMulticut) {
  Rng rng(45);
  int checked = 0;
  for (int t = 0; t < 25; ++t) {
    auto a = random_factor(rng, 4, "a");
    auto c = random_factor(rng, 4, "b");
    auto p = product_bundle(share(a), share(c));
    const auto g1 = ts::to_graph(a.instance), g2 = ts::to_graph(c.instance);
    for (int s = 0; s < 4; ++s) {
      auto cut = ts::random_multicut(rng, p.instance);
      for (std::size_t u = 0; u < a.instance.vertex_count(); ++u) {
        auto pr = project_multicut(p.instance, a.instance, c.instance, cut, u, a.certifiability->cliques[u]);
        EXPECT_TRUE(pr.is_multicut);
        EXPECT_TRUE(ts::oracle_is_multicut(g2, ts::to_mask(pr.cut)));
        ++checked;
      }
      for (std::size_t v = 0; v < c.instance.vertex_count(); ++v) {
        auto pr = project_multicut_first(p.instance, a.instance, c.instance, cut, v, c.certifiability->cliques[v]);
        EXPECT_TRUE(pr.is_multicut);
        EXPECT_TRUE(ts::oracle_is_multicut(g1, ts::to_mask(pr.cut)));
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Projection, RejectsNonMulticutAndBadClique) {
  auto a = path_factor(2, "1");
  auto c = path_factor(2, "2");
  auto p = product_bundle(share(a), share(c));
  EXPECT_THROW(project_multicut(p.instance, a.instance, c.instance, {0}, 0, {0}), Error);
  VertexSet all{0, 1, 2, 3};
  EXPECT_THROW(project_multicut(p.instance, a.instance, c.instance, all, 0, {1}), Error);
  auto pr = project_multicut(p.instance, a.instance, c.instance, all, 0, {0});
  EXPECT_EQ(pr.cut, (VertexSet{0, 1}));
}

TEST(BCertificate, SaksThreeThreeFullCut) {
  auto b = saks_bundle(3, 3);
  auto cert = build_b_certificate(b, b.instance.sink_attach_union());
  EXPECT_TRUE(cert.ok()) << (cert.violations.empty() ? "" : cert.violations.front());
  EXPECT_GE(cert.rank, 19u);
  EXPECT_EQ(cert.bound, 19u);
  EXPECT_TRUE(is_lower_block_triangular(cert.ordered, cert.partition));
  EXPECT_EQ(rank(cert.ltb), cert.rank);
}

TEST(BCertificate, RandomMulticutsOnRandomProducts) {
  Rng rng(46);
  for (int t = 0; t < 20; ++t) {
    auto a = random_factor(rng, 4, "a");
    auto c = random_factor(rng, 4, "b");
    auto p = product_bundle(share(a), share(c));
    for (int s = 0; s < 3; ++s) {
      auto cut = ts::random_multicut(rng, p.instance);
      auto cert = build_b_certificate(p, cut);
      EXPECT_TRUE(cert.ok()) << (cert.violations.empty() ? "" : cert.violations.front());
      EXPECT_TRUE(cert.within_cut);
      EXPECT_LE(cert.rank, ts::oracle_cut_rank(p.code, ts::to_mask(cut)));
      EXPECT_EQ(cert.rank, rank(multiply(p.code.matrix().transpose(), cert.b)));
    }
  }
}

TEST(BCertificate, NeedsProvenanceAndMulticut) {
  auto base = path_factor(3, "1");
  EXPECT_THROW(build_b_certificate(base, {2}), Error);
  auto p = saks_bundle(2, 2);
  EXPECT_THROW(build_b_certificate(p, {0}), Error);
}

TEST(ProductCode, TwoByTwoKroneckerEncodersAreValid) {
  auto a = path_factor(2, "1");
  auto c = path_factor(2, "2");
  auto p = product_bundle(share(a), share(c));
  EXPECT_TRUE(check_valid(p.instance, p.code).ok);
  EXPECT_FALSE(verify_encoders(p.instance, p.code, p.encoders).has_value());
  PrimeField f(2);
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v)
      EXPECT_EQ(p.encoders[u * 2 + v], ts::to_grid(kron(FieldMatrix::row_vector(f, a.encoders[u]),
                                                        FieldMatrix::row_vector(f, c.encoders[v])))[0]);
}

TEST(ProductCertifiability, SaksThreeTwoExhaustive) {
  auto b = saks_bundle(3, 2);
  auto rep = check_certifiable(b.instance, b.code, *b.certifiability, CertifyMode::exhaustive());
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.exhaustive);
  for (auto m : ts::oracle_minimal_cuts(ts::to_graph(b.instance))) EXPECT_GE(ts::oracle_cut_rank(b.code, m), 5u);
}

TEST(Projection, FullFirstCoordinateContainsTheFactorCut) {
  auto a = path_factor(3, "1");
  auto c = path_factor(3, "2");
  auto p = product_bundle(share(a), share(c));
  for (std::size_t m2 = 0; m2 < 3; ++m2) {
    // V1 x {m2}, plus f1(t1) x V2 so the first commodity is cut as well.
    std::set<std::size_t> members;
    for (std::size_t u = 0; u < 3; ++u) members.insert(u * 3 + m2);
    for (std::size_t v = 0; v < 3; ++v) members.insert(2 * 3 + v);
    VertexSet cut(members.begin(), members.end());
    for (std::size_t u = 0; u < 3; ++u) {
      auto pr = project_multicut(p.instance, a.instance, c.instance, cut, u, a.certifiability->cliques[u]);
      EXPECT_TRUE(std::binary_search(pr.cut.begin(), pr.cut.end(), m2));
      EXPECT_TRUE(pr.is_multicut);
    }
  }
}

TEST(Projection, SaksTwoTwoSinkCut) {
  auto a = path_factor(2, "1");
  auto c = path_factor(2, "2");
  auto p = product_bundle(share(a), share(c));
  auto pr = project_multicut(p.instance, a.instance, c.instance, p.instance.sink_attach_union(), 0, {0});
  EXPECT_TRUE(pr.is_multicut);
  EXPECT_EQ(pr.cut, (VertexSet{1}));  // (p1, q2) is the only sink vertex in row p1
}

TEST(BCertificate, SaksTwoTwoSinkCut) {
  auto b = saks_bundle(2, 2);
  auto cert = build_b_certificate(b, b.instance.sink_attach_union());
  EXPECT_TRUE(cert.ok());
  EXPECT_GE(cert.rank, 3u);
}

TEST(BCertificate, ZeroBoundBundle) {
  auto a = path_factor(2, "1");
  auto c = path_factor(3, "2");
  auto p = product_bundle(share(empty_code(a.instance)), share(empty_code(c.instance)));
  EXPECT_EQ(p.certifiability->bound, 0u);
  Rng rng(47);
  for (int s = 0; s < 5; ++s) {
    auto cert = build_b_certificate(p, ts::random_multicut(rng, p.instance));
    EXPECT_TRUE(cert.ok());
  }
}
