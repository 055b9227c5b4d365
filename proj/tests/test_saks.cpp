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

#include "mcnc/error.hpp"
#include "mcnc/saks.hpp"
#include "support.hpp"

using namespace mcnc;
namespace ts = testing_support;

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t out = 1;
  while (e--) out *= b;
  return out;
}

// Two parallel 2-paths a1-a2 and b1-b2; one commodity routed on each.
Instance two_lanes() {
  return Instance({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}}, {{"s", "t"}, {"u", "w"}},
                  {{"s", {"a1"}}, {"t", {"a2"}}, {"u", {"b1"}}, {"w", {"b2"}}});
}

bool has_check(const SaksReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return true;
  return false;
}

}  // namespace

TEST(PathInstance, Shape) {
  auto inst = path_instance(4, "x", "y");
  EXPECT_EQ(inst.vertex_count(), 4u);
  EXPECT_EQ(inst.edges().size(), 3u);
  EXPECT_EQ(inst.attach("x"), (VertexSet{0}));
  EXPECT_EQ(inst.attach("y"), (VertexSet{3}));
  EXPECT_THROW(path_instance(1), Error);
}

TEST(PredictedValue, Examples) {
  EXPECT_EQ(predicted_value(2, 1, 2), 3u);
  EXPECT_EQ(predicted_value(3, 1, 2), 5u);
  EXPECT_EQ(predicted_value(4, 1, 2), 7u);
  EXPECT_EQ(predicted_value(2, 1, 3), 7u);
  EXPECT_EQ(predicted_value(3, 1, 3), 19u);
  EXPECT_EQ(predicted_value(5, 5, 2), 25u);
  EXPECT_EQ(predicted_value(4, 2, 2), 12u);
  EXPECT_THROW(predicted_value(2, 3, 2), Error);
}

TEST(PredictedValue, Recurrence) {
  // One more factor: value(k) = n value(k-1) + (n-r)^(k-1) r.
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t k = 2; k <= 4; ++k)
        EXPECT_EQ(predicted_value(n, r, k), n * predicted_value(n, r, k - 1) + ipow(n - r, k - 1) * r);
}

TEST(SaksBundle, SingleFactorHasValueOne) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto b = saks_bundle(n, 1);
    EXPECT_EQ(b.decodability->rate, 1u);
    EXPECT_EQ(b.certifiability->bound, 1u);
    EXPECT_EQ(b.instance.sink_attach_union().size(), 1u);
  }
}

TEST(SaksBundle, Values) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {5, 2}}) {
    auto b = saks_bundle(n, k);
    const std::size_t want = ipow(n, k) - ipow(n - 1, k);
    EXPECT_EQ(b.instance.vertex_count(), ipow(n, k));
    EXPECT_EQ(b.decodability->rate, want);
    EXPECT_EQ(b.certifiability->bound, want);
    EXPECT_EQ(b.instance.sink_attach_union().size(), want);
    EXPECT_EQ(b.instance.commodity_count(), k);
  }
}

TEST(SaksBundle, TerminalsAreNumberedPerCopy) {
  auto b = saks_bundle(2, 3);
  for (const char* id : {"s1", "t1", "s2", "t2", "s3", "t3"}) EXPECT_TRUE(b.instance.is_terminal(id)) << id;
}

TEST(SaksBundle, BudgetAndArguments) {
  try {
    saks_bundle(3, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  EXPECT_THROW(saks_bundle(1, 2), Error);
  EXPECT_THROW(saks_bundle(2, 0), Error);
  EXPECT_NO_THROW(saks_bundle(8, 2));
  EXPECT_NO_THROW(saks_bundle(4, 3));
}

TEST(SaksBundle, BruteForceMatchesOnSmallCases) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {2, 3}}) {
    auto b = saks_bundle(n, k);
    EXPECT_EQ(ts::oracle_min_cut(ts::to_graph(b.instance)), ipow(n, k) - ipow(n - 1, k));
  }
}

TEST(VerifyCorollary1, AllChecksPass) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {2, 3}}) {
    auto rep = verify_corollary1(n, k);
    EXPECT_TRUE(rep.ok()) << (rep.first_failure() ? rep.first_failure()->name + ": " + rep.first_failure()->detail : "");
    EXPECT_TRUE(rep.certify_exhaustive);
    EXPECT_TRUE(has_check(rep, "flow < coding rate"));
    EXPECT_TRUE(has_check(rep, "B certificate on f(T)"));
    ASSERT_TRUE(rep.brute_force_cut.has_value());
    EXPECT_EQ(*rep.brute_force_cut, rep.predicted);
  }
}

TEST(VerifyCorollary1, TwoTwoFlowIsTwo) {
  auto rep = verify_corollary1(2, 2);
  ASSERT_TRUE(rep.flow_value.has_value());
  EXPECT_EQ(format_rational(*rep.flow_value), "2/1");
  EXPECT_EQ(rep.coding_rate, 3u);
}

TEST(VerifyCorollary1, SampledModeAboveLimit) {
  SaksOptions o;
  o.exhaustive_limit = 4;
  o.samples = 50;
  o.seed = 9;
  o.skip_bruteforce = true;
  auto rep = verify_corollary1(3, 2, o);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.certify_exhaustive);
  EXPECT_FALSE(rep.brute_force_cut.has_value());
  EXPECT_FALSE(has_check(rep, "brute-force min multicut"));
}

TEST(VerifyCorollary1, SingleFactorHasNoGapCheck) {
  auto rep = verify_corollary1(3, 1);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(has_check(rep, "flow < coding rate"));
  EXPECT_FALSE(has_check(rep, "B certificate on f(T)"));
}

TEST(VerifyCorollary2, TwoLanes) {
  auto rep = verify_corollary2(two_lanes(), {{0, {0, 1}}, {1, {2, 3}}}, 2);
  EXPECT_EQ(rep.predicted, 12u);
  EXPECT_EQ(rep.coding_rate, 12u);
  EXPECT_EQ(rep.rho, 12u);
  EXPECT_TRUE(rep.ok()) << (rep.first_failure() ? rep.first_failure()->name + ": " + rep.first_failure()->detail : "");
}

TEST(VerifyCorollary2, SingleLaneMatchesCorollary1) {
  auto rep2 = verify_corollary2(path_instance(3), {{0, {0, 1, 2}}}, 2);
  auto rep1 = verify_corollary1(3, 2);
  EXPECT_TRUE(rep2.ok());
  EXPECT_EQ(rep2.predicted, rep1.predicted);
  EXPECT_EQ(rep2.coding_rate, rep1.coding_rate);
  EXPECT_EQ(rep2.rho, rep1.rho);
}

TEST(VerifyCorollary2, FullRateEveryVertexIsATerminal) {
  // r = n: the cut is every vertex.
  Instance inst({"a", "b"}, {{"a", "b"}}, {{"s", "t"}, {"u", "w"}},
                {{"s", {"a"}}, {"t", {"a"}}, {"u", {"b"}}, {"w", {"b"}}});
  auto rep = verify_corollary2(inst, {{0, {0}}, {1, {1}}}, 2);
  EXPECT_EQ(rep.predicted, 4u);
  EXPECT_TRUE(rep.ok()) << (rep.first_failure() ? rep.first_failure()->name + ": " + rep.first_failure()->detail : "");
}

TEST(VerifyCorollary2, Preconditions) {
  auto inst = two_lanes();
  EXPECT_THROW(verify_corollary2(inst, {{0, {0, 1}}}, 2), Error);           // |f(S)| != r
  EXPECT_THROW(verify_corollary2(inst, {{0, {0, 1}}, {1, {1, 3}}}, 2), Error);  // shared vertex
  EXPECT_THROW(verify_corollary2(inst, {{0, {0, 1}}, {1, {2, 3}}}, 0), Error);
}

TEST(ReportTable, HasHeaderAndRows) {
  std::vector<SaksReport> reps{verify_corollary1(2, 2), verify_corollary1(3, 2)};
  auto table = format_report_table(reps);
  EXPECT_NE(table.find("predicted"), std::string::npos);
  EXPECT_NE(table.find("brute-force"), std::string::npos);
  EXPECT_NE(table.find("2/1"), std::string::npos);
  EXPECT_NE(table.find("3/1"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
}

TEST(ReportTable, FlowNotComputedIsMarked) {
  SaksOptions o;
  o.compute_flow = false;
  auto rep = verify_corollary1(2, 2, o);
  EXPECT_FALSE(rep.flow_value.has_value());
  EXPECT_NE(format_report_table({rep}).find("not computed"), std::string::npos);
}

TEST(PathInstance, FiveVertexCutAndFlow) {
  auto inst = path_instance(5);
  EXPECT_EQ(min_multicut(inst).size, 1u);
  EXPECT_EQ(max_multicommodity_flow(inst).value, 1);
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  auto b = disjoint_path_code(inst, {{0, all}});
  EXPECT_EQ(b.decodability->rate, 1u);
  EXPECT_EQ(b.certifiability->bound, 1u);
}
