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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcnc/code.hpp"
#include "mcnc/flow.hpp"
#include "mcnc/product.hpp"

namespace mcnc {

/// Path p1 - p2 - ... - pn with one commodity, f(source) = {p1}, f(sink) = {pn}.
Instance path_instance(std::size_t n, const std::string& source = "s", const std::string& sink = "t");

/// Largest n^k a product family may reach.
inline constexpr std::size_t kConstructionBudget = 64;

/// k-fold left-folded product B_j = B_{j-1} x F_j. `factor(j)` builds the
/// bundle of copy j (1-based); copies must use distinct terminal ids.
/// Throws BudgetExceeded when the vertex count passes kConstructionBudget.
Bundle iterated_product(const std::function<Bundle(std::size_t)>& factor, std::size_t k);

/// k-fold product of P_n with the single-path code on each copy; copy j has
/// terminals s<j>, t<j>.
Bundle saks_bundle(std::size_t n, std::size_t k);

/// n^k - (n - r)^k.
std::size_t predicted_value(std::size_t n, std::size_t r, std::size_t k);

struct NamedCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SaksOptions {
  /// Exhaustive certifiability up to this many vertices, sampled above.
  std::size_t exhaustive_limit = 22;
  std::optional<CertifyMode::Kind> force_mode;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool skip_bruteforce = false;
  std::size_t bruteforce_limit = 22;
  bool compute_flow = true;
  std::size_t max_paths = 50'000;
  std::size_t simulation_trials = 8;
};

struct SaksReport {
  std::size_t n = 0, k = 0, r = 1;
  std::size_t vertices = 0;
  std::size_t predicted = 0;
  std::size_t coding_rate = 0;
  std::size_t rho = 0;
  VertexSet upper_bound_cut;  // f(T)
  std::optional<std::size_t> brute_force_cut;
  std::optional<Rational> flow_value;  // empty when not computed
  bool flow_exact = false;
  std::string flow_note;               // why the flow was not computed
  std::string factor_order;
  bool certify_exhaustive = false;
  std::size_t certify_nodes = 0;
  std::vector<NamedCheck> checks;

  bool ok() const;
  /// First failed check, if any.
  const NamedCheck* first_failure() const;
};

/// Builds the P_n family bundle and runs every check on it.
SaksReport verify_corollary1(std::size_t n, std::size_t k, const SaksOptions& options = {});

/// Same checks for the k-fold product of a disjoint-path code: `paths` are r
/// vertex-disjoint routed paths with |f(S)| = |f(T)| = r, and the expected
/// value is n^k - (n - r)^k. Throws InvalidInput on a precondition violation.
SaksReport verify_corollary2(const Instance& inst, const std::vector<RoutedPath>& paths, std::size_t k,
                             const SaksOptions& options = {});

/// Runs the family checks on an already assembled product bundle.
SaksReport verify_family(const Bundle& bundle, std::size_t n, std::size_t r, std::size_t k,
                         const SaksOptions& options);

/// Aligned text table, one row per report plus the failing checks.
std::string format_report_table(const std::vector<SaksReport>& reports);

}  // namespace mcnc
