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
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcnc/instance.hpp"

namespace mcnc {

/// Exact rational, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", with q printed even when it is 1.
std::string format_rational(const Rational& r);
/// Parses "p/q" or "p". Throws InvalidInput.
Rational parse_rational(const std::string& text);

struct PathVariable {
  std::size_t commodity = 0;
  std::vector<std::size_t> vertices;  // first in f(s_i), last in f(t_i)

  friend bool operator==(const PathVariable&, const PathVariable&) = default;
};

/// Simple s_i-t_i paths with at most `max_len` graph vertices, depth first from
/// the lowest entry vertex, neighbours in index order.
///
/// With `induced_only`, keeps only chordless paths that touch f(s_i) only at
/// the start and f(t_i) only at the end. Every simple path contains one of
/// these on a subset of its vertices, so the flow optimum is unchanged.
/// Throws BudgetExceeded past `max_paths`.
std::vector<PathVariable> enumerate_paths(const Instance& inst, std::size_t commodity, std::size_t max_len,
                                          bool induced_only = false, std::size_t max_paths = 50'000);

struct FlowOptions {
  std::size_t max_len = 0;  // 0 means |V|
  std::size_t max_paths = 50'000;
};

struct FlowResult {
  Rational value;
  std::vector<PathVariable> paths;  // support of the optimum
  std::vector<Rational> flows;      // parallel to `paths`, all positive
  std::size_t variables = 0;        // path columns in the LP
  std::size_t pivots = 0;
  bool exact = false;               // max_len >= |V|
};

/// Maximum total flow: maximize sum x_P subject to sum_{P through v} x_P <= 1
/// for every graph vertex v, x >= 0. Revised simplex over exact rationals with
/// Bland's rule. Throws BudgetExceeded when the path count passes max_paths.
FlowResult max_multicommodity_flow(const Instance& inst, const FlowOptions& options = {});

}  // namespace mcnc
