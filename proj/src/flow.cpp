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

#include "mcnc/flow.hpp"

#include <algorithm>
#include <optional>

#include "mcnc/error.hpp"

namespace mcnc {

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int p(text.substr(0, slash)), q(text.substr(slash + 1));
    if (q == 0) fail_input("rational with zero denominator: " + text);
    return Rational(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail_input("not a rational: " + text);
  }
}

namespace {

class PathWalker {
 public:
  PathWalker(const Instance& inst, std::size_t commodity, std::size_t max_len, bool induced, std::size_t max_paths)
      : inst_(inst), commodity_(commodity), max_len_(max_len), induced_(induced), max_paths_(max_paths),
        on_path_(inst.vertex_count(), 0), is_source_(inst.vertex_count(), 0), is_sink_(inst.vertex_count(), 0) {
    const auto& c = inst.commodities().at(commodity);
    for (auto v : inst.attach(c.source)) is_source_[v] = 1;
    for (auto v : inst.attach(c.sink)) is_sink_[v] = 1;
  }

  std::vector<PathVariable> run() {
    const auto& c = inst_.commodities()[commodity_];
    for (auto s : inst_.attach(c.source)) extend(s);
    return std::move(out_);
  }

 private:
  void extend(std::size_t v) {
    path_.push_back(v);
    on_path_[v] = 1;
    if (is_sink_[v]) {
      if (out_.size() == max_paths_)
        fail_budget("path enumeration exceeded " + std::to_string(max_paths_) + " paths");
      out_.push_back({commodity_, path_});
    }
    if (path_.size() < max_len_ && !(induced_ && is_sink_[v])) {
      for (auto w : inst_.neighbors(v)) {
        if (on_path_[w] || !allowed(w)) continue;
        extend(w);
      }
    }
    on_path_[v] = 0;
    path_.pop_back();
  }

  bool allowed(std::size_t w) const {
    if (!induced_) return true;
    if (is_source_[w]) return false;
    for (std::size_t i = 0; i + 1 < path_.size(); ++i)
      if (inst_.adjacent(path_[i], w)) return false;
    return true;
  }

  const Instance& inst_;
  std::size_t commodity_, max_len_;
  bool induced_;
  std::size_t max_paths_;
  std::vector<std::uint8_t> on_path_, is_source_, is_sink_;
  std::vector<std::size_t> path_;
  std::vector<PathVariable> out_;
};

// Revised simplex for max 1.x subject to A x <= 1, x >= 0, with A a 0/1
// vertex-path incidence matrix. Variables 0..P-1 are paths, P..P+m-1 slacks.
class Simplex {
 public:
  Simplex(std::size_t m, std::vector<std::vector<std::size_t>> columns)
      : m_(m), cols_(std::move(columns)), binv_(m, std::vector<Rational>(m)), xb_(m, Rational(1)), basis_(m) {
    for (std::size_t i = 0; i < m_; ++i) {
      binv_[i][i] = 1;
      basis_[i] = cols_.size() + i;
    }
  }

  std::size_t pivots = 0;

  void solve() {
    std::vector<std::uint8_t> in_basis(cols_.size() + m_, 0);
    for (auto b : basis_) in_basis[b] = 1;
    while (true) {
      // Duals y = c_B B^-1.
      std::vector<Rational> y(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= cols_.size()) continue;
        for (std::size_t j = 0; j < m_; ++j) y[j] += binv_[i][j];
      }
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_.size() + m_ && !entering; ++j) {
        if (in_basis[j]) continue;
        Rational reduced = j < cols_.size() ? Rational(1) : Rational(0);
        if (j < cols_.size()) {
          for (auto v : cols_[j]) reduced -= y[v];
        } else {
          reduced -= y[j - cols_.size()];
        }
        if (reduced > 0) entering = j;
      }
      if (!entering) return;

      std::vector<Rational> u(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        if (*entering < cols_.size()) {
          for (auto v : cols_[*entering]) u[i] += binv_[i][v];
        } else {
          u[i] = binv_[i][*entering - cols_.size()];
        }
      }
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= 0) continue;
        Rational ratio = xb_[i] / u[i];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) fail_internal("flow LP reported unbounded");

      const std::size_t r = *leave;
      const Rational pivot = u[r];
      for (std::size_t j = 0; j < m_; ++j) binv_[r][j] /= pivot;
      xb_[r] /= pivot;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == r || u[i] == 0) continue;
        const Rational f = u[i];
        for (std::size_t j = 0; j < m_; ++j)
          if (binv_[r][j] != 0) binv_[i][j] -= f * binv_[r][j];
        xb_[i] -= f * xb_[r];
      }
      in_basis[basis_[r]] = 0;
      in_basis[*entering] = 1;
      basis_[r] = *entering;
      ++pivots;
    }
  }

  /// Path variables with positive value, in path index order.
  std::vector<std::pair<std::size_t, Rational>> support() const {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < cols_.size() && xb_[i] > 0) out.emplace_back(basis_[i], xb_[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  std::size_t m_;
  std::vector<std::vector<std::size_t>> cols_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::vector<PathVariable> enumerate_paths(const Instance& inst, std::size_t commodity, std::size_t max_len,
                                          bool induced_only, std::size_t max_paths) {
  if (max_len < 1) fail_input("enumerate_paths: max_len must be at least 1");
  if (commodity >= inst.commodity_count()) fail_input("enumerate_paths: no such commodity");
  return PathWalker(inst, commodity, max_len, induced_only, max_paths).run();
}

FlowResult max_multicommodity_flow(const Instance& inst, const FlowOptions& options) {
  const std::size_t n = inst.vertex_count();
  const std::size_t max_len = options.max_len == 0 ? n : options.max_len;
  FlowResult result;
  result.exact = max_len >= n;

  std::vector<PathVariable> all;
  for (std::size_t i = 0; i < inst.commodity_count(); ++i) {
    const std::size_t left = options.max_paths - all.size();
    auto paths = enumerate_paths(inst, i, std::max<std::size_t>(max_len, 1), true, left);
    all.insert(all.end(), std::make_move_iterator(paths.begin()), std::make_move_iterator(paths.end()));
  }
  result.variables = all.size();
  if (all.empty() || n == 0) return result;

  std::vector<std::vector<std::size_t>> columns;
  columns.reserve(all.size());
  for (const auto& p : all) columns.push_back(p.vertices);
  Simplex lp(n, std::move(columns));
  lp.solve();
  result.pivots = lp.pivots;
  for (auto& [j, x] : lp.support()) {
    result.value += x;
    result.paths.push_back(all[j]);
    result.flows.push_back(x);
  }
  return result;
}

}  // namespace mcnc
