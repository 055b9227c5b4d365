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

#include "mcnc/saks.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <memory>
#include <sstream>

#include "mcnc/error.hpp"
#include "mcnc/random.hpp"

namespace mcnc {

Instance path_instance(std::size_t n, const std::string& source, const std::string& sink) {
  if (n < 2) fail_input("path_instance: n must be at least 2");
  std::vector<Label> vertices;
  std::vector<std::pair<Label, Label>> edges;
  for (std::size_t i = 1; i <= n; ++i) vertices.emplace_back("p" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(vertices[i], vertices[i + 1]);
  std::map<std::string, std::vector<Label>> attach{{source, {vertices.front()}}, {sink, {vertices.back()}}};
  return Instance(vertices, edges, {{source, sink}}, attach);
}

Bundle iterated_product(const std::function<Bundle(std::size_t)>& factor, std::size_t k) {
  if (k < 1) fail_input("iterated_product: k must be at least 1");
  Bundle current = factor(1);
  for (std::size_t j = 2; j <= k; ++j) {
    Bundle next = factor(j);
    const std::size_t size = current.instance.vertex_count() * next.instance.vertex_count();
    if (size > kConstructionBudget)
      fail_budget("product of " + std::to_string(size) + " vertices exceeds the construction budget of " +
                  std::to_string(kConstructionBudget));
    current = product_bundle(std::make_shared<const Bundle>(std::move(current)),
                             std::make_shared<const Bundle>(std::move(next)), "B" + std::to_string(j - 1),
                             "F" + std::to_string(j));
  }
  return current;
}

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_budget(std::size_t n, std::size_t k) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) {
    size *= n;
    if (size > kConstructionBudget)
      fail_budget("n^k exceeds the construction budget of " + std::to_string(kConstructionBudget));
  }
}

Bundle path_factor(std::size_t n, std::size_t j) {
  const std::string tag = std::to_string(j);
  Instance inst = path_instance(n, "s" + tag, "t" + tag);
  std::vector<std::size_t> path(n);
  for (std::size_t i = 0; i < n; ++i) path[i] = i;
  return disjoint_path_code(inst, {{0, path}});
}

// True when no source reaches any sink vertex after deleting `cut`.
bool separates_all(const Instance& inst, const VertexSet& cut) {
  std::vector<std::uint8_t> removed(inst.vertex_count(), 0), seen(inst.vertex_count(), 0);
  for (auto v : cut) removed[v] = 1;
  std::deque<std::size_t> queue;
  for (auto v : inst.source_attach_union())
    if (!removed[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : inst.neighbors(v))
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  for (auto v : inst.sink_attach_union())
    if (seen[v]) return false;
  return true;
}

std::string eq_detail(std::size_t got, std::size_t want) {
  return std::to_string(got) + (got == want ? " = " : " != ") + std::to_string(want);
}

}  // namespace

std::size_t predicted_value(std::size_t n, std::size_t r, std::size_t k) {
  if (r > n) fail_input("predicted_value: r exceeds n");
  return ipow(n, k) - ipow(n - r, k);
}

Bundle saks_bundle(std::size_t n, std::size_t k) {
  if (n < 2) fail_input("saks_bundle: n must be at least 2");
  if (k < 1) fail_input("saks_bundle: k must be at least 1");
  check_budget(n, k);
  return iterated_product([n](std::size_t j) { return path_factor(n, j); }, k);
}

bool SaksReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.ok; });
}

const NamedCheck* SaksReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return &c;
  return nullptr;
}

SaksReport verify_family(const Bundle& bundle, std::size_t n, std::size_t r, std::size_t k,
                         const SaksOptions& options) {
  const Instance& inst = bundle.instance;
  const LinearCode& code = bundle.code;
  SaksReport rep;
  rep.n = n;
  rep.k = k;
  rep.r = r;
  rep.vertices = inst.vertex_count();
  rep.predicted = predicted_value(n, r, k);
  rep.factor_order = k == 1 ? "single factor" : "left fold: B_j = B_(j-1) x F_j, F_j the base factor";
  auto add = [&rep](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  auto validity = check_valid(inst, code);
  add("validity", validity.ok, validity.ok ? "encoding vector found at every vertex" : validity.failure->to_string());
  auto supplied = verify_encoders(inst, code, bundle.encoders);
  add("encoder witness", !supplied, supplied ? supplied->to_string() : "a_u (x) a_v satisfies both conditions");

  if (!bundle.decodability) fail_input("verify_family: bundle has no decodability witness");
  const auto& dec = *bundle.decodability;
  rep.coding_rate = dec.rate;
  auto dfail = verify_decoders(inst, code, dec);
  add("decoder witness", !dfail, dfail ? dfail->to_string() : "|D| = " + std::to_string(dec.fixed.size()));
  auto solved = check_decodable(inst, code, dec.fixed);
  add("decodability", solved.ok, solved.ok ? "decoder solved for every message outside D" : solved.failure->to_string());
  add("rate", dec.rate == rep.predicted, eq_detail(dec.rate, rep.predicted));

  if (!bundle.certifiability) fail_input("verify_family: bundle has no certifiability witness");
  const auto& cert = *bundle.certifiability;
  rep.rho = cert.bound;
  add("rho", cert.bound == rep.predicted, eq_detail(cert.bound, rep.predicted));

  CertifyMode mode;
  const bool exhaustive = options.force_mode ? *options.force_mode == CertifyMode::Kind::Exhaustive
                                             : inst.vertex_count() <= options.exhaustive_limit;
  if (!exhaustive) mode = CertifyMode::sampled(options.samples, options.seed);
  auto creport = check_certifiable(inst, code, cert, mode);
  rep.certify_exhaustive = creport.exhaustive;
  rep.certify_nodes = creport.search_nodes;
  add("certifiability", creport.ok,
      creport.ok ? std::string(creport.exhaustive ? "exhaustive, " : "sampled, ") +
                       std::to_string(creport.search_nodes) + (creport.exhaustive ? " search nodes" : " cuts")
                 : creport.failure->to_string());

  rep.upper_bound_cut = inst.sink_attach_union();
  const bool cut_ok = is_multicut(inst, rep.upper_bound_cut);
  add("f(T) is a multicut", cut_ok, format_vertex_set(inst, rep.upper_bound_cut));
  add("|f(T)|", rep.upper_bound_cut.size() == rep.predicted, eq_detail(rep.upper_bound_cut.size(), rep.predicted));
  add("f(T) separates all sources from all sinks", separates_all(inst, rep.upper_bound_cut), "");
  add("sandwich rho = |f(T)|", cut_ok && rep.rho == rep.upper_bound_cut.size(),
      std::to_string(rep.rho) + " <= min multicut <= " + std::to_string(rep.upper_bound_cut.size()));

  if (k >= 2 && cut_ok) {
    auto b = build_b_certificate(bundle, rep.upper_bound_cut);
    std::string detail = "rank " + std::to_string(b.rank) + ", diagonal sum " + std::to_string(b.diagonal_rank_sum) +
                         ", bound " + std::to_string(b.bound);
    if (!b.violations.empty()) detail += "; " + b.violations.front();
    add("B certificate on f(T)", b.ok(), detail);
  }

  if (!options.skip_bruteforce && inst.vertex_count() <= options.bruteforce_limit) {
    auto mc = min_multicut(inst, options.bruteforce_limit);
    rep.brute_force_cut = mc.size;
    add("brute-force min multicut", mc.size == rep.predicted, eq_detail(mc.size, rep.predicted));
  }

  if (options.compute_flow) {
    try {
      auto flow = max_multicommodity_flow(inst, {0, options.max_paths});
      rep.flow_value = flow.value;
      rep.flow_exact = flow.exact;
      add("flow <= cut", flow.value <= Rational(rep.upper_bound_cut.size()),
          format_rational(flow.value) + " vs " + std::to_string(rep.upper_bound_cut.size()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.flow_note = "not computed: " + std::string(e.what());
    }
  } else {
    rep.flow_note = "not computed: disabled";
  }

  if (options.simulation_trials > 0) {
    Rng rng(options.seed);
    bool all_ok = true;
    std::size_t t = 0;
    for (; t < options.simulation_trials && all_ok; ++t) {
      RowVector msg(code.message_count());
      for (auto& x : msg) x = static_cast<Residue>(rng.below(code.field().modulus()));
      all_ok = simulate(inst, code, bundle.encoders, dec, msg).ok;
    }
    add("simulation", all_ok, std::to_string(t) + " random message vectors");
  }
  return rep;
}

SaksReport verify_corollary1(std::size_t n, std::size_t k, const SaksOptions& options) {
  Bundle bundle = saks_bundle(n, k);
  SaksReport rep = verify_family(bundle, n, 1, k, options);
  if (k >= 2 && rep.flow_value) {
    const bool gap = *rep.flow_value < Rational(rep.coding_rate);
    rep.checks.push_back({"flow < coding rate", gap,
                          format_rational(*rep.flow_value) + " vs " + std::to_string(rep.coding_rate)});
  }
  return rep;
}

SaksReport verify_corollary2(const Instance& inst, const std::vector<RoutedPath>& paths, std::size_t k,
                             const SaksOptions& options) {
  if (k < 1) fail_input("verify_corollary2: k must be at least 1");
  const std::size_t n = inst.vertex_count();
  const std::size_t r = paths.size();
  std::vector<std::uint8_t> used(n, 0);
  for (const auto& p : paths)
    for (auto v : p.vertices) {
      if (v >= n) fail_input("verify_corollary2: path vertex out of range");
      if (used[v]) fail_input("verify_corollary2: paths are not vertex-disjoint");
      used[v] = 1;
    }
  if (inst.source_attach_union().size() != r || inst.sink_attach_union().size() != r)
    fail_input("verify_corollary2: |f(S)| and |f(T)| must both equal the number of paths");
  check_budget(n, k);
  // Validates the routes once before building copies.
  (void)disjoint_path_code(inst, paths);
  Bundle bundle = iterated_product(
      [&](std::size_t j) { return disjoint_path_code(rename_terminals(inst, std::to_string(j)), paths); }, k);
  return verify_family(bundle, n, r, k, options);
}

std::string format_report_table(const std::vector<SaksReport>& reports) {
  const std::vector<std::string> head{"n", "k", "r", "|V|", "predicted", "rate", "rho", "|f(T)|", "brute-force",
                                      "flow", "status"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    const auto* bad = r.first_failure();
    rows.push_back({std::to_string(r.n), std::to_string(r.k), std::to_string(r.r), std::to_string(r.vertices),
                    std::to_string(r.predicted), std::to_string(r.coding_rate), std::to_string(r.rho),
                    std::to_string(r.upper_bound_cut.size()),
                    r.brute_force_cut ? std::to_string(*r.brute_force_cut) : "-",
                    r.flow_value ? format_rational(*r.flow_value) : "not computed",
                    bad ? "FAIL " + bad->name : "ok"});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::ostringstream line;
    for (std::size_t c = 0; c + 1 < row.size(); ++c) line << std::setw(static_cast<int>(width[c])) << row[c] << "  ";
    line << row.back();
    out << line.str() << "\n";
  };
  emit(head);
  for (const auto& row : rows) emit(row);
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      if (!c.ok) out << "  (" << r.n << "," << r.k << ") " << c.name << ": " << c.detail << "\n";
  return out.str();
}

}  // namespace mcnc
