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

#include "mcnc/code.hpp"

#include <algorithm>
#include <set>

#include "cut_oracle.hpp"
#include "mcnc/error.hpp"
#include "mcnc/random.hpp"

namespace mcnc {

namespace {

std::size_t commodity_of_source(const Instance& inst, const std::string& source) {
  for (std::size_t i = 0; i < inst.commodity_count(); ++i)
    if (inst.commodities()[i].source == source) return i;
  fail_input("unknown source '" + source + "'");
}

bool contains(const VertexSet& s, std::size_t v) { return std::binary_search(s.begin(), s.end(), v); }

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& keep) {
  std::vector<bool> in(n, false);
  for (auto k : keep) in[k] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

}  // namespace

LinearCode::LinearCode(const Instance& inst, PrimeField field, std::map<std::string, std::uint32_t> rates,
                       std::vector<std::size_t> ordering, FieldMatrix matrix, std::vector<MessageId> messages)
    : field_(field),
      rates_(std::move(rates)),
      ordering_(std::move(ordering)),
      matrix_(std::move(matrix)),
      messages_(std::move(messages)) {
  const std::size_t n = inst.vertex_count();
  if (matrix_.field() != field_) fail_input("coding matrix field differs from code field");
  if (matrix_.rows() != n) fail_input("coding matrix must have one row per vertex");
  if (matrix_.cols() != messages_.size()) fail_input("coding matrix must have one column per message");

  if (ordering_.size() != n) fail_input("ordering must list every vertex exactly once");
  position_.assign(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t v = ordering_[p];
    if (v >= n || position_[v] != n) fail_input("ordering must list every vertex exactly once");
    position_[v] = p;
  }

  for (const auto& [source, r] : rates_) {
    if (!inst.is_source(source)) fail_input("rate given for unknown source '" + source + "'");
  }
  std::set<MessageId> expected;
  for (const auto& [source, r] : rates_)
    for (std::uint32_t j = 1; j <= r; ++j) expected.insert({source, j});
  for (std::size_t c = 0; c < messages_.size(); ++c) {
    if (!message_index_.emplace(messages_[c], c).second)
      fail_input("duplicate message column " + messages_[c].to_string());
    if (!expected.count(messages_[c])) fail_input("unexpected message column " + messages_[c].to_string());
  }
  if (expected.size() != messages_.size()) fail_input("message columns do not match the rates");

  matrix_.set_row_labels(inst.vertices());
  std::vector<Label> col_labels;
  for (const auto& m : messages_) col_labels.push_back(Label::tuple({Label(m.source), Label(std::int64_t{m.index})}));
  matrix_.set_col_labels(std::move(col_labels));
}

std::uint32_t LinearCode::rate_of(const std::string& source) const {
  auto it = rates_.find(source);
  return it == rates_.end() ? 0 : it->second;
}

std::optional<std::size_t> LinearCode::message_index(const MessageId& m) const {
  auto it = message_index_.find(m);
  if (it == message_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> LinearCode::columns_of(const std::vector<std::string>& sources) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < messages_.size(); ++c)
    if (std::find(sources.begin(), sources.end(), messages_[c].source) != sources.end()) out.push_back(c);
  return out;
}

VertexSet neighborhood(const Instance& inst, const LinearCode& code, std::size_t v) {
  VertexSet out{v};
  for (auto u : inst.neighbors(v))
    if (code.position(u) < code.position(v)) out.push_back(u);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexSet> neighborhoods(const Instance& inst, const LinearCode& code) {
  std::vector<VertexSet> out;
  for (std::size_t v = 0; v < inst.vertex_count(); ++v) out.push_back(neighborhood(inst, code, v));
  return out;
}

ValidityReport check_valid(const Instance& inst, const LinearCode& code, const std::vector<VertexSet>& support_sets) {
  const auto sets = support_sets.empty() ? neighborhoods(inst, code) : support_sets;
  if (sets.size() != inst.vertex_count()) fail_input("check_valid: one support set per vertex required");
  ValidityReport report;
  report.encoders.assign(inst.vertex_count(), {});
  for (auto v : code.ordering()) {
    const auto subject = inst.vertex(v).to_string();
    if (!contains(sets[v], v)) {
      report.failure = CheckFailure{clause::kEncoderSupport, subject, "support set does not contain the vertex"};
      return report;
    }
    const auto own = code.columns_of(inst.sources_at(v));
    const auto zero_cols = complement(code.message_count(), own);
    auto a = find_support_vector(code.matrix(), sets[v], zero_cols, Pivot::row(v));
    if (!a) {
      report.failure = CheckFailure{clause::kEncodingWitness, subject,
                                    "row cannot be formed from " + format_vertex_set(inst, sets[v]) +
                                        " plus its own source messages"};
      return report;
    }
    report.encoders[v] = std::move(*a);
  }
  report.ok = true;
  return report;
}

std::optional<CheckFailure> verify_encoders(const Instance& inst, const LinearCode& code,
                                            const std::vector<RowVector>& encoders,
                                            const std::vector<VertexSet>& support_sets) {
  const std::size_t n = inst.vertex_count();
  const auto sets = support_sets.empty() ? neighborhoods(inst, code) : support_sets;
  if (encoders.size() != n) return CheckFailure{clause::kEncoderSupport, "code", "one encoding vector per vertex required"};
  for (auto v : code.ordering()) {
    const auto subject = inst.vertex(v).to_string();
    const auto& a = encoders[v];
    if (a.size() != n) return CheckFailure{clause::kEncoderSupport, subject, "encoding vector has wrong length"};
    if (a[v] == 0) return CheckFailure{clause::kEncoderSupport, subject, "a_v[v] is zero"};
    for (auto u : support(a))
      if (!contains(sets[v], u))
        return CheckFailure{clause::kEncoderSupport, subject, "a_v uses " + inst.vertex(u).to_string()};
    const auto own = code.columns_of(inst.sources_at(v));
    const auto aL = vec_mul(code.matrix(), a);
    for (auto c : support(aL))
      if (std::find(own.begin(), own.end(), c) == own.end())
        return CheckFailure{clause::kEncoderMessages, subject, "a_v L touches " + code.messages()[c].to_string()};
  }
  return std::nullopt;
}

namespace {

std::optional<std::size_t> validate_fixed(const LinearCode& code, const std::vector<std::size_t>& fixed) {
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i] >= code.message_count()) fail_input("fixed message index out of range");
    if (i && fixed[i] <= fixed[i - 1]) fail_input("fixed message set must be sorted and distinct");
  }
  return std::nullopt;
}

}  // namespace

DecodabilityReport check_decodable(const Instance& inst, const LinearCode& code,
                                   const std::vector<std::size_t>& fixed) {
  validate_fixed(code, fixed);
  DecodabilityReport report;
  report.witness.fixed = fixed;
  for (std::size_t m = 0; m < code.message_count(); ++m) {
    if (std::binary_search(fixed.begin(), fixed.end(), m)) continue;
    const auto& msg = code.messages()[m];
    const auto& sink = inst.commodities()[commodity_of_source(inst, msg.source)].sink;
    std::vector<std::size_t> keep = fixed;
    keep.push_back(m);
    const auto zero_cols = complement(code.message_count(), keep);
    auto d = find_support_vector(code.matrix(), inst.attach(sink), zero_cols, Pivot::column(m));
    if (!d) {
      report.failure = CheckFailure{clause::kDecodingWitness, msg.to_string(),
                                    "sink " + sink + " cannot isolate the message"};
      return report;
    }
    report.witness.decoders.emplace(m, std::move(*d));
  }
  report.witness.rate = code.message_count() - fixed.size();
  report.ok = true;
  return report;
}

std::optional<CheckFailure> verify_decoders(const Instance& inst, const LinearCode& code,
                                            const DecodabilityWitness& witness) {
  validate_fixed(code, witness.fixed);
  const auto& D = witness.fixed;
  if (witness.rate != code.message_count() - D.size())
    return CheckFailure{clause::kDecoderMessages, "rate",
                        "rate " + std::to_string(witness.rate) + " differs from |M| - |D| = " +
                            std::to_string(code.message_count() - D.size())};
  for (std::size_t m = 0; m < code.message_count(); ++m) {
    if (std::binary_search(D.begin(), D.end(), m)) continue;
    const auto& msg = code.messages()[m];
    auto it = witness.decoders.find(m);
    if (it == witness.decoders.end()) return CheckFailure{clause::kDecodingWitness, msg.to_string(), "no decoder supplied"};
    const auto& d = it->second;
    if (d.size() != inst.vertex_count())
      return CheckFailure{clause::kDecoderSupport, msg.to_string(), "decoding vector has wrong length"};
    const auto& sink = inst.commodities()[commodity_of_source(inst, msg.source)].sink;
    for (auto v : support(d))
      if (!contains(inst.attach(sink), v))
        return CheckFailure{clause::kDecoderSupport, msg.to_string(), "d_m uses " + inst.vertex(v).to_string()};
    const auto dL = vec_mul(code.matrix(), d);
    if (dL[m] == 0) return CheckFailure{clause::kDecoderMessages, msg.to_string(), "d_m L misses the message"};
    for (auto c : support(dL))
      if (c != m && !std::binary_search(D.begin(), D.end(), c))
        return CheckFailure{clause::kDecoderMessages, msg.to_string(),
                            "d_m L touches " + code.messages()[c].to_string()};
  }
  return std::nullopt;
}

DecodabilityReport search_decodable(const Instance& inst, const LinearCode& code) {
  const std::size_t k = code.message_count();
  if (k > 16) fail_budget("fixed-set search limited to 16 messages");
  // Smallest |D| first gives the largest rate; within a size, ascending masks.
  for (std::size_t size = 0; size <= k; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<std::size_t> fixed;
      for (std::size_t c = 0; c < k; ++c)
        if (mask & (1u << c)) fixed.push_back(c);
      auto report = check_decodable(inst, code, fixed);
      if (report.ok) return report;
    }
  }
  fail_internal("fixing every message must decode vacuously");
}

std::size_t cut_rank(const LinearCode& code, const VertexSet& cut) {
  RowSpaceBasis basis(code.field(), code.message_count());
  for (auto v : cut) basis.insert(code.matrix().row(v));
  return basis.rank();
}

namespace {

std::optional<CheckFailure> check_cliques(const Instance& inst, const LinearCode& code,
                                          const CertifiabilityWitness& witness) {
  if (witness.cliques.size() != inst.vertex_count())
    return CheckFailure{clause::kCliqueStructure, "witness", "one clique per vertex required"};
  for (std::size_t v = 0; v < inst.vertex_count(); ++v) {
    const auto& k = witness.cliques[v];
    const auto subject = inst.vertex(v).to_string();
    if (!std::is_sorted(k.begin(), k.end()) || std::adjacent_find(k.begin(), k.end()) != k.end())
      return CheckFailure{clause::kCliqueStructure, subject, "clique must be a sorted set"};
    if (!contains(k, v)) return CheckFailure{clause::kCliqueStructure, subject, "clique does not contain the vertex"};
    for (auto u : k) {
      if (u >= inst.vertex_count()) return CheckFailure{clause::kCliqueStructure, subject, "clique member out of range"};
      if (code.position(u) > code.position(v))
        return CheckFailure{clause::kCliqueStructure, subject, inst.vertex(u).to_string() + " comes later in the ordering"};
      for (auto w : k)
        if (u < w && !inst.adjacent(u, w))
          return CheckFailure{clause::kCliqueStructure, subject,
                              inst.vertex(u).to_string() + " and " + inst.vertex(w).to_string() + " are not adjacent"};
    }
  }
  return std::nullopt;
}

struct RankSearch {
  const detail::CutOracle& oracle;
  const LinearCode& code;
  std::size_t bound;
  std::size_t max_nodes;
  std::size_t nodes = 0;
  std::optional<detail::Mask> violation;
  std::size_t violation_rank = 0;

  // Completeness: for a multicut of rank < bound, follow the branch that adds
  // the first vertex of each open path lying in a minimal sub-cut of it.
  void run(detail::Mask chosen, detail::Mask forbidden, const RowSpaceBasis& basis) {
    if (violation) return;
    if (++nodes > max_nodes) fail_budget("certifiability search exceeded " + std::to_string(max_nodes) + " nodes");
    if (basis.rank() >= bound) return;
    auto path = oracle.open_path(chosen);
    if (!path) {
      violation = chosen;
      violation_rank = basis.rank();
      return;
    }
    detail::Mask blocked = forbidden;
    for (auto v : *path) {
      if (!(blocked & detail::bit(v))) {
        RowSpaceBasis next = basis;
        next.insert(code.matrix().row(v));
        run(chosen | detail::bit(v), blocked, next);
        if (violation) return;
      }
      blocked |= detail::bit(v);
    }
  }
};

}  // namespace

CertifiabilityReport check_certifiable(const Instance& inst, const LinearCode& code,
                                       const CertifiabilityWitness& witness, const CertifyMode& mode) {
  CertifiabilityReport report;
  report.bound = witness.bound;
  report.exhaustive = mode.kind == CertifyMode::Kind::Exhaustive;
  if (auto f = check_cliques(inst, code, witness)) {
    report.failure = f;
    return report;
  }
  if (!witness.encoders.empty()) {
    if (auto f = verify_encoders(inst, code, witness.encoders, witness.cliques)) {
      report.failure = f;
      return report;
    }
  } else {
    auto validity = check_valid(inst, code, witness.cliques);
    if (!validity.ok) {
      report.failure = validity.failure;
      return report;
    }
  }

  auto record = [&](const VertexSet& cut, std::size_t r) {
    report.violating_cut = cut;
    report.violating_rank = r;
    report.failure = CheckFailure{clause::kMulticutRank, format_vertex_set(inst, cut),
                                  "rank " + std::to_string(r) + " < " + std::to_string(witness.bound)};
  };

  if (report.exhaustive) {
    detail::CutOracle oracle(inst);
    RankSearch search{oracle, code, witness.bound, mode.max_search_nodes, 0, std::nullopt, 0};
    search.run(0, 0, RowSpaceBasis(code.field(), code.message_count()));
    report.search_nodes = search.nodes;
    if (search.violation) {
      record(detail::from_mask(*search.violation), search.violation_rank);
      return report;
    }
  } else {
    if (mode.samples == 0) fail_input("sampled certifiability needs a positive sample count");
    Rng rng(mode.seed);
    VertexSet all(inst.vertex_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    for (std::size_t s = 0; s < mode.samples; ++s) {
      auto order = all;
      rng.shuffle(order);
      const auto cut = shrink_to_minimal(inst, all, order);
      ++report.search_nodes;
      const auto r = cut_rank(code, cut);
      if (r < witness.bound) {
        record(cut, r);
        return report;
      }
    }
  }
  report.ok = true;
  return report;
}

Bundle disjoint_path_code(const Instance& inst, const std::vector<RoutedPath>& paths, PrimeField field) {
  const std::size_t n = inst.vertex_count();
  std::vector<long> owner(n, -1);
  std::vector<std::size_t> predecessor(n, n);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& path = paths[p];
    if (path.commodity >= inst.commodity_count()) fail_input("path for unknown commodity");
    if (path.vertices.empty()) fail_input("empty path");
    const auto& c = inst.commodities()[path.commodity];
    if (!contains(inst.attach(c.source), path.vertices.front()))
      fail_input("path " + std::to_string(p) + " does not start in f(" + c.source + ")");
    if (!contains(inst.attach(c.sink), path.vertices.back()))
      fail_input("path " + std::to_string(p) + " does not end in f(" + c.sink + ")");
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      const std::size_t v = path.vertices[i];
      if (v >= n) fail_input("path vertex out of range");
      if (owner[v] != -1) fail_input("paths are not vertex-disjoint at " + inst.vertex(v).to_string());
      owner[v] = static_cast<long>(p);
      if (i > 0) {
        if (!inst.adjacent(path.vertices[i - 1], v))
          fail_input("path " + std::to_string(p) + " uses a non-edge at " + inst.vertex(v).to_string());
        predecessor[v] = path.vertices[i - 1];
      }
    }
  }

  std::map<std::string, std::uint32_t> rates;
  for (const auto& c : inst.commodities()) rates[c.source] = 0;
  std::vector<MessageId> messages;
  FieldMatrix matrix(field, n, paths.size());
  std::vector<std::size_t> ordering;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& source = inst.commodities()[paths[p].commodity].source;
    messages.push_back({source, ++rates[source]});
    for (auto v : paths[p].vertices) {
      matrix.set(v, p, 1);
      ordering.push_back(v);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (owner[v] == -1) ordering.push_back(v);

  Bundle b{inst, LinearCode(inst, field, rates, ordering, std::move(matrix), std::move(messages)), {}, {}, {}, {}};

  CertifiabilityWitness cert;
  cert.bound = paths.size();
  for (std::size_t v = 0; v < n; ++v) {
    RowVector a(n, 0);
    a[v] = 1;
    VertexSet clique{v};
    if (predecessor[v] != n) {
      a[predecessor[v]] = field.neg(1);
      clique.push_back(predecessor[v]);
      std::sort(clique.begin(), clique.end());
    }
    cert.encoders.push_back(std::move(a));
    cert.cliques.push_back(std::move(clique));
  }
  b.encoders = cert.encoders;
  b.certifiability = std::move(cert);

  DecodabilityWitness dec;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    RowVector d(n, 0);
    d[paths[p].vertices.back()] = 1;
    dec.decoders.emplace(p, std::move(d));
  }
  dec.rate = paths.size();
  b.decodability = std::move(dec);
  return b;
}

Bundle empty_code(const Instance& inst, PrimeField field) {
  return disjoint_path_code(inst, {}, field);
}

SimulationReport simulate(const Instance& inst, const LinearCode& code, const std::vector<RowVector>& encoders,
                          const DecodabilityWitness& decodability, const RowVector& message_values) {
  const auto& f = code.field();
  const auto& L = code.matrix();
  const std::size_t n = inst.vertex_count();
  if (message_values.size() != code.message_count()) fail_input("simulate: one value per message required");
  for (auto x : message_values)
    if (x >= f.modulus()) fail_input("simulate: message value outside the field");
  if (encoders.size() != n) fail_internal("simulate: encoder count mismatch");

  RowVector truth(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < L.cols(); ++c) acc = (acc + std::uint64_t{L.at(v, c)} * message_values[c]) % f.modulus();
    truth[v] = static_cast<Residue>(acc);
  }

  SimulationReport report;
  report.ok = true;
  RowVector sent(n, 0);
  std::vector<bool> done(n, false);
  for (auto v : code.ordering()) {
    const auto& a = encoders[v];
    if (a.size() != n || a[v] == 0) fail_internal("simulate: encoder of " + inst.vertex(v).to_string() + " has zero pivot");
    const auto own = code.columns_of(inst.sources_at(v));
    const auto aL = vec_mul(L, a);
    Residue acc = 0;
    for (auto c : support(aL)) {
      if (std::find(own.begin(), own.end(), c) == own.end())
        fail_internal("simulate: encoder of " + inst.vertex(v).to_string() + " needs a foreign message");
      acc = f.add(acc, f.mul(aL[c], message_values[c]));
    }
    for (auto w : support(a)) {
      if (w == v) continue;
      if (!done[w]) fail_internal("simulate: " + inst.vertex(v).to_string() + " depends on a later vertex");
      acc = f.sub(acc, f.mul(a[w], sent[w]));
    }
    sent[v] = f.mul(acc, f.inv(a[v]));
    done[v] = true;
    const bool ok = sent[v] == truth[v];
    report.ok = report.ok && ok;
    report.nodes.push_back({v, truth[v], sent[v], ok});
  }

  const auto& D = decodability.fixed;
  for (const auto& [m, d] : decodability.decoders) {
    const auto& msg = code.messages().at(m);
    const auto& sink = inst.commodities()[commodity_of_source(inst, msg.source)].sink;
    const auto& attached = inst.attach(sink);
    Residue acc = 0;
    for (auto v : support(d)) {
      if (!contains(attached, v)) fail_internal("simulate: decoder for " + msg.to_string() + " reads outside its sink");
      acc = f.add(acc, f.mul(d[v], sent[v]));
    }
    const auto dL = vec_mul(L, d);
    if (dL[m] == 0) fail_internal("simulate: decoder for " + msg.to_string() + " misses the message");
    for (auto c : support(dL)) {
      if (c == m) continue;
      if (!std::binary_search(D.begin(), D.end(), c))
        fail_internal("simulate: decoder for " + msg.to_string() + " mixes in a free message");
      acc = f.sub(acc, f.mul(dL[c], message_values[c]));
    }
    const Residue decoded = f.mul(acc, f.inv(dL[m]));
    const bool ok = decoded == message_values[m];
    report.ok = report.ok && ok;
    report.messages.push_back({m, message_values[m], decoded, ok});
  }
  return report;
}

}  // namespace mcnc
