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

#include "mcnc/product.hpp"

#include <algorithm>
#include <map>

#include "mcnc/error.hpp"

namespace mcnc {

namespace {

const PrimeField& common_field(const Bundle& b1, const Bundle& b2) {
  if (b1.code.field() != b2.code.field()) fail_input("product: factor codes use different fields");
  return b1.code.field();
}

bool contains(const VertexSet& s, std::size_t v) { return std::binary_search(s.begin(), s.end(), v); }

RowVector unit(std::size_t n, std::size_t i) {
  RowVector e(n, 0);
  e[i] = 1;
  return e;
}

// Vertices sorted by decreasing schedule position.
std::vector<std::size_t> reverse_schedule(const LinearCode& code) {
  return {code.ordering().rbegin(), code.ordering().rend()};
}

}  // namespace

ProductLayout product_layout(const Bundle& b1, const Bundle& b2) {
  return {b1.instance.vertex_count(), b2.instance.vertex_count(), b1.code.message_count(), b2.code.message_count()};
}

LinearCode product_code(const Bundle& b1, const Bundle& b2, const Instance& product) {
  const auto& field = common_field(b1, b2);
  const auto lay = product_layout(b1, b2);
  if (product.vertex_count() != lay.n1 * lay.n2) fail_input("product_code: instance is not the product of the factors");

  const FieldMatrix left = kron(FieldMatrix::identity(field, lay.n1), b2.code.matrix());
  const FieldMatrix right = kron(b1.code.matrix(), FieldMatrix::identity(field, lay.n2));
  FieldMatrix matrix = hstack({left, right});
  if (matrix.rows() == 0 && lay.n1 * lay.n2 == 0) matrix = FieldMatrix(field, 0, 0);
  if (matrix.cols() != lay.n1 * lay.m2 + lay.m1 * lay.n2) fail_internal("product_code: unexpected column count");

  std::map<std::string, std::uint32_t> rates;
  for (const auto& [s, r] : b1.code.rates()) rates[s] = r * static_cast<std::uint32_t>(lay.n2);
  for (const auto& [s, r] : b2.code.rates()) rates[s] = r * static_cast<std::uint32_t>(lay.n1);

  // Message (s, j): j counts the columns of source s in column order.
  std::map<std::string, std::uint32_t> next;
  std::vector<MessageId> messages;
  for (std::size_t u = 0; u < lay.n1; ++u)
    for (std::size_t c2 = 0; c2 < lay.m2; ++c2) {
      const auto& s = b2.code.messages()[c2].source;
      messages.push_back({s, ++next[s]});
    }
  for (std::size_t c1 = 0; c1 < lay.m1; ++c1)
    for (std::size_t v = 0; v < lay.n2; ++v) {
      const auto& s = b1.code.messages()[c1].source;
      messages.push_back({s, ++next[s]});
    }

  std::vector<std::size_t> ordering;
  for (auto u : b1.code.ordering())
    for (auto v : b2.code.ordering()) ordering.push_back(lay.vertex(u, v));

  return LinearCode(product, field, std::move(rates), std::move(ordering), std::move(matrix), std::move(messages));
}

std::vector<RowVector> product_encoders(const PrimeField& field, const std::vector<RowVector>& e1,
                                        const std::vector<RowVector>& e2) {
  std::vector<RowVector> out;
  out.reserve(e1.size() * e2.size());
  for (const auto& a : e1)
    for (const auto& b : e2) out.push_back(kron_vec(field, a, b));
  return out;
}

std::size_t product_rate(const Bundle& b1, const Bundle& b2) {
  if (!b1.decodability || !b2.decodability) fail_input("product_rate: both factors need decodability witnesses");
  const std::size_t n1 = b1.instance.vertex_count(), n2 = b2.instance.vertex_count();
  const std::size_t p1 = b1.decodability->rate, p2 = b2.decodability->rate;
  const std::size_t sinks2 = b2.instance.sink_attach_union().size();
  return n1 * p2 + n2 * p1 - p1 * sinks2;
}

std::size_t product_bound(const Bundle& b1, const Bundle& b2) {
  if (!b1.certifiability || !b2.certifiability)
    fail_input("product_bound: both factors need certifiability witnesses");
  const std::size_t n1 = b1.instance.vertex_count(), n2 = b2.instance.vertex_count();
  const std::size_t r1 = b1.certifiability->bound, r2 = b2.certifiability->bound;
  const std::size_t sources2 = b2.instance.source_attach_union().size();
  return n1 * r2 + n2 * r1 - r1 * sources2;
}

DecodabilityWitness product_decodability(const Bundle& b1, const Bundle& b2, const LinearCode& code) {
  if (!b1.decodability || !b2.decodability)
    fail_input("product_decodability: both factors need decodability witnesses");
  const auto& field = common_field(b1, b2);
  const auto lay = product_layout(b1, b2);
  const auto& w1 = *b1.decodability;
  const auto& w2 = *b2.decodability;
  const auto sinks2 = b2.instance.sink_attach_union();

  std::vector<std::size_t> fixed;
  for (auto c1 : w1.fixed)
    for (std::size_t v = 0; v < lay.n2; ++v) fixed.push_back(lay.second_block_column(c1, v));
  for (std::size_t u = 0; u < lay.n1; ++u)
    for (auto c2 : w2.fixed) fixed.push_back(lay.first_block_column(u, c2));
  for (std::size_t c1 = 0; c1 < lay.m1; ++c1)
    for (auto v : sinks2) fixed.push_back(lay.second_block_column(c1, v));
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  auto in_fixed = [&](std::size_t c) { return std::binary_search(fixed.begin(), fixed.end(), c); };

  DecodabilityWitness out;
  out.fixed = fixed;

  // Messages (u, m2) with m2 free: e_u (x) d2.
  for (std::size_t u = 0; u < lay.n1; ++u)
    for (const auto& [c2, d2] : w2.decoders) {
      out.decoders.emplace(lay.first_block_column(u, c2), kron_vec(field, unit(lay.n1, u), d2));
    }

  // Messages (m1, v) with m1 free and v outside f2(T2): d1 (x) e_v, then cancel
  // the part of d L on first-block columns with decoders of those columns.
  const auto& L = code.matrix();
  for (const auto& [c1, d1] : w1.decoders) {
    for (std::size_t v = 0; v < lay.n2; ++v) {
      const std::size_t column = lay.second_block_column(c1, v);
      if (in_fixed(column)) continue;
      RowVector d = kron_vec(field, d1, unit(lay.n2, v));
      const RowVector dL = vec_mul(L, d);

      std::vector<std::size_t> offending;
      for (std::size_t c = 0; c < lay.n1 * lay.m2; ++c)
        if (!in_fixed(c) && dL[c] != 0) offending.push_back(c);
      if (!offending.empty()) {
        // Q = decoders of (u, m2) with u in supp(d1), a subset of f1(t_i).
        std::vector<std::size_t> q_columns;
        for (auto u : support(d1))
          for (const auto& [c2, d2] : w2.decoders) q_columns.push_back(lay.first_block_column(u, c2));
        FieldMatrix system(field, q_columns.size(), offending.size());
        for (std::size_t i = 0; i < q_columns.size(); ++i) {
          const RowVector qL = vec_mul(L, out.decoders.at(q_columns[i]));
          for (std::size_t j = 0; j < offending.size(); ++j) system.set(i, j, qL[offending[j]]);
        }
        RowVector target(offending.size());
        for (std::size_t j = 0; j < offending.size(); ++j) target[j] = dL[offending[j]];
        auto coeffs = solve_left(system, target);
        if (!coeffs)
          fail_internal("product_decodability: correction for " + code.messages()[column].to_string() +
                        " is unsolvable (" + std::to_string(offending.size()) + " offending columns, " +
                        std::to_string(q_columns.size()) + " correction vectors)");
        for (std::size_t i = 0; i < q_columns.size(); ++i) {
          if ((*coeffs)[i] == 0) continue;
          const auto& q = out.decoders.at(q_columns[i]);
          for (std::size_t x = 0; x < d.size(); ++x) d[x] = field.sub(d[x], field.mul((*coeffs)[i], q[x]));
        }
      }
      out.decoders.emplace(column, std::move(d));
    }
  }
  out.rate = code.message_count() - fixed.size();
  if (out.decoders.size() != out.rate) fail_internal("product_decodability: decoder count differs from the rate");
  return out;
}

CertifiabilityWitness product_certifiability(const Bundle& b1, const Bundle& b2) {
  if (!b1.certifiability || !b2.certifiability)
    fail_input("product_certifiability: both factors need certifiability witnesses");
  const auto& field = common_field(b1, b2);
  const auto lay = product_layout(b1, b2);
  const auto& c1 = *b1.certifiability;
  const auto& c2 = *b2.certifiability;
  CertifiabilityWitness out;
  for (std::size_t u = 0; u < lay.n1; ++u)
    for (std::size_t v = 0; v < lay.n2; ++v) {
      VertexSet clique;
      for (auto a : c1.cliques.at(u))
        for (auto b : c2.cliques.at(v)) clique.push_back(lay.vertex(a, b));
      out.cliques.push_back(std::move(clique));
    }
  out.encoders = product_encoders(field, c1.encoders, c2.encoders);
  out.bound = product_bound(b1, b2);
  return out;
}

Bundle product_bundle(std::shared_ptr<const Bundle> b1, std::shared_ptr<const Bundle> b2, std::string left_name,
                      std::string right_name) {
  Instance inst = strong_product(b1->instance, b2->instance);
  LinearCode code = product_code(*b1, *b2, inst);
  Bundle out{inst, code, {}, {}, {}, {}};
  out.encoders = product_encoders(code.field(), b1->encoders, b2->encoders);
  if (b1->decodability && b2->decodability) out.decodability = product_decodability(*b1, *b2, out.code);
  if (b1->certifiability && b2->certifiability) out.certifiability = product_certifiability(*b1, *b2);
  out.provenance = std::make_shared<Provenance>(Provenance{std::move(b1), std::move(b2), std::move(left_name),
                                                           std::move(right_name)});
  return out;
}

namespace {

void check_projection_inputs(const Instance& product, const Instance& n1, const Instance& n2, const VertexSet& cut,
                             const Instance& factor, std::size_t w, const VertexSet& clique) {
  if (product.vertex_count() != n1.vertex_count() * n2.vertex_count())
    fail_input("project_multicut: instance is not the product of the factors");
  if (!is_multicut(product, cut)) fail_input("project_multicut: input is not a multicut of the product");
  if (w >= factor.vertex_count() || !contains(clique, w)) fail_input("project_multicut: clique must contain the vertex");
  for (auto a : clique)
    for (auto b : clique)
      if (a != b && !factor.adjacent(a, b)) fail_input("project_multicut: clique members are not adjacent");
}

}  // namespace

Projection project_multicut(const Instance& product, const Instance& n1, const Instance& n2, const VertexSet& cut,
                            std::size_t u, const VertexSet& clique) {
  check_projection_inputs(product, n1, n2, cut, n1, u, clique);
  const std::size_t n2v = n2.vertex_count();
  Projection p;
  for (std::size_t v = 0; v < n2v; ++v) {
    if (std::all_of(clique.begin(), clique.end(), [&](std::size_t a) { return contains(cut, a * n2v + v); }))
      p.cut.push_back(v);
  }
  p.is_multicut = is_multicut(n2, p.cut);
  return p;
}

Projection project_multicut_first(const Instance& product, const Instance& n1, const Instance& n2,
                                  const VertexSet& cut, std::size_t v, const VertexSet& clique) {
  check_projection_inputs(product, n1, n2, cut, n2, v, clique);
  const std::size_t n2v = n2.vertex_count();
  Projection p;
  for (std::size_t u = 0; u < n1.vertex_count(); ++u) {
    if (std::all_of(clique.begin(), clique.end(), [&](std::size_t b) { return contains(cut, u * n2v + b); }))
      p.cut.push_back(u);
  }
  p.is_multicut = is_multicut(n1, p.cut);
  return p;
}

BCertificate build_b_certificate(const Bundle& bundle, const VertexSet& cut) {
  if (!bundle.provenance || !bundle.provenance->left || !bundle.provenance->right)
    fail_input("build_b_certificate: bundle has no factor provenance");
  if (!bundle.certifiability) fail_input("build_b_certificate: bundle has no certifiability witness");
  const Bundle& b1 = *bundle.provenance->left;
  const Bundle& b2 = *bundle.provenance->right;
  if (!b1.certifiability || !b2.certifiability)
    fail_input("build_b_certificate: factors need certifiability witnesses");
  if (!is_multicut(bundle.instance, cut)) fail_input("build_b_certificate: input is not a multicut");

  const auto& field = bundle.code.field();
  const auto lay = product_layout(b1, b2);
  const auto& k1 = *b1.certifiability;
  const auto& k2 = *b2.certifiability;
  const auto sources2 = b2.instance.source_attach_union();
  const std::size_t n = lay.n1 * lay.n2;

  BCertificate cert;
  cert.bound = bundle.certifiability->bound;

  const auto u_order = reverse_schedule(b1.code);
  std::vector<std::size_t> v_order;
  for (auto v : reverse_schedule(b2.code))
    if (!contains(sources2, v)) v_order.push_back(v);

  std::vector<FieldMatrix> blocks;
  std::vector<std::size_t> col_sizes;
  for (auto u : u_order) {
    auto proj = project_multicut(bundle.instance, b1.instance, b2.instance, cut, u, k1.cliques[u]);
    if (!proj.is_multicut)
      cert.violations.push_back("projection for " + b1.instance.vertex(u).to_string() + " is not a multicut");
    FieldMatrix blk(field, n, proj.cut.size());
    for (std::size_t j = 0; j < proj.cut.size(); ++j)
      for (auto a : support(k1.encoders[u])) blk.set(lay.vertex(a, proj.cut[j]), j, k1.encoders[u][a]);
    col_sizes.push_back(blk.cols());
    blocks.push_back(std::move(blk));
  }
  for (auto v : v_order) {
    auto proj = project_multicut_first(bundle.instance, b1.instance, b2.instance, cut, v, k2.cliques[v]);
    if (!proj.is_multicut)
      cert.violations.push_back("projection for " + b2.instance.vertex(v).to_string() + " is not a multicut");
    FieldMatrix blk(field, n, proj.cut.size());
    for (std::size_t j = 0; j < proj.cut.size(); ++j)
      for (auto b : support(k2.encoders[v])) blk.set(lay.vertex(proj.cut[j], b), j, k2.encoders[v][b]);
    col_sizes.push_back(blk.cols());
    blocks.push_back(std::move(blk));
  }
  std::size_t total_cols = 0;
  for (auto c : col_sizes) total_cols += c;
  cert.b = total_cols ? hstack(blocks) : FieldMatrix(field, n, 0);

  cert.within_cut = true;
  for (std::size_t r = 0; r < cert.b.rows(); ++r) {
    const auto row = cert.b.row(r);
    if (std::any_of(row.begin(), row.end(), [](Residue x) { return x != 0; }) && !contains(cut, r)) {
      cert.within_cut = false;
      cert.violations.push_back("B uses vertex " + bundle.instance.vertex(r).to_string() + " outside the cut");
    }
  }

  cert.ltb = multiply(bundle.code.matrix().transpose(), cert.b);
  cert.rank = rank(cert.ltb);

  // Row blocks of L^T: messages (u, m2) for each u, then (m1, v) for each v.
  std::vector<std::size_t> rows;
  std::vector<std::size_t> row_sizes;
  for (auto u : u_order) {
    for (std::size_t c2 = 0; c2 < lay.m2; ++c2) rows.push_back(lay.first_block_column(u, c2));
    row_sizes.push_back(lay.m2);
  }
  for (auto v : v_order) {
    for (std::size_t c1 = 0; c1 < lay.m1; ++c1) rows.push_back(lay.second_block_column(c1, v));
    row_sizes.push_back(lay.m1);
  }
  cert.ordered = cert.ltb.select_rows(rows);
  cert.partition = {row_sizes, col_sizes};

  const std::size_t blocks_count = row_sizes.size();
  const std::size_t split = u_order.size();
  auto name = [&](std::size_t i) {
    return i < split ? b1.instance.vertex(u_order[i]).to_string() : b2.instance.vertex(v_order[i - split]).to_string();
  };
  for (std::size_t i = 0; i < blocks_count; ++i)
    for (std::size_t j = i + 1; j < blocks_count; ++j) {
      if (block(cert.ordered, cert.partition, i, j).is_zero()) continue;
      const char* kind = i < split && j < split ? "[u,u']" : (i >= split && j >= split ? "[v,v']" : "[u,v]");
      cert.violations.push_back(std::string("nonzero ") + kind + " block above the diagonal at (" + name(i) + ", " +
                                name(j) + ")");
    }
  cert.lower_triangular = is_lower_block_triangular(cert.ordered, cert.partition);

  for (std::size_t i = 0; i < blocks_count; ++i) {
    const std::size_t r = rank(block(cert.ordered, cert.partition, i, i));
    cert.diagonal_rank_sum += r;
    const std::size_t want = i < split ? k2.bound : k1.bound;
    if (r < want)
      cert.violations.push_back("diagonal block " + name(i) + " has rank " + std::to_string(r) + " < " +
                                std::to_string(want));
  }
  return cert;
}

}  // namespace mcnc
