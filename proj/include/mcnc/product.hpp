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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcnc/code.hpp"

namespace mcnc {

/// The two factor bundles a product bundle was built from.
struct Provenance {
  std::shared_ptr<const Bundle> left;
  std::shared_ptr<const Bundle> right;
  std::string left_name;
  std::string right_name;
};

/// Index arithmetic of the product code: vertex (u, v) is row u*n2 + v; the
/// columns are the block (V1 x M2) followed by the block (M1 x V2).
struct ProductLayout {
  std::size_t n1 = 0, n2 = 0;  // vertex counts
  std::size_t m1 = 0, m2 = 0;  // message counts

  std::size_t vertex(std::size_t u, std::size_t v) const { return u * n2 + v; }
  std::size_t first_block_column(std::size_t u, std::size_t c2) const { return u * m2 + c2; }
  std::size_t second_block_column(std::size_t c1, std::size_t v) const { return n1 * m2 + c1 * n2 + v; }
};

ProductLayout product_layout(const Bundle& b1, const Bundle& b2);

/// Coding matrix [I_{n1} (x) L2, L1 (x) I_{n2}], rates r1(s) n2 and r2(s) n1,
/// lexicographic schedule by (position in pi1, position in pi2).
LinearCode product_code(const Bundle& b1, const Bundle& b2, const Instance& product);

/// a_(u,v) = a_u (x) a_v for every vertex pair.
std::vector<RowVector> product_encoders(const PrimeField& field, const std::vector<RowVector>& e1,
                                        const std::vector<RowVector>& e2);

/// n1 p2 + n2 p1 - p1 |f2(T2)|.
std::size_t product_rate(const Bundle& b1, const Bundle& b2);
/// n1 rho2 + n2 rho1 - rho1 |f2(S2)|.
std::size_t product_bound(const Bundle& b1, const Bundle& b2);

/// Fixed set D = (D1 x V2) u (V1 x D2) u (M1 x f2(T2)). Messages (u, m2) decode
/// with e_u (x) d2; messages (m1, v) start from d1 (x) e_v and are corrected by
/// the decoders of the (u, m2) messages with u in f1(t_i). Throws Internal if
/// the correction system has no solution.
DecodabilityWitness product_decodability(const Bundle& b1, const Bundle& b2, const LinearCode& code);

/// Cliques K1(u) x K2(v), encoders a_u (x) a_v, bound from product_bound.
CertifiabilityWitness product_certifiability(const Bundle& b1, const Bundle& b2);

/// Full product bundle with every witness both factors support.
Bundle product_bundle(std::shared_ptr<const Bundle> b1, std::shared_ptr<const Bundle> b2,
                      std::string left_name = "left", std::string right_name = "right");

struct Projection {
  VertexSet cut;  // in the factor's vertex indices
  bool is_multicut = false;
};

/// M_u = {v : K1(u) x {v} within M}, a cut of the second factor. Throws
/// InvalidInput when `cut` is not a multicut of the product or `clique` is not
/// a clique containing u.
Projection project_multicut(const Instance& product, const Instance& n1, const Instance& n2, const VertexSet& cut,
                            std::size_t u, const VertexSet& clique);

/// M_v = {u : {u} x K2(v) within M}, a cut of the first factor.
Projection project_multicut_first(const Instance& product, const Instance& n1, const Instance& n2,
                                  const VertexSet& cut, std::size_t v, const VertexSet& clique);

struct BCertificate {
  FieldMatrix b;               // columns: a_u^T (x) I_{M_u}, then I_{M_v} (x) a_v^T
  FieldMatrix ltb;             // L^T B
  FieldMatrix ordered;         // rows/columns of L^T B in block order: V1 by -pi1, then V2 \ f2(S2) by -pi2
  BlockPartition partition;    // block sizes of `ordered`
  std::size_t rank = 0;        // rank(L^T B)
  std::size_t diagonal_rank_sum = 0;
  std::size_t bound = 0;       // rho of the product bundle
  bool within_cut = false;     // every nonzero row of B lies in M
  bool lower_triangular = false;
  std::vector<std::string> violations;

  bool ok() const {
    return violations.empty() && within_cut && lower_triangular && rank >= diagonal_rank_sum &&
           diagonal_rank_sum >= bound;
  }
};

/// Rank certificate for one multicut of a product bundle with certifiable factors.
/// Throws InvalidInput if `cut` is not a multicut or provenance is missing.
BCertificate build_b_certificate(const Bundle& bundle, const VertexSet& cut);

}  // namespace mcnc
