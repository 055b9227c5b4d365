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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcnc/instance.hpp"
#include "mcnc/linalg.hpp"

namespace mcnc {

/// Message (s, j), 1 <= j <= r(s).
struct MessageId {
  std::string source;
  std::uint32_t index = 1;

  std::string to_string() const { return "(" + source + "," + std::to_string(index) + ")"; }
  friend bool operator==(const MessageId&, const MessageId&) = default;
  friend bool operator<(const MessageId& a, const MessageId& b) {
    return a.source != b.source ? a.source < b.source : a.index < b.index;
  }
};

/// Linear network code over a prime field: rates per source, a vertex
/// ordering, and a coding matrix with one row per vertex and one column per message.
class LinearCode {
 public:
  LinearCode() = default;

  /// `ordering` lists vertex indices in schedule order; `messages` labels the
  /// columns of `matrix`. Validates shapes against `inst` (InvalidInput on mismatch).
  LinearCode(const Instance& inst, PrimeField field, std::map<std::string, std::uint32_t> rates,
             std::vector<std::size_t> ordering, FieldMatrix matrix, std::vector<MessageId> messages);

  const PrimeField& field() const { return field_; }
  const std::map<std::string, std::uint32_t>& rates() const { return rates_; }
  std::uint32_t rate_of(const std::string& source) const;
  const std::vector<std::size_t>& ordering() const { return ordering_; }
  /// 0-based position of vertex v in the ordering.
  std::size_t position(std::size_t v) const { return position_.at(v); }
  const FieldMatrix& matrix() const { return matrix_; }
  const std::vector<MessageId>& messages() const { return messages_; }
  std::size_t message_count() const { return messages_.size(); }
  std::optional<std::size_t> message_index(const MessageId& m) const;
  /// Column indices of M(s) for each source in `sources`.
  std::vector<std::size_t> columns_of(const std::vector<std::string>& sources) const;

 private:
  PrimeField field_;
  std::map<std::string, std::uint32_t> rates_;
  std::vector<std::size_t> ordering_;
  std::vector<std::size_t> position_;
  FieldMatrix matrix_;
  std::vector<MessageId> messages_;
  std::map<MessageId, std::size_t> message_index_;
};

struct DecodabilityWitness {
  std::vector<std::size_t> fixed;                   // D, as sorted column indices
  std::map<std::size_t, RowVector> decoders;        // message column -> d_m
  std::size_t rate = 0;                             // |M| - |D|
};

struct CertifiabilityWitness {
  std::vector<VertexSet> cliques;   // K(v) per vertex index
  std::vector<RowVector> encoders;  // a_v valid with respect to K(v)
  std::size_t bound = 0;            // rho
};

struct Provenance;

/// A code together with whatever witnesses are known for it.
struct Bundle {
  Instance instance;
  LinearCode code;
  std::vector<RowVector> encoders;  // a_v valid with respect to N(v)
  std::optional<DecodabilityWitness> decodability;
  std::optional<CertifiabilityWitness> certifiability;
  std::shared_ptr<const Provenance> provenance;
};

/// A violated condition, named by the clause it breaks.
struct CheckFailure {
  std::string clause;
  std::string subject;
  std::string detail;

  std::string to_string() const { return clause + " violated at " + subject + ": " + detail; }
};

namespace clause {
inline constexpr const char* kEncoderSupport = "code condition 1: {v} <= supp(a_v) <= N(v)";
inline constexpr const char* kEncoderMessages = "code condition 2: supp(a_v L) <= M(f^-1(v))";
inline constexpr const char* kEncodingWitness = "code conditions 1+2: no encoding vector a_v exists";
inline constexpr const char* kDecoderSupport = "decodability condition 1: supp(d_m) <= f(t_i)";
inline constexpr const char* kDecoderMessages = "decodability condition 2: {m} <= supp(d_m L) <= {m} u D";
inline constexpr const char* kDecodingWitness = "decodability conditions 1+2: no decoding vector d_m exists";
inline constexpr const char* kCliqueStructure = "certifiability condition 1: K(v) is a clique within N(v)";
inline constexpr const char* kMulticutRank = "certifiability condition 2: rank(L^T I_M) >= rho";
}  // namespace clause

/// N(v) = {v} u {u adjacent to v : u precedes v in the ordering}, sorted.
VertexSet neighborhood(const Instance& inst, const LinearCode& code, std::size_t v);
std::vector<VertexSet> neighborhoods(const Instance& inst, const LinearCode& code);

struct ValidityReport {
  bool ok = false;
  std::vector<RowVector> encoders;
  std::optional<CheckFailure> failure;
};

/// Solves for an encoding vector a_v per vertex, in schedule order, restricted
/// to `support_sets` (N(v) when empty). Stops at the first vertex without one.
ValidityReport check_valid(const Instance& inst, const LinearCode& code,
                           const std::vector<VertexSet>& support_sets = {});

/// Checks supplied encoding vectors against both code conditions.
std::optional<CheckFailure> verify_encoders(const Instance& inst, const LinearCode& code,
                                            const std::vector<RowVector>& encoders,
                                            const std::vector<VertexSet>& support_sets = {});

struct DecodabilityReport {
  bool ok = false;
  DecodabilityWitness witness;
  std::optional<CheckFailure> failure;
};

/// Solves for a decoding vector for every message outside `fixed`.
DecodabilityReport check_decodable(const Instance& inst, const LinearCode& code,
                                   const std::vector<std::size_t>& fixed);

/// Checks supplied decoding vectors against both decodability conditions and
/// the rate identity.
std::optional<CheckFailure> verify_decoders(const Instance& inst, const LinearCode& code,
                                            const DecodabilityWitness& witness);

/// Searches fixed sets D over all subsets of messages (|M| <= 16) and returns
/// the witness with the largest rate.
DecodabilityReport search_decodable(const Instance& inst, const LinearCode& code);

struct CertifyMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t max_search_nodes = 20'000'000;

  static CertifyMode exhaustive() { return {}; }
  static CertifyMode sampled(std::size_t count, std::uint64_t seed) {
    return {Kind::Sampled, count, seed};
  }
};

struct CertifiabilityReport {
  bool ok = false;
  bool exhaustive = false;
  std::size_t search_nodes = 0;   // branch nodes visited (exhaustive) or samples drawn
  std::size_t bound = 0;
  std::optional<CheckFailure> failure;
  std::optional<VertexSet> violating_cut;
  std::size_t violating_rank = 0;
};

/// Clique structure, clique-restricted validity, then rank(L^T I_M) >= rho over
/// multicuts. Exhaustive mode is a complete search over inclusion-minimal
/// multicuts (at most 64 vertices) that skips any partial cut whose rows already
/// reach rank rho; sampled mode checks randomly shrunk minimal cuts only.
CertifiabilityReport check_certifiable(const Instance& inst, const LinearCode& code,
                                       const CertifiabilityWitness& witness, const CertifyMode& mode);

/// rank(L^T I_M): rank of the rows of L indexed by `cut`.
std::size_t cut_rank(const LinearCode& code, const VertexSet& cut);

struct RoutedPath {
  std::size_t commodity = 0;
  std::vector<std::size_t> vertices;  // from f(s_i) to f(t_i)
};

/// One indicator column per path, D empty, predecessor 2-cliques, rho = #paths.
/// Path vertices are scheduled along each path; other vertices last, in index order.
Bundle disjoint_path_code(const Instance& inst, const std::vector<RoutedPath>& paths, PrimeField field = PrimeField(2));

/// The trivial code on `inst`: no messages, a_v = e_v, D empty, K(v) = {v}, rho = 0.
Bundle empty_code(const Instance& inst, PrimeField field = PrimeField(2));

struct SimulationReport {
  struct Node {
    std::size_t vertex;
    Residue transmitted;
    Residue reconstructed;
    bool ok;
  };
  struct Message {
    std::size_t column;
    Residue sent;
    Residue decoded;
    bool ok;
  };
  bool ok = false;
  std::vector<Node> nodes;        // schedule order
  std::vector<Message> messages;  // decoded messages in column order
};

/// Replays the schedule: x = L msg; every node rebuilds x[v] from earlier
/// neighbours and its own source inputs via a_v; every sink recovers each
/// non-fixed message from its attached transmissions and the fixed values.
/// Throws Internal if a witness is inconsistent with the code.
SimulationReport simulate(const Instance& inst, const LinearCode& code, const std::vector<RowVector>& encoders,
                          const DecodabilityWitness& decodability, const RowVector& message_values);

}  // namespace mcnc
