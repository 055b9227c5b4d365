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
#include <optional>
#include <span>
#include <vector>

#include "mcnc/label.hpp"

namespace mcnc {

using Residue = std::uint32_t;
using RowVector = std::vector<Residue>;

/// Arithmetic modulo a prime q < 2^31.
class PrimeField {
 public:
  /// Throws InvalidInput unless `modulus` is prime (checked by trial division).
  explicit PrimeField(std::uint32_t modulus = 2);

  std::uint32_t modulus() const { return q_; }

  Residue reduce(std::int64_t value) const {
    std::int64_t r = value % static_cast<std::int64_t>(q_);
    return static_cast<Residue>(r < 0 ? r + q_ : r);
  }
  Residue add(Residue a, Residue b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= q_ ? s - q_ : s);
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((std::uint64_t{a} * b) % q_);
  }
  /// Multiplicative inverse; `a` must be nonzero.
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }
  friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.q_ != b.q_; }

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over a prime field, with optional row and column labels.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  /// Entries are reduced into [0, q).
  static FieldMatrix from_rows(PrimeField field,
                               const std::vector<std::vector<std::int64_t>>& rows);
  static FieldMatrix row_vector(PrimeField field, std::span<const Residue> entries);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Throws InvalidInput if `value` is not a residue.
  void set(std::size_t r, std::size_t c, Residue value);
  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::optional<std::vector<Label>>& row_labels() const { return row_labels_; }
  const std::optional<std::vector<Label>>& col_labels() const { return col_labels_; }
  /// Labels must match the dimension and be pairwise distinct.
  void set_row_labels(std::vector<Label> labels);
  void set_col_labels(std::vector<Label> labels);

  FieldMatrix transpose() const;
  FieldMatrix select_rows(std::span<const std::size_t> indices) const;
  FieldMatrix select_cols(std::span<const std::size_t> indices) const;
  bool is_zero() const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
  std::optional<std::vector<Label>> row_labels_;
  std::optional<std::vector<Label>> col_labels_;
};

/// Block matrix with blocks a[i,j]*b. Labels, when both operands carry them,
/// become pairs in a-major order.
FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);
/// Concatenates column blocks left to right.
FieldMatrix hstack(const std::vector<FieldMatrix>& blocks);
/// a * m for a row vector a of length m.rows().
RowVector vec_mul(const FieldMatrix& m, std::span<const Residue> a);
RowVector kron_vec(const PrimeField& f, std::span<const Residue> a, std::span<const Residue> b);

/// Rank by Gaussian elimination (first-nonzero pivot, top to bottom, left to right).
std::size_t rank(const FieldMatrix& m);

/// Columns form a basis of {x : m x = 0}: m.cols() rows, m.cols() - rank(m) columns.
/// Basis vector j has a 1 at the j-th free column of the reduced echelon form.
FieldMatrix nullspace(const FieldMatrix& m);

/// Solves x * m = target for a row vector x. Returns nullopt when inconsistent.
std::optional<RowVector> solve_left(const FieldMatrix& m, std::span<const Residue> target);

struct Pivot {
  enum class Mode { Row, Column };
  Mode mode;
  std::size_t index;

  static Pivot row(std::size_t r) { return {Mode::Row, r}; }
  static Pivot column(std::size_t c) { return {Mode::Column, c}; }
};

/// Finds a row vector a with supp(a) within `row_support`, (a*l)[c] = 0 for every
/// c in `zero_cols`, and the pivot coordinate (a[r] in row mode, (a*l)[c] in
/// column mode) equal to 1. Returns nullopt if none exists. Throws InvalidInput
/// when the pivot lies outside its allowed index set.
std::optional<RowVector> find_support_vector(const FieldMatrix& l,
                                             std::span<const std::size_t> row_support,
                                             std::span<const std::size_t> zero_cols,
                                             Pivot pivot);

/// Row-echelon basis grown one row at a time; tracks the rank of a row set.
class RowSpaceBasis {
 public:
  RowSpaceBasis(PrimeField field, std::size_t width) : field_(field), width_(width) {}

  /// Adds `row` to the span; returns true if the rank increased.
  bool insert(std::span<const Residue> row);
  std::size_t rank() const { return rows_.size(); }

 private:
  PrimeField field_;
  std::size_t width_;
  std::vector<RowVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Indices of nonzero entries.
std::vector<std::size_t> support(std::span<const Residue> v);

/// Sizes of consecutive row and column blocks of a partitioned matrix.
struct BlockPartition {
  std::vector<std::size_t> row_sizes;
  std::vector<std::size_t> col_sizes;
};

/// The block at (i, j) of a partitioned matrix.
FieldMatrix block(const FieldMatrix& m, const BlockPartition& p, std::size_t i, std::size_t j);

/// True when every block strictly above the main block diagonal is zero.
/// Requires as many row blocks as column blocks.
bool is_lower_block_triangular(const FieldMatrix& m, const BlockPartition& p);

/// Sum of ranks of the main diagonal blocks, a lower bound on rank(m) for a
/// lower block triangular matrix.
std::size_t diagonal_rank_sum(const FieldMatrix& m, const BlockPartition& p);

}  // namespace mcnc
