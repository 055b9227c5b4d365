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

#include "mcnc/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "mcnc/error.hpp"

namespace mcnc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : q_(modulus) {
  if (modulus >= (1u << 31)) fail_input("field modulus must be below 2^31");
  if (!is_prime(modulus)) fail_input("field modulus " + std::to_string(modulus) + " is not prime");
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) fail_internal("inverse of zero");
  // Fermat: a^(q-2)
  Residue result = 1, base = a;
  for (std::uint32_t e = q_ - 2; e; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(PrimeField field,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FieldMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail_input("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = field.reduce(rows[r][c]);
  }
  return m;
}

FieldMatrix FieldMatrix::row_vector(PrimeField field, std::span<const Residue> entries) {
  FieldMatrix m(field, 1, entries.size());
  for (std::size_t c = 0; c < entries.size(); ++c) m.set(0, c, entries[c]);
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, Residue value) {
  if (value >= field_.modulus()) fail_input("matrix entry out of field range");
  data_[r * cols_ + c] = value;
}

namespace {

void check_labels(const std::vector<Label>& labels, std::size_t expected, const char* what) {
  if (labels.size() != expected) fail_input(std::string(what) + " label count mismatch");
  std::set<Label> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) fail_input(std::string("duplicate ") + what + " labels");
}

}  // namespace

void FieldMatrix::set_row_labels(std::vector<Label> labels) {
  check_labels(labels, rows_, "row");
  row_labels_ = std::move(labels);
}

void FieldMatrix::set_col_labels(std::vector<Label> labels) {
  check_labels(labels, cols_, "column");
  col_labels_ = std::move(labels);
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  t.row_labels_ = col_labels_;
  t.col_labels_ = row_labels_;
  return t;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> indices) const {
  FieldMatrix s(field_, indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::copy_n(data_.begin() + indices[i] * cols_, cols_, s.data_.begin() + i * cols_);
  }
  if (row_labels_) {
    std::vector<Label> labels;
    for (auto i : indices) labels.push_back((*row_labels_)[i]);
    s.set_row_labels(std::move(labels));
  }
  s.col_labels_ = col_labels_;
  return s;
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> indices) const {
  FieldMatrix s(field_, rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < indices.size(); ++j) s.data_[r * s.cols_ + j] = at(r, indices[j]);
  if (col_labels_) {
    std::vector<Label> labels;
    for (auto i : indices) labels.push_back((*col_labels_)[i]);
    s.set_col_labels(std::move(labels));
  }
  s.row_labels_ = row_labels_;
  return s;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue e) { return e == 0; });
}

namespace {

std::vector<Label> pair_labels(const std::vector<Label>& a, const std::vector<Label>& b) {
  std::vector<Label> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(Label::tuple({x, y}));
  return out;
}

}  // namespace

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.field() != b.field()) fail_input("kron: field mismatch");
  const auto& f = a.field();
  FieldMatrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue s = a.at(i, j);
      if (s == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k.set(i * b.rows() + p, j * b.cols() + q, f.mul(s, b.at(p, q)));
    }
  if (a.row_labels() && b.row_labels()) k.set_row_labels(pair_labels(*a.row_labels(), *b.row_labels()));
  if (a.col_labels() && b.col_labels()) k.set_col_labels(pair_labels(*a.col_labels(), *b.col_labels()));
  return k;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.field() != b.field()) fail_input("multiply: field mismatch");
  if (a.cols() != b.rows()) fail_input("multiply: dimension mismatch");
  const auto& f = a.field();
  const std::uint64_t q = f.modulus();
  FieldMatrix c(f, a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t s = a.at(i, k);
      if (s == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + s * b.at(k, j)) % q;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c.set(i, j, static_cast<Residue>(acc[j]));
  }
  if (a.row_labels()) c.set_row_labels(*a.row_labels());
  if (b.col_labels()) c.set_col_labels(*b.col_labels());
  return c;
}

FieldMatrix hstack(const std::vector<FieldMatrix>& blocks) {
  if (blocks.empty()) return {};
  const auto& f = blocks.front().field();
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.field() != f || b.rows() != rows) fail_input("hstack: incompatible blocks");
    cols += b.cols();
  }
  FieldMatrix out(f, rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, offset + c, b.at(r, c));
    offset += b.cols();
  }
  return out;
}

RowVector vec_mul(const FieldMatrix& m, std::span<const Residue> a) {
  if (a.size() != m.rows()) fail_input("vec_mul: dimension mismatch");
  const std::uint64_t q = m.field().modulus();
  std::vector<std::uint64_t> acc(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (a[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) acc[c] = (acc[c] + std::uint64_t{a[r]} * m.at(r, c)) % q;
  }
  return RowVector(acc.begin(), acc.end());
}

RowVector kron_vec(const PrimeField& f, std::span<const Residue> a, std::span<const Residue> b) {
  RowVector out(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = f.mul(a[i], b[j]);
  return out;
}

namespace {

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(FieldMatrix& m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Residue t = m.at(row, c);
        m.set(row, c, m.at(sel, c));
        m.set(sel, c, t);
      }
    }
    const Residue scale = f.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.set(row, c, f.mul(m.at(row, c), scale));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Residue factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c)
        m.set(r, c, f.sub(m.at(r, c), f.mul(factor, m.at(row, c))));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const FieldMatrix& m) {
  FieldMatrix work = m;
  return rref(work).size();
}

FieldMatrix nullspace(const FieldMatrix& m) {
  FieldMatrix work = m;
  const auto pivots = rref(work);
  const auto& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  FieldMatrix basis(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    basis.set(free_cols[j], j, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis.set(pivots[i], j, f.neg(work.at(i, free_cols[j])));
  }
  return basis;
}

std::optional<RowVector> solve_left(const FieldMatrix& m, std::span<const Residue> target) {
  if (target.size() != m.cols()) fail_input("solve_left: dimension mismatch");
  // x m = t  <=>  m^T x^T = t^T; eliminate on the augmented system [m^T | t].
  const auto& f = m.field();
  FieldMatrix aug(f, m.cols(), m.rows() + 1);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) aug.set(c, r, m.at(r, c));
    aug.set(c, m.rows(), target[c]);
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.rows()) return std::nullopt;
  RowVector x(m.rows(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.rows());
  return x;
}

std::optional<RowVector> find_support_vector(const FieldMatrix& l,
                                             std::span<const std::size_t> row_support,
                                             std::span<const std::size_t> zero_cols,
                                             Pivot pivot) {
  const auto& f = l.field();
  std::vector<std::size_t> rows(row_support.begin(), row_support.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (auto r : rows)
    if (r >= l.rows()) fail_input("find_support_vector: row index out of range");

  // The pivot functional on the restricted unknowns a|rows.
  RowVector functional(rows.size(), 0);
  if (pivot.mode == Pivot::Mode::Row) {
    auto it = std::find(rows.begin(), rows.end(), pivot.index);
    if (it == rows.end()) fail_input("find_support_vector: pivot row outside the row support");
    functional[it - rows.begin()] = 1;
  } else {
    if (pivot.index >= l.cols() ||
        std::find(zero_cols.begin(), zero_cols.end(), pivot.index) != zero_cols.end())
      fail_input("find_support_vector: pivot column must be a non-zeroed column");
    for (std::size_t i = 0; i < rows.size(); ++i) functional[i] = l.at(rows[i], pivot.index);
  }

  // Constraints: for c in zero_cols, sum_i a_i l[rows_i, c] = 0.
  FieldMatrix system(f, zero_cols.size(), rows.size());
  for (std::size_t k = 0; k < zero_cols.size(); ++k) {
    if (zero_cols[k] >= l.cols()) fail_input("find_support_vector: column index out of range");
    for (std::size_t i = 0; i < rows.size(); ++i) system.set(k, i, l.at(rows[i], zero_cols[k]));
  }
  const FieldMatrix kernel = nullspace(system);
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      value = (value + std::uint64_t{functional[i]} * kernel.at(i, j)) % f.modulus();
    if (value == 0) continue;
    const Residue scale = f.inv(static_cast<Residue>(value));
    RowVector a(l.rows(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) a[rows[i]] = f.mul(kernel.at(i, j), scale);
    return a;
  }
  return std::nullopt;
}

bool RowSpaceBasis::insert(std::span<const Residue> row) {
  if (row.size() != width_) fail_input("RowSpaceBasis: width mismatch");
  RowVector x(row.begin(), row.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue factor = x[pivots_[i]];
    if (factor == 0) continue;
    for (std::size_t c = pivots_[i]; c < width_; ++c) x[c] = field_.sub(x[c], field_.mul(factor, rows_[i][c]));
  }
  std::size_t p = 0;
  while (p < width_ && x[p] == 0) ++p;
  if (p == width_) return false;
  const Residue scale = field_.inv(x[p]);
  for (std::size_t c = p; c < width_; ++c) x[c] = field_.mul(x[c], scale);
  rows_.push_back(std::move(x));
  pivots_.push_back(p);
  return true;
}

std::vector<std::size_t> support(std::span<const Residue> v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

namespace {

std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> out(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), out.begin() + 1);
  return out;
}

void check_partition(const FieldMatrix& m, const BlockPartition& p) {
  const auto ro = offsets(p.row_sizes);
  const auto co = offsets(p.col_sizes);
  if (ro.back() != m.rows() || co.back() != m.cols()) fail_input("block partition does not cover the matrix");
}

}  // namespace

FieldMatrix block(const FieldMatrix& m, const BlockPartition& p, std::size_t i, std::size_t j) {
  check_partition(m, p);
  const auto ro = offsets(p.row_sizes);
  const auto co = offsets(p.col_sizes);
  FieldMatrix b(m.field(), p.row_sizes.at(i), p.col_sizes.at(j));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) b.set(r, c, m.at(ro[i] + r, co[j] + c));
  return b;
}

bool is_lower_block_triangular(const FieldMatrix& m, const BlockPartition& p) {
  check_partition(m, p);
  if (p.row_sizes.size() != p.col_sizes.size()) fail_input("block partition is not square");
  for (std::size_t i = 0; i < p.row_sizes.size(); ++i)
    for (std::size_t j = i + 1; j < p.col_sizes.size(); ++j)
      if (!block(m, p, i, j).is_zero()) return false;
  return true;
}

std::size_t diagonal_rank_sum(const FieldMatrix& m, const BlockPartition& p) {
  check_partition(m, p);
  if (p.row_sizes.size() != p.col_sizes.size()) fail_input("block partition is not square");
  std::size_t sum = 0;
  for (std::size_t i = 0; i < p.row_sizes.size(); ++i) sum += rank(block(m, p, i, i));
  return sum;
}

}  // namespace mcnc
