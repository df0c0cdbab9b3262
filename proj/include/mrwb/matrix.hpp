// Copyright 2026 The mrwb Authors
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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/gf16.hpp"
#include "mrwb/instrumentation.hpp"

namespace mrwb {

/// Dense row-major matrix over GF(16), one byte per element.
class Matrix {
 public:
  /// Zero matrix. Degenerate shapes are rejected.
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    data_.resize(rows * cols);
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<Gf16> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows * cols) {
      throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                           " does not match " + shape_string(rows, cols));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Gf16(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  Gf16& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Gf16 operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Gf16> data() noexcept { return data_; }
  std::span<const Gf16> data() const noexcept { return data_; }

  bool is_zero() const noexcept {
    for (Gf16 e : data_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  std::string shape() const { return shape_string(rows_, cols_); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static std::string shape_string(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
  }

  static void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("degenerate matrix shape " + shape_string(rows, cols));
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Gf16> data_;
};

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw DimensionError("mat_add: " + a.shape() + " vs " + b.shape());
  }
  instr::StageScope scope(instr::Stage::mat_arith, a.cols());
  Matrix out(a.rows(), a.cols());
  auto lhs = a.data();
  auto rhs = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = lhs[i] + rhs[i];
  return out;
}

/// In-place accumulate, `acc += b`.
inline void mat_add_assign(Matrix& acc, const Matrix& b) {
  if (!acc.same_shape(b)) {
    throw DimensionError("mat_add: " + acc.shape() + " vs " + b.shape());
  }
  instr::StageScope scope(instr::Stage::mat_arith, acc.cols());
  auto dst = acc.data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + a.shape() + " * " + b.shape());
  }
  // One unit per scalar-column product of the column engine.
  instr::StageScope scope(instr::Stage::mat_prod, a.cols() * b.cols());
  Matrix out(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto* row = &out(i, 0);
    for (std::size_t t = 0; t < inner; ++t) {
      const std::uint8_t* mul = &kGf16MulTable[a(i, t).value() << 4];
      const Gf16* brow = b.data().data() + t * n;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = Gf16::from_nibble(row[j].value() ^ mul[brow[j].value()]);
      }
    }
  }
  return out;
}

/// Sum_j alphas[j] * mats[j]. All matrices must share one shape.
inline Matrix scalar_mat_sum(std::span<const Gf16> alphas, std::span<const Matrix> mats) {
  if (alphas.empty() || mats.empty()) throw DimensionError("scalar_mat_sum: empty input");
  if (alphas.size() != mats.size()) {
    throw DimensionError("scalar_mat_sum: " + std::to_string(alphas.size()) + " scalars for " +
                         std::to_string(mats.size()) + " matrices");
  }
  for (const Matrix& m : mats) {
    if (!m.same_shape(mats.front())) {
      throw DimensionError("scalar_mat_sum: " + m.shape() + " vs " + mats.front().shape());
    }
  }
  instr::StageScope scope(instr::Stage::scalar_mat_sum, mats.size() * mats.front().cols());
  Matrix out(mats.front().rows(), mats.front().cols());
  auto acc = out.data();
  for (std::size_t j = 0; j < mats.size(); ++j) {
    if (alphas[j].is_zero()) continue;
    const std::uint8_t* mul = &kGf16MulTable[alphas[j].value() << 4];
    auto src = mats[j].data();
    for (std::size_t e = 0; e < acc.size(); ++e) {
      acc[e] = Gf16::from_nibble(acc[e].value() ^ mul[src[e].value()]);
    }
  }
  return out;
}

/// Splits M = [L | R] where R has `r` columns.
inline std::pair<Matrix, Matrix> split_lr(const Matrix& m, std::size_t r) {
  if (r == 0 || r >= m.cols()) {
    throw DimensionError("split_lr: r=" + std::to_string(r) + " out of range for " + m.shape());
  }
  instr::StageScope scope(instr::Stage::mat_arith, m.cols());
  const std::size_t left_cols = m.cols() - r;
  Matrix left(m.rows(), left_cols);
  Matrix right(m.rows(), r);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < left_cols; ++j) left(i, j) = m(i, j);
    for (std::size_t j = 0; j < r; ++j) right(i, j) = m(i, left_cols + j);
  }
  return {std::move(left), std::move(right)};
}

/// Column concatenation [a | b].
inline Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("hconcat: " + a.shape() + " | " + b.shape());
  }
  instr::StageScope scope(instr::Stage::mat_arith, a.cols() + b.cols());
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

}  // namespace mrwb
