// Copyright 2026 The Authors.
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

#include "gramsel/matrix.hpp"

#include <cmath>
#include <string>

#include "gramsel/errors.hpp"
#include "gramsel/simd.hpp"

namespace gramsel {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("matrix expects " + std::to_string(rows_ * cols_) +
                          " entries, got " + std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("matrix entries must be finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const { return std::sqrt(simd::sum_squares(data_)); }

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw InvalidArgument("matrix dimension mismatch in +=");
  }
  simd::add(other.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw InvalidArgument("matrix dimension mismatch in -=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch in *");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t p = 0; p < a.cols_; ++p) {
      const double aip = a(i, p);
      if (aip != 0.0) simd::axpy(aip, b.row(p), c.row(i));
    }
  }
  return c;
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  if (!m.is_square()) throw InvalidArgument("symmetric matrix must be square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

SymMatrix SymMatrix::outer(std::span<const double> v) {
  SymMatrix s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) s.m_(i, j) = v[i] * v[j];
  }
  return s;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  m_ += other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  m_ -= other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

void to_json(nlohmann::json& j, const Matrix& m) {
  j = nlohmann::json::object();
  j["n"] = m.rows();
  if (!m.is_square()) j["m"] = m.cols();
  j["entries"] = std::vector<double>(m.data().begin(), m.data().end());
}

void from_json(const nlohmann::json& j, Matrix& m) {
  const auto rows = j.at("n").get<std::size_t>();
  const auto cols = j.contains("m") ? j.at("m").get<std::size_t>() : rows;
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be >= 1");
  m = Matrix(rows, cols, j.at("entries").get<std::vector<double>>());
}

}  // namespace gramsel
