/*
 * Copyright 2026 The mqmkit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "mqm/linalg.h"

#include <algorithm>
#include <cmath>

namespace mqm {

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::MeanDiagonal() const {
  const std::size_t n = std::min(rows_, cols_);
  if (n == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (*this)(i, i);
  return s / static_cast<double>(n);
}

double Matrix::FrobeniusNorm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::IsSymmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = data_[i] - other.data_[i];
  }
  return out;
}

Matrix Matrix::TimesTranspose(const Matrix& other) const {
  Matrix out(rows_, other.rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < other.rows_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < cols_; ++k) s += (*this)(i, k) * other(j, k);
      out(i, j) = s;
    }
  }
  return out;
}

Matrix SampleCovariance(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  const std::size_t d = rows.front().size();
  Matrix cov(d, d);
  const std::size_t n = rows.size();
  if (n < 2) return cov;
  std::vector<double> mean(d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < d; ++i) mean[i] += r[i];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < d; ++i) {
      const double di = r[i] - mean[i];
      for (std::size_t j = i; j < d; ++j) cov(i, j) += di * (r[j] - mean[j]);
    }
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      cov(i, j) /= denom;
      cov(j, i) = cov(i, j);
    }
  }
  return cov;
}

bool CholeskyPsd(const Matrix& a, Matrix* lower, double tol) {
  const std::size_t n = a.rows();
  Matrix l(n, n);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double eps = tol * std::max(max_diag, 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (pivot < -eps) return false;
    if (pivot <= eps) {
      // Rank-deficient direction: the rest of the column must vanish too.
      for (std::size_t i = j + 1; i < n; ++i) {
        double s = a(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        if (std::abs(s) > std::sqrt(eps) * std::sqrt(std::max(a(i, i), 0.0)) +
                              eps) {
          return false;
        }
      }
      continue;
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  *lower = std::move(l);
  return true;
}

void AffineTransform(std::span<const double> mean, const Matrix& lower,
                     std::span<const double> z, std::span<double> out) {
  const std::size_t n = mean.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += lower(i, k) * z[k];
    out[i] = mean[i] + s;
  }
}

}  // namespace mqm
