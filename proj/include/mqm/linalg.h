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
#ifndef MQM_LINALG_H_
#define MQM_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mqm {

// Dense row-major square/rectangular matrix for the small (d ~ 10) systems
// handled by the budget simulator.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  double MeanDiagonal() const;
  double FrobeniusNorm() const;
  bool IsSymmetric(double tol = 0.0) const;

  Matrix operator-(const Matrix& other) const;
  // this * other^T
  Matrix TimesTranspose(const Matrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Unbiased (n - 1) sample covariance of row vectors; zero matrix for n < 2.
Matrix SampleCovariance(const std::vector<std::vector<double>>& rows);

// Lower-triangular L with L * L^T = a for symmetric positive semi-definite
// `a`. Pivots within `tol * max diagonal` of zero give a zero column, so a
// zero matrix factorizes to zero. Returns false for indefinite input.
bool CholeskyPsd(const Matrix& a, Matrix* lower, double tol = 1e-12);

// out = mean + L * z
void AffineTransform(std::span<const double> mean, const Matrix& lower,
                     std::span<const double> z, std::span<double> out);

}  // namespace mqm

#endif  // MQM_LINALG_H_
