// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOLDENBENCH_FUSION_TENSOR_H_
#define GOLDENBENCH_FUSION_TENSOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace goldenbench::fusion {

// Row-major (frames x channels) matrix of doubles.
class Tensor {
 public:
  Tensor() = default;
  // Zero-filled. Throws Error when either extent is zero.
  Tensor(std::size_t rows, std::size_t cols);
  // Throws Error on a size mismatch, a zero extent or a non-finite value.
  Tensor(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * cols_, cols_);
  }

  bool same_shape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool operator==(const Tensor&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// a (n x k) * b (k x m).
Tensor matmul(const Tensor& a, const Tensor& b);
// a^T * b for a (k x n), b (k x m).
Tensor matmul_at(const Tensor& a, const Tensor& b);
// a * b^T for a (n x k), b (m x k).
Tensor matmul_bt(const Tensor& a, const Tensor& b);

Tensor add(const Tensor& a, const Tensor& b);
void add_in_place(Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
// Adds a 1 x cols bias row to every row.
void add_row_bias(Tensor& a, const Tensor& bias);
// 1 x cols sum over rows.
Tensor column_sums(const Tensor& a);

// Columns [begin, begin + count).
Tensor slice_cols(const Tensor& a, std::size_t begin, std::size_t count);
void write_cols(Tensor& dst, std::size_t begin, const Tensor& src);
Tensor concat_cols(const Tensor& left, const Tensor& right);

// Accumulated in long double; finite-difference checks difference two
// nearly equal losses.
long double sum_of_squares(const Tensor& a);

}  // namespace goldenbench::fusion

#endif  // GOLDENBENCH_FUSION_TENSOR_H_
