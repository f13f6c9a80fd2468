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

#include "goldenbench/fusion/tensor.h"

#include <cmath>
#include <string>

#include "goldenbench/error.h"

namespace goldenbench::fusion {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("tensor: ") + what);
}

}  // namespace

Tensor::Tensor(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  require(rows > 0 && cols > 0, "extents must be positive");
}

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  require(rows > 0 && cols > 0, "extents must be positive");
  require(values_.size() == rows * cols, "value count does not match shape");
  for (const double v : values_) require(std::isfinite(v), "non-finite value");
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require(a.cols() == b.rows(), "matmul shape mismatch");
  Tensor out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Tensor matmul_at(const Tensor& a, const Tensor& b) {
  require(a.rows() == b.rows(), "matmul_at shape mismatch");
  Tensor out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
    }
  }
  return out;
}

Tensor matmul_bt(const Tensor& a, const Tensor& b) {
  require(a.cols() == b.cols(), "matmul_bt shape mismatch");
  Tensor out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(j, k);
      out(i, j) = sum;
    }
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  add_in_place(out, b);
  return out;
}

void add_in_place(Tensor& a, const Tensor& b) {
  require(a.same_shape(b), "add shape mismatch");
  auto dst = a.values();
  const auto src = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

Tensor scale(const Tensor& a, double factor) {
  Tensor out = a;
  for (double& v : out.values()) v *= factor;
  return out;
}

void add_row_bias(Tensor& a, const Tensor& bias) {
  require(bias.rows() == 1 && bias.cols() == a.cols(), "bias shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += bias(0, j);
  }
}

Tensor column_sums(const Tensor& a) {
  Tensor out(1, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(0, j) += a(i, j);
  }
  return out;
}

Tensor slice_cols(const Tensor& a, std::size_t begin, std::size_t count) {
  require(begin + count <= a.cols(), "column slice out of range");
  Tensor out(a.rows(), count);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < count; ++j) out(i, j) = a(i, begin + j);
  }
  return out;
}

void write_cols(Tensor& dst, std::size_t begin, const Tensor& src) {
  require(src.rows() == dst.rows() && begin + src.cols() <= dst.cols(),
          "column write out of range");
  for (std::size_t i = 0; i < src.rows(); ++i) {
    for (std::size_t j = 0; j < src.cols(); ++j) dst(i, begin + j) = src(i, j);
  }
}

Tensor concat_cols(const Tensor& left, const Tensor& right) {
  require(left.rows() == right.rows(), "concat row mismatch");
  Tensor out(left.rows(), left.cols() + right.cols());
  write_cols(out, 0, left);
  write_cols(out, left.cols(), right);
  return out;
}

long double sum_of_squares(const Tensor& a) {
  long double sum = 0.0L;
  for (const double v : a.values()) {
    sum += static_cast<long double>(v) * static_cast<long double>(v);
  }
  return sum;
}

}  // namespace goldenbench::fusion
