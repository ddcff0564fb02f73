// Copyright 2026 The Rolegraph Authors.
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

#ifndef ROLEGRAPH_MATRIX_H_
#define ROLEGRAPH_MATRIX_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "rolegraph/errors.h"

namespace rolegraph {

// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int64_t rows, int64_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix shape");
  }

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  double& operator()(int64_t r, int64_t c) { return data_[r * cols_ + c]; }
  double operator()(int64_t r, int64_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(int64_t r) {
    return {data_.data() + r * cols_, static_cast<size_t>(cols_)};
  }
  std::span<const double> row(int64_t r) const {
    return {data_.data() + r * cols_, static_cast<size_t>(cols_)};
  }

  std::vector<double> Column(int64_t c) const {
    std::vector<double> out(rows_);
    for (int64_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  // Rows selected by index, in the given order.
  DenseMatrix SelectRows(std::span<const int64_t> indices) const {
    DenseMatrix out(static_cast<int64_t>(indices.size()), cols_);
    for (size_t i = 0; i < indices.size(); ++i) {
      const auto src = row(indices[i]);
      std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace rolegraph

#endif  // ROLEGRAPH_MATRIX_H_
