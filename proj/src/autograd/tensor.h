// Copyright (c) 2026 The vclone Authors
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

#ifndef VCLONE_AUTOGRAD_TENSOR_H_
#define VCLONE_AUTOGRAD_TENSOR_H_

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace vclone {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

// Dense row-major array of doubles. Matrices are rank 2 (rows x cols);
// convolution inputs are rank 3 (batch x channels x length).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape, double fill = 0.0);
  Tensor(std::vector<int> shape, std::vector<double> values);

  static Tensor Matrix(int rows, int cols, double fill = 0.0) {
    return Tensor({rows, cols}, fill);
  }
  static Tensor Scalar(double v) { return Tensor({1}, v); }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  int rows() const { return shape_[0]; }
  int cols() const { return shape_[1]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }
  double& at(int r, int c) {
    return values_[static_cast<size_t>(r) * static_cast<size_t>(shape_[1]) + c];
  }
  double at(int r, int c) const {
    return values_[static_cast<size_t>(r) * static_cast<size_t>(shape_[1]) + c];
  }

  MatrixMap AsMatrix() { return MatrixMap(data(), shape_[0], shape_[1]); }
  ConstMatrixMap AsMatrix() const {
    return ConstMatrixMap(data(), shape_[0], shape_[1]);
  }

  Tensor Reshaped(std::vector<int> shape) const;
  bool SameShape(const Tensor& other) const { return shape_ == other.shape_; }
  void Fill(double v);
  double item() const { return values_.at(0); }

 private:
  std::vector<int> shape_;
  std::vector<double> values_;
};

size_t ShapeSize(const std::vector<int>& shape);
std::string ShapeString(const std::vector<int>& shape);
Tensor Transposed(const Tensor& m);

}  // namespace vclone

#endif  // VCLONE_AUTOGRAD_TENSOR_H_
