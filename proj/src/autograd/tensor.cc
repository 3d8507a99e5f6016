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

#include "autograd/tensor.h"

#include <algorithm>

#include "common/error.h"

namespace vclone {

size_t ShapeSize(const std::vector<int>& shape) {
  size_t n = 1;
  for (int d : shape) {
    Require(d >= 0, ErrorCode::kShapeMismatch, "negative dimension");
    n *= static_cast<size_t>(d);
  }
  return n;
}

std::string ShapeString(const std::vector<int>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<int> shape, double fill)
    : shape_(std::move(shape)), values_(ShapeSize(shape_), fill) {}

Tensor::Tensor(std::vector<int> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  Require(values_.size() == ShapeSize(shape_), ErrorCode::kShapeMismatch,
          "value count does not match shape " + ShapeString(shape_));
}

Tensor Tensor::Reshaped(std::vector<int> shape) const {
  Require(ShapeSize(shape) == values_.size(), ErrorCode::kShapeMismatch,
          "cannot reshape " + ShapeString(shape_) + " to " + ShapeString(shape));
  return Tensor(std::move(shape), values_);
}

void Tensor::Fill(double v) { std::fill(values_.begin(), values_.end(), v); }

Tensor Transposed(const Tensor& m) {
  Tensor out = Tensor::Matrix(m.cols(), m.rows());
  out.AsMatrix() = m.AsMatrix().transpose();
  return out;
}

}  // namespace vclone
