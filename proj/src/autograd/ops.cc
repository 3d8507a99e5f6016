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

#include "autograd/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"

namespace vclone {
namespace {

void CheckRank2(const Var& a, const char* op) {
  Require(a.value().rank() == 2, ErrorCode::kShapeMismatch,
          std::string(op) + " expects a matrix, got " +
              ShapeString(a.shape()));
}

void CheckSameShape(const Var& a, const Var& b, const char* op) {
  Require(a.shape() == b.shape(), ErrorCode::kShapeMismatch,
          std::string(op) + ": " + ShapeString(a.shape()) + " vs " +
              ShapeString(b.shape()));
}

template <typename Fn, typename Deriv>
Var Pointwise(const Var& a, Fn fn, Deriv deriv) {
  Tensor out(a.shape());
  const double* x = a.value().data();
  double* y = out.data();
  for (size_t i = 0; i < out.size(); ++i) y[i] = fn(x[i]);
  return MakeResult(std::move(out), {a}, [deriv](Node& self) {
    Tensor* g = GradOf(self, 0);
    if (!g) return;
    const double* x = self.inputs[0]->value.data();
    const double* y = self.value.data();
    const double* dy = self.grad.data();
    double* dx = g->data();
    for (size_t i = 0; i < self.value.size(); ++i) {
      dx[i] += dy[i] * deriv(x[i], y[i]);
    }
  });
}

}  // namespace

Var MatMul(const Var& a, const Var& b) {
  CheckRank2(a, "MatMul");
  CheckRank2(b, "MatMul");
  Require(a.cols() == b.rows(), ErrorCode::kShapeMismatch,
          "MatMul inner dims " + ShapeString(a.shape()) + " * " +
              ShapeString(b.shape()));
  Tensor out = Tensor::Matrix(a.rows(), b.cols());
  out.AsMatrix().noalias() = a.value().AsMatrix() * b.value().AsMatrix();
  return MakeResult(std::move(out), {a, b}, [](Node& self) {
    const auto dy = self.grad.AsMatrix();
    if (Tensor* ga = GradOf(self, 0)) {
      ga->AsMatrix().noalias() +=
          dy * self.inputs[1]->value.AsMatrix().transpose();
    }
    if (Tensor* gb = GradOf(self, 1)) {
      gb->AsMatrix().noalias() +=
          self.inputs[0]->value.AsMatrix().transpose() * dy;
    }
  });
}

Var Linear(const Var& x, const Var& w, const Var& bias) {
  CheckRank2(x, "Linear");
  CheckRank2(w, "Linear");
  Require(x.cols() == w.rows(), ErrorCode::kShapeMismatch,
          "Linear: input " + ShapeString(x.shape()) + " weight " +
              ShapeString(w.shape()));
  const bool has_bias = bias.defined();
  if (has_bias) {
    Require(static_cast<int>(bias.value().size()) == w.cols(),
            ErrorCode::kShapeMismatch, "Linear: bias size");
  }
  Tensor out = Tensor::Matrix(x.rows(), w.cols());
  auto y = out.AsMatrix();
  y.noalias() = x.value().AsMatrix() * w.value().AsMatrix();
  if (has_bias) {
    Eigen::Map<const Eigen::RowVectorXd> b(bias.value().data(), w.cols());
    y.rowwise() += b;
  }
  std::vector<Var> inputs = {x, w};
  if (has_bias) inputs.push_back(bias);
  return MakeResult(std::move(out), inputs, [](Node& self) {
    const auto dy = self.grad.AsMatrix();
    if (Tensor* gx = GradOf(self, 0)) {
      gx->AsMatrix().noalias() +=
          dy * self.inputs[1]->value.AsMatrix().transpose();
    }
    if (Tensor* gw = GradOf(self, 1)) {
      gw->AsMatrix().noalias() +=
          self.inputs[0]->value.AsMatrix().transpose() * dy;
    }
    if (self.inputs.size() > 2) {
      if (Tensor* gb = GradOf(self, 2)) {
        Eigen::Map<Eigen::RowVectorXd> db(gb->data(), dy.cols());
        db += dy.colwise().sum();
      }
    }
  });
}

Var Add(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Add");
  Tensor out(a.shape());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] + b.value()[i];
  return MakeResult(std::move(out), {a, b}, [](Node& self) {
    for (size_t k = 0; k < 2; ++k) {
      if (Tensor* g = GradOf(self, k)) {
        for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i];
      }
    }
  });
}

Var Sub(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Sub");
  Tensor out(a.shape());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] - b.value()[i];
  return MakeResult(std::move(out), {a, b}, [](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i];
    }
    if (Tensor* g = GradOf(self, 1)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] -= self.grad[i];
    }
  });
}

Var Mul(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Mul");
  Tensor out(a.shape());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * b.value()[i];
  return MakeResult(std::move(out), {a, b}, [](Node& self) {
    const Tensor& av = self.inputs[0]->value;
    const Tensor& bv = self.inputs[1]->value;
    if (Tensor* g = GradOf(self, 0)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i] * bv[i];
    }
    if (Tensor* g = GradOf(self, 1)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i] * av[i];
    }
  });
}

Var Scale(const Var& a, double factor) {
  Tensor out(a.shape());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * factor;
  return MakeResult(std::move(out), {a}, [factor](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i] * factor;
    }
  });
}

Var Relu(const Var& a) {
  return Pointwise(
      a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var LeakyRelu(const Var& a, double slope) {
  return Pointwise(
      a, [slope](double x) { return x > 0.0 ? x : slope * x; },
      [slope](double x, double) { return x > 0.0 ? 1.0 : slope; });
}

Var Tanh(const Var& a) {
  return Pointwise(
      a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Sigmoid(const Var& a) {
  return Pointwise(
      a, [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
      [](double, double y) { return y * (1.0 - y); });
}

Var ConcatCols(const std::vector<Var>& parts) {
  Require(!parts.empty(), ErrorCode::kShapeMismatch, "ConcatCols: no inputs");
  const int rows = parts[0].rows();
  int cols = 0;
  for (const Var& p : parts) {
    CheckRank2(p, "ConcatCols");
    Require(p.rows() == rows, ErrorCode::kShapeMismatch,
            "ConcatCols: row mismatch");
    cols += p.cols();
  }
  Tensor out = Tensor::Matrix(rows, cols);
  int offset = 0;
  for (const Var& p : parts) {
    out.AsMatrix().middleCols(offset, p.cols()) = p.value().AsMatrix();
    offset += p.cols();
  }
  return MakeResult(std::move(out), parts, [](Node& self) {
    int offset = 0;
    for (size_t k = 0; k < self.inputs.size(); ++k) {
      const int c = self.inputs[k]->value.cols();
      if (Tensor* g = GradOf(self, k)) {
        g->AsMatrix() += self.grad.AsMatrix().middleCols(offset, c);
      }
      offset += c;
    }
  });
}

Var ConcatRows(const std::vector<Var>& parts) {
  Require(!parts.empty(), ErrorCode::kShapeMismatch, "ConcatRows: no inputs");
  const int cols = parts[0].cols();
  int rows = 0;
  for (const Var& p : parts) {
    CheckRank2(p, "ConcatRows");
    Require(p.cols() == cols, ErrorCode::kShapeMismatch,
            "ConcatRows: column mismatch");
    rows += p.rows();
  }
  Tensor out = Tensor::Matrix(rows, cols);
  size_t offset = 0;
  for (const Var& p : parts) {
    std::copy(p.value().data(), p.value().data() + p.value().size(),
              out.data() + offset);
    offset += p.value().size();
  }
  return MakeResult(std::move(out), parts, [](Node& self) {
    size_t offset = 0;
    for (size_t k = 0; k < self.inputs.size(); ++k) {
      const size_t n = self.inputs[k]->value.size();
      if (Tensor* g = GradOf(self, k)) {
        for (size_t i = 0; i < n; ++i) (*g)[i] += self.grad[offset + i];
      }
      offset += n;
    }
  });
}

Var SliceCols(const Var& a, int begin, int count) {
  CheckRank2(a, "SliceCols");
  Require(begin >= 0 && count >= 0 && begin + count <= a.cols(),
          ErrorCode::kShapeMismatch, "SliceCols out of range");
  Tensor out = Tensor::Matrix(a.rows(), count);
  out.AsMatrix() = a.value().AsMatrix().middleCols(begin, count);
  return MakeResult(std::move(out), {a}, [begin, count](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      g->AsMatrix().middleCols(begin, count) += self.grad.AsMatrix();
    }
  });
}

Var SliceRows(const Var& a, int begin, int count) {
  CheckRank2(a, "SliceRows");
  Require(begin >= 0 && count >= 0 && begin + count <= a.rows(),
          ErrorCode::kShapeMismatch, "SliceRows out of range");
  const size_t stride = static_cast<size_t>(a.cols());
  Tensor out = Tensor::Matrix(count, a.cols());
  std::copy(a.value().data() + begin * stride,
            a.value().data() + (begin + count) * stride, out.data());
  return MakeResult(std::move(out), {a}, [begin, stride](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      double* dst = g->data() + begin * stride;
      for (size_t i = 0; i < self.grad.size(); ++i) dst[i] += self.grad[i];
    }
  });
}

Var Transpose(const Var& a) {
  CheckRank2(a, "Transpose");
  return MakeResult(Transposed(a.value()), {a}, [](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      g->AsMatrix() += self.grad.AsMatrix().transpose();
    }
  });
}

Var Reshape(const Var& a, std::vector<int> shape) {
  return MakeResult(a.value().Reshaped(std::move(shape)), {a}, [](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i];
    }
  });
}

Var EmbeddingLookup(const Var& table, std::span<const int> ids) {
  CheckRank2(table, "EmbeddingLookup");
  const int vocab = table.rows();
  const int dim = table.cols();
  std::vector<int> rows(ids.begin(), ids.end());
  Tensor out = Tensor::Matrix(static_cast<int>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    Require(rows[i] >= 0 && rows[i] < vocab, ErrorCode::kIndexOutOfVocab,
            "id " + std::to_string(rows[i]) + " outside vocabulary of " +
                std::to_string(vocab));
    out.AsMatrix().row(static_cast<int>(i)) =
        table.value().AsMatrix().row(rows[i]);
  }
  return MakeResult(std::move(out), {table},
                    [rows = std::move(rows)](Node& self) {
                      if (Tensor* g = GradOf(self, 0)) {
                        auto gm = g->AsMatrix();
                        const auto dy = self.grad.AsMatrix();
                        for (size_t i = 0; i < rows.size(); ++i) {
                          gm.row(rows[i]) += dy.row(static_cast<int>(i));
                        }
                      }
                    });
}

Var RepeatRows(const Var& row, int times) {
  CheckRank2(row, "RepeatRows");
  Require(row.rows() == 1, ErrorCode::kShapeMismatch,
          "RepeatRows expects a single row");
  Tensor out = Tensor::Matrix(times, row.cols());
  for (int t = 0; t < times; ++t) {
    out.AsMatrix().row(t) = row.value().AsMatrix().row(0);
  }
  return MakeResult(std::move(out), {row}, [](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      g->AsMatrix().row(0) += self.grad.AsMatrix().colwise().sum();
    }
  });
}

Var ExpandRows(const Var& a, std::span<const int> counts) {
  CheckRank2(a, "ExpandRows");
  Require(static_cast<int>(counts.size()) == a.rows(),
          ErrorCode::kLengthMismatch, "ExpandRows: count per row required");
  int total = 0;
  for (int c : counts) {
    Require(c >= 0, ErrorCode::kZeroDuration, "negative repeat count");
    total += c;
  }
  std::vector<int> source;
  source.reserve(static_cast<size_t>(total));
  for (size_t i = 0; i < counts.size(); ++i) {
    source.insert(source.end(), static_cast<size_t>(counts[i]),
                  static_cast<int>(i));
  }
  Tensor out = Tensor::Matrix(total, a.cols());
  for (int t = 0; t < total; ++t) {
    out.AsMatrix().row(t) = a.value().AsMatrix().row(source[t]);
  }
  return MakeResult(std::move(out), {a},
                    [source = std::move(source)](Node& self) {
                      if (Tensor* g = GradOf(self, 0)) {
                        auto gm = g->AsMatrix();
                        const auto dy = self.grad.AsMatrix();
                        for (size_t t = 0; t < source.size(); ++t) {
                          gm.row(source[t]) += dy.row(static_cast<int>(t));
                        }
                      }
                    });
}

Var Dropout(const Var& a, double p, Rng& rng) {
  if (p <= 0.0) return a;
  Require(p < 1.0, ErrorCode::kInvalidArgument, "dropout rate must be < 1");
  const double keep_scale = 1.0 / (1.0 - p);
  std::vector<double> mask(a.value().size());
  Tensor out(a.shape());
  for (size_t i = 0; i < mask.size(); ++i) {
    mask[i] = rng.Uniform() >= p ? keep_scale : 0.0;
    out[i] = a.value()[i] * mask[i];
  }
  return MakeResult(std::move(out), {a}, [mask = std::move(mask)](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i] * mask[i];
    }
  });
}

Var Sum(const Var& a) {
  double s = 0.0;
  for (double v : a.value().values()) s += v;
  return MakeResult(Tensor::Scalar(s), {a}, [](Node& self) {
    if (Tensor* g = GradOf(self, 0)) {
      const double d = self.grad[0];
      for (size_t i = 0; i < g->size(); ++i) (*g)[i] += d;
    }
  });
}

Var Mean(const Var& a) {
  const double n = static_cast<double>(a.value().size());
  return Scale(Sum(a), n > 0 ? 1.0 / n : 0.0);
}

Var MseLoss(const Var& prediction, const Var& target) {
  CheckSameShape(prediction, target, "MseLoss");
  const size_t n = prediction.value().size();
  Require(n > 0, ErrorCode::kShapeMismatch, "MseLoss on empty input");
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = prediction.value()[i] - target.value()[i];
    s += d * d;
  }
  return MakeResult(
      Tensor::Scalar(s / static_cast<double>(n)), {prediction, target},
      [](Node& self) {
        const Tensor& p = self.inputs[0]->value;
        const Tensor& t = self.inputs[1]->value;
        const double scale = 2.0 * self.grad[0] / static_cast<double>(p.size());
        if (Tensor* g = GradOf(self, 0)) {
          for (size_t i = 0; i < p.size(); ++i) (*g)[i] += scale * (p[i] - t[i]);
        }
        if (Tensor* g = GradOf(self, 1)) {
          for (size_t i = 0; i < p.size(); ++i) (*g)[i] -= scale * (p[i] - t[i]);
        }
      });
}

Var MseLoss(const Var& prediction, const Tensor& target) {
  return MseLoss(prediction, Constant(target));
}

Var L1Loss(const Var& prediction, const Var& target) {
  CheckSameShape(prediction, target, "L1Loss");
  const size_t n = prediction.value().size();
  Require(n > 0, ErrorCode::kShapeMismatch, "L1Loss on empty input");
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    s += std::abs(prediction.value()[i] - target.value()[i]);
  }
  return MakeResult(
      Tensor::Scalar(s / static_cast<double>(n)), {prediction, target},
      [](Node& self) {
        const Tensor& p = self.inputs[0]->value;
        const Tensor& t = self.inputs[1]->value;
        const double scale = self.grad[0] / static_cast<double>(p.size());
        auto sign = [](double d) { return d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0); };
        if (Tensor* g = GradOf(self, 0)) {
          for (size_t i = 0; i < p.size(); ++i) (*g)[i] += scale * sign(p[i] - t[i]);
        }
        if (Tensor* g = GradOf(self, 1)) {
          for (size_t i = 0; i < p.size(); ++i) (*g)[i] -= scale * sign(p[i] - t[i]);
        }
      });
}

Var Detach(const Var& a) { return Var(a.value(), false); }

Var Constant(Tensor value) { return Var(std::move(value), false); }

}  // namespace vclone
