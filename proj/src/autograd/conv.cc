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

#include "autograd/conv.h"

#include <string>

#include "common/error.h"

namespace vclone {
namespace {

void CheckRank3(const Var& x, const char* op) {
  Require(x.value().rank() == 3, ErrorCode::kShapeMismatch,
          std::string(op) + " expects (batch x channels x length), got " +
              ShapeString(x.shape()));
}

// cols[(c * kernel + k), t] = x[c, t * stride - padding + k * dilation].
void Im2Col(const double* x, int channels, int length, int kernel,
            const Conv1dOptions& o, int out_length, double* cols) {
  for (int c = 0; c < channels; ++c) {
    const double* xc = x + static_cast<size_t>(c) * length;
    for (int k = 0; k < kernel; ++k) {
      double* row = cols + (static_cast<size_t>(c) * kernel + k) * out_length;
      const int offset = k * o.dilation - o.padding;
      for (int t = 0; t < out_length; ++t) {
        const int src = t * o.stride + offset;
        row[t] = (src >= 0 && src < length) ? xc[src] : 0.0;
      }
    }
  }
}

void Col2Im(const double* cols, int channels, int length, int kernel,
            const Conv1dOptions& o, int out_length, double* x) {
  for (int c = 0; c < channels; ++c) {
    double* xc = x + static_cast<size_t>(c) * length;
    for (int k = 0; k < kernel; ++k) {
      const double* row =
          cols + (static_cast<size_t>(c) * kernel + k) * out_length;
      const int offset = k * o.dilation - o.padding;
      for (int t = 0; t < out_length; ++t) {
        const int dst = t * o.stride + offset;
        if (dst >= 0 && dst < length) xc[dst] += row[t];
      }
    }
  }
}

}  // namespace

int Conv1dOutputLength(int length, int kernel, const Conv1dOptions& o) {
  return (length + 2 * o.padding - o.dilation * (kernel - 1) - 1) / o.stride + 1;
}

Var Conv1d(const Var& x, const Var& weight, const Var& bias,
           const Conv1dOptions& options) {
  CheckRank3(x, "Conv1d");
  CheckRank3(weight, "Conv1d weight");
  const int batch = x.shape()[0];
  const int in_ch = x.shape()[1];
  const int length = x.shape()[2];
  const int out_ch = weight.shape()[0];
  const int kernel = weight.shape()[2];
  Require(weight.shape()[1] == in_ch, ErrorCode::kShapeMismatch,
          "Conv1d: input has " + std::to_string(in_ch) +
              " channels, weight expects " + std::to_string(weight.shape()[1]));
  const int out_len = Conv1dOutputLength(length, kernel, options);
  Require(out_len >= 1, ErrorCode::kShapeMismatch,
          "Conv1d: input too short (" + std::to_string(length) + ")");

  Tensor out({batch, out_ch, out_len});
  const ConstMatrixMap w(weight.value().data(), out_ch, in_ch * kernel);
  RowMatrix cols(in_ch * kernel, out_len);
  for (int b = 0; b < batch; ++b) {
    Im2Col(x.value().data() + static_cast<size_t>(b) * in_ch * length, in_ch,
           length, kernel, options, out_len, cols.data());
    MatrixMap y(out.data() + static_cast<size_t>(b) * out_ch * out_len, out_ch,
                out_len);
    y.noalias() = w * cols;
    if (bias.defined()) {
      for (int c = 0; c < out_ch; ++c) y.row(c).array() += bias.value()[c];
    }
  }

  std::vector<Var> inputs = {x, weight};
  if (bias.defined()) inputs.push_back(bias);
  return MakeResult(std::move(out), inputs, [=](Node& self) {
    const Tensor& xv = self.inputs[0]->value;
    const Tensor& wv = self.inputs[1]->value;
    Tensor* gx = GradOf(self, 0);
    Tensor* gw = GradOf(self, 1);
    Tensor* gb = self.inputs.size() > 2 ? GradOf(self, 2) : nullptr;
    const ConstMatrixMap w(wv.data(), out_ch, in_ch * kernel);
    RowMatrix cols(in_ch * kernel, out_len);
    for (int b = 0; b < batch; ++b) {
      const ConstMatrixMap dy(
          self.grad.data() + static_cast<size_t>(b) * out_ch * out_len, out_ch,
          out_len);
      if (gw) {
        Im2Col(xv.data() + static_cast<size_t>(b) * in_ch * length, in_ch,
               length, kernel, options, out_len, cols.data());
        MatrixMap dw(gw->data(), out_ch, in_ch * kernel);
        dw.noalias() += dy * cols.transpose();
      }
      if (gb) {
        for (int c = 0; c < out_ch; ++c) (*gb)[c] += dy.row(c).sum();
      }
      if (gx) {
        cols.noalias() = w.transpose() * dy;
        Col2Im(cols.data(), in_ch, length, kernel, options, out_len,
               gx->data() + static_cast<size_t>(b) * in_ch * length);
      }
    }
  });
}

Var ConvTranspose1d(const Var& x, const Var& weight, const Var& bias,
                    int stride, int padding) {
  CheckRank3(x, "ConvTranspose1d");
  CheckRank3(weight, "ConvTranspose1d weight");
  const int batch = x.shape()[0];
  const int in_ch = x.shape()[1];
  const int length = x.shape()[2];
  const int out_ch = weight.shape()[1];
  const int kernel = weight.shape()[2];
  Require(weight.shape()[0] == in_ch, ErrorCode::kShapeMismatch,
          "ConvTranspose1d: channel mismatch");
  const int out_len = (length - 1) * stride - 2 * padding + kernel;
  Require(out_len >= 1, ErrorCode::kShapeMismatch,
          "ConvTranspose1d: empty output");
  // The scatter is the adjoint of an Im2Col over the output.
  Conv1dOptions gather;
  gather.stride = stride;
  gather.padding = padding;

  Tensor out({batch, out_ch, out_len});
  const ConstMatrixMap w(weight.value().data(), in_ch, out_ch * kernel);
  RowMatrix cols(out_ch * kernel, length);
  for (int b = 0; b < batch; ++b) {
    const ConstMatrixMap xb(
        x.value().data() + static_cast<size_t>(b) * in_ch * length, in_ch,
        length);
    cols.noalias() = w.transpose() * xb;
    double* y = out.data() + static_cast<size_t>(b) * out_ch * out_len;
    Col2Im(cols.data(), out_ch, out_len, kernel, gather, length, y);
    if (bias.defined()) {
      for (int c = 0; c < out_ch; ++c) {
        double* yc = y + static_cast<size_t>(c) * out_len;
        for (int t = 0; t < out_len; ++t) yc[t] += bias.value()[c];
      }
    }
  }

  std::vector<Var> inputs = {x, weight};
  if (bias.defined()) inputs.push_back(bias);
  return MakeResult(std::move(out), inputs, [=](Node& self) {
    const Tensor& xv = self.inputs[0]->value;
    const Tensor& wv = self.inputs[1]->value;
    Tensor* gx = GradOf(self, 0);
    Tensor* gw = GradOf(self, 1);
    Tensor* gb = self.inputs.size() > 2 ? GradOf(self, 2) : nullptr;
    const ConstMatrixMap w(wv.data(), in_ch, out_ch * kernel);
    RowMatrix dcols(out_ch * kernel, length);
    for (int b = 0; b < batch; ++b) {
      const double* dy =
          self.grad.data() + static_cast<size_t>(b) * out_ch * out_len;
      Im2Col(dy, out_ch, out_len, kernel, gather, length, dcols.data());
      if (gx) {
        MatrixMap dx(gx->data() + static_cast<size_t>(b) * in_ch * length,
                     in_ch, length);
        dx.noalias() += w * dcols;
      }
      if (gw) {
        const ConstMatrixMap xb(
            xv.data() + static_cast<size_t>(b) * in_ch * length, in_ch, length);
        MatrixMap dw(gw->data(), in_ch, out_ch * kernel);
        dw.noalias() += xb * dcols.transpose();
      }
      if (gb) {
        for (int c = 0; c < out_ch; ++c) {
          const double* dyc = dy + static_cast<size_t>(c) * out_len;
          double s = 0.0;
          for (int t = 0; t < out_len; ++t) s += dyc[t];
          (*gb)[c] += s;
        }
      }
    }
  });
}

Var ReflectPad1d(const Var& x, int left, int right) {
  CheckRank3(x, "ReflectPad1d");
  const int rows = x.shape()[0] * x.shape()[1];
  const int length = x.shape()[2];
  Require(left >= 0 && right >= 0 && left < length && right < length,
          ErrorCode::kShapeMismatch,
          "ReflectPad1d: padding must be shorter than the input");
  const int out_len = length + left + right;
  std::vector<int> source(static_cast<size_t>(out_len));
  for (int i = 0; i < out_len; ++i) {
    int j = i - left;
    if (j < 0) j = -j;
    if (j >= length) j = 2 * (length - 1) - j;
    source[static_cast<size_t>(i)] = j;
  }
  Tensor out({x.shape()[0], x.shape()[1], out_len});
  for (int r = 0; r < rows; ++r) {
    const double* src = x.value().data() + static_cast<size_t>(r) * length;
    double* dst = out.data() + static_cast<size_t>(r) * out_len;
    for (int i = 0; i < out_len; ++i) dst[i] = src[source[i]];
  }
  return MakeResult(std::move(out), {x},
                    [rows, length, out_len, source = std::move(source)](Node& self) {
                      Tensor* g = GradOf(self, 0);
                      if (!g) return;
                      for (int r = 0; r < rows; ++r) {
                        const double* dy =
                            self.grad.data() + static_cast<size_t>(r) * out_len;
                        double* dx = g->data() + static_cast<size_t>(r) * length;
                        for (int i = 0; i < out_len; ++i) dx[source[i]] += dy[i];
                      }
                    });
}

Var AvgPool1d(const Var& x, int kernel, int stride, int padding) {
  CheckRank3(x, "AvgPool1d");
  const int rows = x.shape()[0] * x.shape()[1];
  const int length = x.shape()[2];
  const int out_len = (length + 2 * padding - kernel) / stride + 1;
  Require(out_len >= 1, ErrorCode::kShapeMismatch, "AvgPool1d: input too short");
  const double inv = 1.0 / kernel;
  Tensor out({x.shape()[0], x.shape()[1], out_len});
  for (int r = 0; r < rows; ++r) {
    const double* src = x.value().data() + static_cast<size_t>(r) * length;
    double* dst = out.data() + static_cast<size_t>(r) * out_len;
    for (int t = 0; t < out_len; ++t) {
      double s = 0.0;
      for (int k = 0; k < kernel; ++k) {
        const int i = t * stride - padding + k;
        if (i >= 0 && i < length) s += src[i];
      }
      dst[t] = s * inv;
    }
  }
  return MakeResult(std::move(out), {x}, [=](Node& self) {
    Tensor* g = GradOf(self, 0);
    if (!g) return;
    for (int r = 0; r < rows; ++r) {
      const double* dy = self.grad.data() + static_cast<size_t>(r) * out_len;
      double* dx = g->data() + static_cast<size_t>(r) * length;
      for (int t = 0; t < out_len; ++t) {
        const double d = dy[t] * inv;
        for (int k = 0; k < kernel; ++k) {
          const int i = t * stride - padding + k;
          if (i >= 0 && i < length) dx[i] += d;
        }
      }
    }
  });
}

Var FoldPeriod(const Var& x, int period) {
  CheckRank3(x, "FoldPeriod");
  Require(x.shape()[0] == 1, ErrorCode::kShapeMismatch,
          "FoldPeriod expects batch 1");
  const int channels = x.shape()[1];
  const int length = x.shape()[2];
  Require(period >= 1 && length % period == 0, ErrorCode::kShapeMismatch,
          "FoldPeriod: length must be a multiple of the period");
  const int rows = length / period;
  Tensor out({period, channels, rows});
  auto index = [=](int col, int c, int r) {
    return (static_cast<size_t>(col) * channels + c) * rows + r;
  };
  for (int c = 0; c < channels; ++c) {
    const double* src = x.value().data() + static_cast<size_t>(c) * length;
    for (int r = 0; r < rows; ++r) {
      for (int col = 0; col < period; ++col) {
        out[index(col, c, r)] = src[r * period + col];
      }
    }
  }
  return MakeResult(std::move(out), {x}, [=](Node& self) {
    Tensor* g = GradOf(self, 0);
    if (!g) return;
    for (int c = 0; c < channels; ++c) {
      double* dx = g->data() + static_cast<size_t>(c) * length;
      for (int r = 0; r < rows; ++r) {
        for (int col = 0; col < period; ++col) {
          dx[r * period + col] += self.grad[index(col, c, r)];
        }
      }
    }
  });
}

}  // namespace vclone
