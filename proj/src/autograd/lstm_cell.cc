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

#include "autograd/lstm_cell.h"

#include <cmath>

#include "common/error.h"

namespace vclone {
namespace {

inline double Sigm(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Var LstmCell(const Var& x, const Var& h, const Var& c, const Var& w_ih,
             const Var& w_hh, const Var& bias) {
  const int n = x.rows();
  const int hidden = h.cols();
  Require(w_ih.rows() == x.cols() && w_ih.cols() == 4 * hidden &&
              w_hh.rows() == hidden && w_hh.cols() == 4 * hidden &&
              h.rows() == n && c.rows() == n && c.cols() == hidden &&
              static_cast<int>(bias.value().size()) == 4 * hidden,
          ErrorCode::kShapeMismatch, "LstmCell: inconsistent shapes");

  RowMatrix gates = x.value().AsMatrix() * w_ih.value().AsMatrix();
  gates.noalias() += h.value().AsMatrix() * w_hh.value().AsMatrix();
  Eigen::Map<const Eigen::RowVectorXd> b(bias.value().data(), 4 * hidden);
  gates.rowwise() += b;

  // Activated gates and tanh(c_next) are kept for the backward pass.
  auto acts = std::make_shared<RowMatrix>(n, 4 * hidden);
  auto tanh_c = std::make_shared<RowMatrix>(n, hidden);
  Tensor out = Tensor::Matrix(n, 2 * hidden);
  const Tensor& cv = c.value();
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < hidden; ++j) {
      const double ig = Sigm(gates(r, j));
      const double fg = Sigm(gates(r, hidden + j));
      const double gg = std::tanh(gates(r, 2 * hidden + j));
      const double og = Sigm(gates(r, 3 * hidden + j));
      (*acts)(r, j) = ig;
      (*acts)(r, hidden + j) = fg;
      (*acts)(r, 2 * hidden + j) = gg;
      (*acts)(r, 3 * hidden + j) = og;
      const double c_next = fg * cv.at(r, j) + ig * gg;
      const double tc = std::tanh(c_next);
      (*tanh_c)(r, j) = tc;
      out.at(r, j) = og * tc;
      out.at(r, hidden + j) = c_next;
    }
  }

  return MakeResult(
      std::move(out), {x, h, c, w_ih, w_hh, bias},
      [n, hidden, acts, tanh_c](Node& self) {
        const Tensor& cv = self.inputs[2]->value;
        RowMatrix d_gates(n, 4 * hidden);
        RowMatrix d_c(n, hidden);
        for (int r = 0; r < n; ++r) {
          for (int j = 0; j < hidden; ++j) {
            const double ig = (*acts)(r, j);
            const double fg = (*acts)(r, hidden + j);
            const double gg = (*acts)(r, 2 * hidden + j);
            const double og = (*acts)(r, 3 * hidden + j);
            const double tc = (*tanh_c)(r, j);
            const double dh = self.grad.at(r, j);
            const double dcn = self.grad.at(r, hidden + j) +
                               dh * og * (1.0 - tc * tc);
            d_gates(r, j) = dcn * gg * ig * (1.0 - ig);
            d_gates(r, hidden + j) = dcn * cv.at(r, j) * fg * (1.0 - fg);
            d_gates(r, 2 * hidden + j) = dcn * ig * (1.0 - gg * gg);
            d_gates(r, 3 * hidden + j) = dh * tc * og * (1.0 - og);
            d_c(r, j) = dcn * fg;
          }
        }
        if (Tensor* g = GradOf(self, 0)) {
          g->AsMatrix().noalias() +=
              d_gates * self.inputs[3]->value.AsMatrix().transpose();
        }
        if (Tensor* g = GradOf(self, 1)) {
          g->AsMatrix().noalias() +=
              d_gates * self.inputs[4]->value.AsMatrix().transpose();
        }
        if (Tensor* g = GradOf(self, 2)) g->AsMatrix() += d_c;
        if (Tensor* g = GradOf(self, 3)) {
          g->AsMatrix().noalias() +=
              self.inputs[0]->value.AsMatrix().transpose() * d_gates;
        }
        if (Tensor* g = GradOf(self, 4)) {
          g->AsMatrix().noalias() +=
              self.inputs[1]->value.AsMatrix().transpose() * d_gates;
        }
        if (Tensor* g = GradOf(self, 5)) {
          Eigen::Map<Eigen::RowVectorXd> db(g->data(), 4 * hidden);
          db += d_gates.colwise().sum();
        }
      });
}

}  // namespace vclone
