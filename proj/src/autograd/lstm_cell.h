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

#ifndef VCLONE_AUTOGRAD_LSTM_CELL_H_
#define VCLONE_AUTOGRAD_LSTM_CELL_H_

#include "autograd/variable.h"

namespace vclone {

// One LSTM step for n rows in parallel. Gate layout along the 4h axis is
// input, forget, cell, output. Returns (n x 2h) = [h_next | c_next].
Var LstmCell(const Var& x, const Var& h, const Var& c, const Var& w_ih,
             const Var& w_hh, const Var& bias);

}  // namespace vclone

#endif  // VCLONE_AUTOGRAD_LSTM_CELL_H_
