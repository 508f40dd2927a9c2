// Copyright 2026 The tpmem Authors
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

#pragma once

#include "tpm/core/operator.hpp"
#include "tpm/spinboson/volterra.hpp"

namespace tpm {

// m(t_i, tau_j) on t_i = i stride_t dt (i = 0..n_t), tau_j = j stride_tau dt
// (j = 0..n_tau) from one amplitude solution, in O(N^3) total work rather than
// one O(N^2) double integral per point. Requires n_t stride_t + n_tau
// stride_tau <= sol.steps(). Columns are computed in parallel.
RMat memory_grid(const AmplitudeSolution& sol, int stride_t, int stride_tau,
                 int n_t, int n_tau);
// Serial reference implementation of the same kernel.
RMat memory_grid_serial(const AmplitudeSolution& sol, int stride_t,
                        int stride_tau, int n_t, int n_tau);

}  // namespace tpm
