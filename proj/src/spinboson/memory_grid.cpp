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

#include "tpm/spinboson/memory_grid.hpp"

#include <string>

#include "tpm/core/errors.hpp"

namespace tpm {

namespace {

void check_args(const AmplitudeSolution& sol, int stride_t, int stride_tau,
                int n_t, int n_tau) {
  if (stride_t < 1 || stride_tau < 1 || n_t < 0 || n_tau < 0)
    throw ValidationError("memory_grid: strides must be >= 1 and counts >= 0");
  const long span = static_cast<long>(n_t) * stride_t + static_cast<long>(n_tau) * stride_tau;
  if (span > sol.steps())
    throw ValidationError("memory_grid: grid spans " + std::to_string(span) +
                          " steps but the solution has " + std::to_string(sol.steps()));
}

// Column j of the grid. With J = j stride_tau the inner tau-integral
//   h(x) = int_0^{tau_j} f(x + tau_j - s) q(s) ds
// is tabulated once for x on the t-grid, after which every m(t_i, tau_j) costs
// a single one-dimensional convolution.
void fill_column(const AmplitudeSolution& sol, int stride_t, int stride_tau,
                 int n_t, int j, RMat& out) {
  const double dt = sol.dt;
  const int big_j = j * stride_tau, big_k = n_t * stride_t;
  if (big_j == 0) {
    for (int i = 0; i <= n_t; ++i) out(i, j) = std::norm(sol.q[i * stride_t]);
    return;
  }
  std::vector<cplx> h(big_k + 1);
  for (int x = 0; x <= big_k; ++x) {
    cplx acc = 0.5 * (sol.f[x + big_j] * sol.q[0] + sol.f[x] * sol.q[big_j]);
    for (int s = 1; s < big_j; ++s) acc += sol.f[x + big_j - s] * sol.q[s];
    h[x] = dt * acc;
  }
  for (int i = 0; i <= n_t; ++i) {
    const int big_i = i * stride_t;
    cplx acc = 0.0;
    if (big_i > 0) {
      acc = 0.5 * (h[big_i] * sol.q[0] + h[0] * sol.q[big_i]);
      for (int r = 1; r < big_i; ++r) acc += h[big_i - r] * sol.q[r];
    }
    out(i, j) = std::norm(sol.q[big_i] + dt * acc);
  }
}

}  // namespace

RMat memory_grid(const AmplitudeSolution& sol, int stride_t, int stride_tau,
                 int n_t, int n_tau) {
  check_args(sol, stride_t, stride_tau, n_t, n_tau);
  RMat out(n_t + 1, n_tau + 1);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j <= n_tau; ++j) fill_column(sol, stride_t, stride_tau, n_t, j, out);
  return out;
}

RMat memory_grid_serial(const AmplitudeSolution& sol, int stride_t,
                        int stride_tau, int n_t, int n_tau) {
  check_args(sol, stride_t, stride_tau, n_t, n_tau);
  RMat out(n_t + 1, n_tau + 1);
  for (int j = 0; j <= n_tau; ++j) fill_column(sol, stride_t, stride_tau, n_t, j, out);
  return out;
}

}  // namespace tpm
