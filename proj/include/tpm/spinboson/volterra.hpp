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

#include <string>
#include <vector>

#include "tpm/spinboson/spectral.hpp"

namespace tpm {

struct AmplitudeOptions {
  // Re-solve with dt/2 and warn if the endpoint moves by more than step_tol.
  bool check_step = true;
  double step_tol = 1e-5;
};

// Single-excitation amplitude q on the uniform grid t_k = k dt, k = 0..n.
struct AmplitudeSolution {
  double dt = 0.0;
  std::vector<cplx> q;
  std::vector<cplx> f;  // f(t_k)
  std::vector<std::string> warnings;

  int steps() const { return static_cast<int>(q.size()) - 1; }
  double t_max() const { return dt * steps(); }
  // Linear interpolation of q inside the grid.
  cplx q_at(double t) const;
};

// Solves dq/dt = -int_0^t f(t - s) q(s) ds, q(0) = 1, by the trapezoidal rule
// in time combined with trapezoidal product integration of the memory term
// (second order, implicit in the newest sample). Throws ValidationError on
// bad arguments.
AmplitudeSolution solve_amplitude(const SpectralDensity& sd, double t_max,
                                  double dt, const AmplitudeOptions& opts = {});

// m(t, tau) = |q(t) + int_0^t int_0^tau f(t + tau - r - s) q(r) q(s) dr ds|^2
// by the 2-D trapezoidal rule. On-grid arguments use the stored samples;
// otherwise the integration nodes are spaced no wider than dt, q is
// interpolated and f evaluated from sd. Throws ValidationError unless
// t + tau <= t_max.
double memory_functional(const AmplitudeSolution& sol, const SpectralDensity& sd,
                         double t, double tau);

// True if |q| increases anywhere on the grid (a proxy for the breakdown of
// CP-divisibility of the reduced dynamics).
bool amplitude_non_monotone(const AmplitudeSolution& sol, double tol = 1e-12);

}  // namespace tpm
