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

#include "tpm/spinboson/volterra.hpp"

#include <cmath>
#include <sstream>

#include "tpm/core/errors.hpp"

namespace tpm {

namespace {

// Index k with |x - k dt| negligible, or -1.
int grid_index(double x, double dt) {
  const double k = std::round(x / dt);
  return std::abs(x - k * dt) <= 1e-9 * std::max(1.0, std::abs(x)) ? static_cast<int>(k)
                                                                   : -1;
}

std::vector<cplx> march(const std::vector<cplx>& f, double dt) {
  const int n = static_cast<int>(f.size()) - 1;
  std::vector<cplx> q(n + 1);
  q[0] = 1.0;
  cplx f_prev = 0.0;  // memory integral F(t_k) at the previous step
  const cplx denom = 1.0 + dt * dt * f[0] / 4.0;
  for (int step = 0; step < n; ++step) {
    const int m = step + 1;
    cplx s = 0.5 * f[m] * q[0];
    for (int k = 1; k < m; ++k) s += f[m - k] * q[k];
    s *= dt;
    q[m] = (q[step] - dt / 2.0 * (f_prev + s)) / denom;
    f_prev = s + dt / 2.0 * f[0] * q[m];
  }
  return q;
}

std::vector<cplx> sample_f(const SpectralDensity& sd, int n, double dt) {
  std::vector<cplx> f(n + 1);
  for (int k = 0; k <= n; ++k) f[k] = bath_correlation(sd, k * dt);
  return f;
}

}  // namespace

cplx AmplitudeSolution::q_at(double t) const {
  if (t < 0.0 || t > t_max() * (1.0 + 1e-12))
    throw ValidationError("amplitude requested outside the solved window");
  const double x = t / dt;
  const int k = std::min(static_cast<int>(std::floor(x)), steps() - 1);
  if (k < 0) return q[0];
  const double w = x - k;
  return (1.0 - w) * q[k] + w * q[k + 1];
}

AmplitudeSolution solve_amplitude(const SpectralDensity& sd, double t_max,
                                  double dt, const AmplitudeOptions& opts) {
  sd.validate();
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw ValidationError("solve_amplitude: t_max must be positive");
  if (!(dt > 0.0) || dt > t_max)
    throw ValidationError("solve_amplitude: dt must lie in (0, t_max]");
  const int n = static_cast<int>(std::ceil(t_max / dt - 1e-9));
  AmplitudeSolution sol;
  sol.dt = t_max / n;
  sol.f = sample_f(sd, n, sol.dt);
  sol.q = march(sol.f, sol.dt);

  const double rate = sd.characteristic_rate();
  if (sol.dt * rate > 0.05) {
    std::ostringstream os;
    os << "time step dt*rate = " << sol.dt * rate << " exceeds 0.05";
    sol.warnings.push_back(os.str());
  }
  double qmax = 0.0;
  for (const cplx& v : sol.q) qmax = std::max(qmax, std::abs(v));
  if (qmax > 1.0 + 1e-6) {
    std::ostringstream os;
    os << "|q| reaches " << qmax << " > 1; the step is too coarse";
    sol.warnings.push_back(os.str());
  }
  if (opts.check_step) {
    const std::vector<cplx> fine = march(sample_f(sd, 2 * n, sol.dt / 2.0), sol.dt / 2.0);
    const double diff = std::abs(fine.back() - sol.q.back());
    if (diff > opts.step_tol) {
      std::ostringstream os;
      os << "halving dt moves q(t_max) by " << diff << " > " << opts.step_tol;
      sol.warnings.push_back(os.str());
    }
  }
  return sol;
}

double memory_functional(const AmplitudeSolution& sol, const SpectralDensity& sd,
                         double t, double tau) {
  if (!(t >= 0.0) || !(tau >= 0.0))
    throw ValidationError("memory_functional: t and tau must be non-negative");
  if (t + tau > sol.t_max() * (1.0 + 1e-12))
    throw ValidationError("memory_functional: t + tau exceeds the solved window");
  const double dt = sol.dt;
  const int i = grid_index(t, dt), j = grid_index(tau, dt);
  if (i >= 0 && j >= 0) {
    if (i == 0 || j == 0) return std::norm(sol.q[i]);
    cplx acc = 0.0;
    for (int r = 0; r <= i; ++r) {
      cplx inner = 0.0;
      for (int s = 0; s <= j; ++s) {
        const double ws = (s == 0 || s == j) ? 0.5 : 1.0;
        inner += ws * sol.f[i + j - r - s] * sol.q[s];
      }
      const double wr = (r == 0 || r == i) ? 0.5 : 1.0;
      acc += wr * inner * sol.q[r];
    }
    return std::norm(sol.q[i] + dt * dt * acc);
  }
  const cplx qt = sol.q_at(t);
  if (t == 0.0 || tau == 0.0) return std::norm(qt);
  const int n1 = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-9)));
  const int n2 = std::max(1, static_cast<int>(std::ceil(tau / dt - 1e-9)));
  const double h1 = t / n1, h2 = tau / n2;
  std::vector<cplx> q2(n2 + 1);
  for (int s = 0; s <= n2; ++s) q2[s] = sol.q_at(s * h2);
  cplx acc = 0.0;
  for (int r = 0; r <= n1; ++r) {
    cplx inner = 0.0;
    for (int s = 0; s <= n2; ++s) {
      const double ws = (s == 0 || s == n2) ? 0.5 : 1.0;
      inner += ws * bath_correlation(sd, t + tau - r * h1 - s * h2) * q2[s];
    }
    const double wr = (r == 0 || r == n1) ? 0.5 : 1.0;
    acc += wr * inner * sol.q_at(r * h1);
  }
  return std::norm(qt + h1 * h2 * acc);
}

bool amplitude_non_monotone(const AmplitudeSolution& sol, double tol) {
  for (std::size_t k = 1; k < sol.q.size(); ++k)
    if (std::abs(sol.q[k]) > std::abs(sol.q[k - 1]) + tol) return true;
  return false;
}

}  // namespace tpm
