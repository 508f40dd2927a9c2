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
#include <variant>
#include <vector>

#include "json.hpp"
#include "tpm/core/operator.hpp"

namespace tpm {

// Bath spectral densities of the resonant spin-boson model (hbar = 1, rates
// in rad/s). All correlation functions live in the frame rotating with the
// free Hamiltonian, f(u) = int J(w) exp(i (w0 - w) u) dw.
struct SingleMode {
  double g = 1.0;  // J(w) = g^2 delta(w - w0)
};
struct Lorentzian {
  double gamma0 = 1.0;  // J(w) = lambda^2 gamma0 / (2 pi ((w0 - w)^2 + lambda^2))
  double lambda = 1.0;
};
struct OhmicHardCutoff {
  double eta = 0.1;  // J(w) = eta w for 0 <= w <= omega_c
  double omega_c = 1.0;
};
struct Tabulated {
  // Piecewise-linear J on increasing nodes; zero outside [omega.front(),
  // omega.back()].
  std::vector<double> omega;
  std::vector<double> j;
};

struct SpectralDensity {
  std::variant<SingleMode, Lorentzian, OhmicHardCutoff, Tabulated> model;
  double omega0 = 1.0;

  // Throws ValidationError on non-positive rates or negative samples.
  void validate() const;
  std::string name() const;
  // Largest rate in the problem; time steps should satisfy dt * rate <= 0.05.
  double characteristic_rate() const;
  nlohmann::json to_json() const;
  static SpectralDensity from_json(const nlohmann::json& j);
};

// Lorentzian with vacuum Rabi frequency Omega = sqrt(2 gamma0 lambda -
// lambda^2) / 2 = ratio * lambda.
SpectralDensity lorentzian_from_rabi(double ratio, double lambda = 1.0);

// f(u). Throws NumericError if a tabulated integral does not evaluate to a
// finite value.
cplx bath_correlation(const SpectralDensity& sd, double u);

struct LaplaceValue {
  cplx value;
  bool near_branch_cut = false;  // Ohmic logarithm close to its cut
};

// Lap[f](w) for Re(w) > 0 in closed form (SingleMode, Lorentzian, Ohmic); used
// as a cross-check. Throws ValidationError for Re(w) <= 0 or Tabulated.
LaplaceValue laplace_f(const SpectralDensity& sd, cplx w);

}  // namespace tpm
