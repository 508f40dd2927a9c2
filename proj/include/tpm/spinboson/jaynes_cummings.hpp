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

#include <variant>

#include "tpm/core/operator.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/process/process.hpp"

namespace tpm {

struct Vacuum {};
struct Fock {
  int n = 0;
};
struct Thermal {
  double beta = 1.0;  // dimensionless, beta * hbar * omega0
};
using EnvInit = std::variant<Vacuum, Fock, Thermal>;

// Resonant single-mode Jaynes-Cummings model H = g (b^dag s + s^dag b) in the
// rotating frame, system initially excited. The field is truncated at
// fock_cutoff photons (fock_cutoff + 1 levels); cutoff 0 selects the default
// (n + 3 for vacuum/Fock, thermal_cutoff(beta) for thermal states).
struct JcModel {
  double g = 1.0;
  int fock_cutoff = 0;
  EnvInit env = Vacuum{};

  int cutoff() const;  // effective cutoff after defaults
  // Throws ValidationError if g <= 0 or the cutoff misses more than 1e-10 of
  // the initial field population.
  void validate() const;
  CMat hamiltonian() const;  // on qubit (x) Fock, qubit first, |g> = 0
  CMat env_state() const;
};

// Smallest cutoff c with exp(-beta c) < tail: both the Gibbs weight of the top
// kept level and the discarded tail are below `tail`.
int thermal_cutoff(double beta, double tail = 1e-10);

// Closed-form m(t, tau; n) for Fock state n, and its Gibbs mixture over n =
// 0..cutoff (throws ValidationError if the tail beyond cutoff is >= 1e-10).
double singlemode_fock_m(double g, double t, double tau, int n);
double singlemode_thermal_m(double g, double t, double tau, double beta,
                            int cutoff);

// Process matrix of the truncated model from exact unitaries (labels A, B,
// C). Throws NumericError if the top Fock level carries population > 1e-8 at
// t or t + tau.
TpmProcess jc_process_matrix(const JcModel& model, double t, double tau);

// Theta* = 2 |g><g|_B (x) |Psi-><Psi-|_AC with eta = |g><g|.
EntanglementRetriever theta_star();

// Left-hand side of the heat-flow inequality, in units of hbar omega0 / 2:
// 4 Im<N^{-1/2} sin(N^{1/2} tau) B^dag s cos(N^{1/2} tau)> +
// <cos(2 N^{1/2} tau) sigma_z>, with Heisenberg-picture operators at time t,
// B = g b and N = B^dag B. Throws NumericError on cutoff leakage.
double heat_inequality_lhs(const JcModel& model, double t, double tau);
// The heat bound LHS <= 1 expressed on the scale of m: (LHS + 1) / 2.
double heat_to_m(double lhs);

// <sigma_z(t)>, i.e. <H_S(t)> in units of hbar omega0 / 2.
double system_energy(const JcModel& model, double t);

}  // namespace tpm
