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

#include "tpm/spinboson/jaynes_cummings.hpp"

#include <cmath>
#include <sstream>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"

namespace tpm {

namespace {

constexpr double kTail = 1e-10;
constexpr double kLeakage = 1e-8;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CMat lowering_qubit() {
  CMat s = CMat::Zero(2, 2);
  s(0, 1) = 1.0;  // |g><e|
  return s;
}

CMat annihilation(int levels) {
  CMat b = CMat::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

CMat excited_qubit() {
  CMat e = CMat::Zero(2, 2);
  e(1, 1) = 1.0;
  return e;
}

// sin(sqrt(x) tau) / sqrt(x) for x >= 0, with its Taylor series near 0.
double sin_over_sqrt(double x, double tau) {
  const double a = std::sqrt(x) * tau;
  if (a < 1e-4) return tau * (1.0 - a * a / 6.0 + a * a * a * a / 120.0);
  return std::sin(a) / std::sqrt(x);
}

// Weight of |e, cutoff>, the only truncated state that would couple to the
// missing level cutoff + 1.
double top_weight(const CMat& rho, int levels) {
  return std::abs(rho(levels + levels - 1, levels + levels - 1));
}

CMat evolved_state(const JcModel& model, double t) {
  const CMat u = unitary_propagator(model.hamiltonian(), t);
  const CMat rho0 = kron(excited_qubit(), model.env_state());
  return u * rho0 * u.adjoint();
}

void check_leakage(const JcModel& model, const std::vector<double>& times) {
  const int levels = model.cutoff() + 1;
  for (double s : times) {
    const double w = top_weight(evolved_state(model, s), levels);
    if (w > kLeakage) {
      std::ostringstream os;
      os << "Fock cutoff " << model.cutoff() << " insufficient: top level carries "
         << w << " > " << kLeakage << " at time " << s;
      throw NumericError(os.str());
    }
  }
}

}  // namespace

int thermal_cutoff(double beta, double tail) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ValidationError("thermal state: beta must be positive and finite");
  if (!(tail > 0.0 && tail < 1.0))
    throw ValidationError("thermal state: tail must lie in (0, 1)");
  return std::max(1, static_cast<int>(std::floor(-std::log(tail) / beta)) + 1);
}

int JcModel::cutoff() const {
  if (fock_cutoff > 0) return fock_cutoff;
  return std::visit(Overloaded{[](const Vacuum&) { return 3; },
                               [](const Fock& f) { return f.n + 3; },
                               [](const Thermal& th) { return thermal_cutoff(th.beta); }},
                    env);
}

void JcModel::validate() const {
  if (!(g > 0.0) || !std::isfinite(g))
    throw ValidationError("Jaynes-Cummings: g must be positive");
  if (fock_cutoff < 0) throw ValidationError("Jaynes-Cummings: negative Fock cutoff");
  const int c = cutoff();
  std::visit(Overloaded{[](const Vacuum&) {},
                        [c](const Fock& f) {
                          if (f.n < 0)
                            throw ValidationError("Jaynes-Cummings: negative Fock number");
                          if (f.n > c)
                            throw ValidationError(
                                "Jaynes-Cummings: Fock number exceeds the cutoff");
                        },
                        [c](const Thermal& th) {
                          if (!(th.beta > 0.0) || !std::isfinite(th.beta))
                            throw ValidationError("Jaynes-Cummings: beta must be positive");
                          if (std::exp(-th.beta * (c + 1)) >= kTail)
                            throw ValidationError(
                                "Jaynes-Cummings: Fock cutoff misses more than 1e-10 of "
                                "the thermal population");
                        }},
             env);
}

CMat JcModel::hamiltonian() const {
  const int levels = cutoff() + 1;
  const CMat s = lowering_qubit();
  const CMat b = annihilation(levels);
  return g * (kron(s, b.adjoint()) + kron(s.adjoint(), b));
}

CMat JcModel::env_state() const {
  validate();
  const int levels = cutoff() + 1;
  CMat rho = CMat::Zero(levels, levels);
  std::visit(Overloaded{[&](const Vacuum&) { rho(0, 0) = 1.0; },
                        [&](const Fock& f) { rho(f.n, f.n) = 1.0; },
                        [&](const Thermal& th) {
                          double z = 0.0;
                          for (int n = 0; n < levels; ++n) z += std::exp(-th.beta * n);
                          for (int n = 0; n < levels; ++n)
                            rho(n, n) = std::exp(-th.beta * n) / z;
                        }},
             env);
  return rho;
}

double singlemode_fock_m(double g, double t, double tau, int n) {
  if (n < 0) throw ValidationError("singlemode_fock_m: negative Fock number");
  const double a = std::sqrt(n + 1.0) * g;
  const double b = std::sqrt(static_cast<double>(n)) * g;
  const double v = std::sin(a * t) * std::sin(a * tau) + std::cos(a * t) * std::cos(b * tau);
  return v * v;
}

double singlemode_thermal_m(double g, double t, double tau, double beta, int cutoff) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ValidationError("singlemode_thermal_m: beta must be positive");
  if (cutoff < 0) throw ValidationError("singlemode_thermal_m: negative cutoff");
  if (std::exp(-beta * (cutoff + 1)) >= kTail)
    throw ValidationError("singlemode_thermal_m: insufficient cutoff for beta");
  const double x = std::exp(-beta);
  double acc = 0.0;
  for (int n = 0; n <= cutoff; ++n)
    acc += (1.0 - x) * std::pow(x, n) * singlemode_fock_m(g, t, tau, n);
  return acc;
}

TpmProcess jc_process_matrix(const JcModel& model, double t, double tau) {
  model.validate();
  if (!(t >= 0.0) || !(tau >= 0.0))
    throw ValidationError("jc_process_matrix: times must be non-negative");
  check_leakage(model, {0.0, t, t + tau});
  const CMat h = model.hamiltonian();
  return process_from_dynamics(unitary_propagator(h, t), unitary_propagator(h, tau),
                               excited_qubit(), model.env_state());
}

EntanglementRetriever theta_star() {
  const Space abc({{"A", 2}, {"B", 2}, {"C", 2}});
  CVec v = CVec::Zero(8);
  v(0 * 4 + 0 * 2 + 1) = 1.0 / std::sqrt(2.0);   // |0>_A |g>_B |1>_C
  v(1 * 4 + 0 * 2 + 0) = -1.0 / std::sqrt(2.0);  // |1>_A |g>_B |0>_C
  CMat eta = CMat::Zero(2, 2);
  eta(0, 0) = 1.0;
  return {Operator(abc, 2.0 * v * v.adjoint()), Operator(Space({{"B", 2}}), eta)};
}

double heat_inequality_lhs(const JcModel& model, double t, double tau) {
  model.validate();
  if (!(t >= 0.0) || !(tau >= 0.0))
    throw ValidationError("heat_inequality_lhs: times must be non-negative");
  check_leakage(model, {0.0, t});
  const int levels = model.cutoff() + 1;
  const int dim = 2 * levels;
  // Heisenberg-picture expectations <X(t)> = Tr[rho(t) X]; every function of N
  // is diagonal in the qubit (x) Fock basis.
  const CMat rho = evolved_state(model, t);
  RVec d_sin(dim), d_cos(dim), d_cos2(dim), sz(dim);
  for (int q = 0; q < 2; ++q) {
    for (int n = 0; n < levels; ++n) {
      const int k = q * levels + n;
      const double number = model.g * model.g * n;  // eigenvalue of B^dag B
      d_sin(k) = sin_over_sqrt(number, tau);
      d_cos(k) = std::cos(std::sqrt(number) * tau);
      d_cos2(k) = std::cos(2.0 * std::sqrt(number) * tau);
      sz(k) = q == 1 ? 1.0 : -1.0;
    }
  }
  const CMat b_dag_sigma =
      model.g * kron(lowering_qubit(), annihilation(levels).adjoint());
  const CMat op = d_sin.asDiagonal() * b_dag_sigma * d_cos.asDiagonal();
  const double flow = (rho * op).trace().imag();
  const RVec energy_weight = d_cos2.cwiseProduct(sz);
  const double energy = (rho.diagonal().real().cwiseProduct(energy_weight)).sum();
  return 4.0 * flow + energy;
}

double heat_to_m(double lhs) { return (lhs + 1.0) / 2.0; }

double system_energy(const JcModel& model, double t) {
  model.validate();
  const int levels = model.cutoff() + 1;
  const CMat rho = evolved_state(model, t);
  double e = 0.0;
  for (int n = 0; n < levels; ++n) e += rho(levels + n, levels + n).real() - rho(n, n).real();
  return e;
}

}  // namespace tpm
