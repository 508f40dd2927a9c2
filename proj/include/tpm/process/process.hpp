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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tpm/core/operator.hpp"

namespace tpm {

// Residual tolerance for every validity check of physical objects.
inline constexpr double kValidityTol = 1e-9;

// Constraint residuals of a candidate process matrix. Factors are used by
// position: (A, B, C) = (first, second, third label).
struct ValidityReport {
  double positivity = 0.0;  // max(0, -lambda_min(W))
  double trace = 0.0;       // |Tr W - d_B|
  double causality = 0.0;   // ||d_B Tr_C W - Tr_BC W (x) id_B||_max
  double tol = kValidityTol;

  bool valid() const {
    return positivity <= tol && trace <= tol && causality <= tol;
  }
  nlohmann::json to_json() const;
  std::string summary() const;
};

// Throws LabelError unless w lives on exactly three factors.
ValidityReport validate_tpm(const Operator& w, double tol = kValidityTol);

// A validated process matrix on A (x) B (x) C.
class TpmProcess {
 public:
  // Throws ValidationError (with the residuals in the message) if invalid.
  explicit TpmProcess(Operator w, double tol = kValidityTol);

  const Operator& w() const { return w_; }
  const Space& space() const { return w_.space(); }
  int d_a() const { return w_.space()[0].dim; }
  int d_b() const { return w_.space()[1].dim; }
  int d_c() const { return w_.space()[2].dim; }
  const std::string& label_a() const { return w_.space()[0].name; }
  const std::string& label_b() const { return w_.space()[1].name; }
  const std::string& label_c() const { return w_.space()[2].name; }
  const ValidityReport& report() const { return report_; }
  // Reduced initial state Tr_BC W / d_B on A.
  Operator reduced_state() const;

 private:
  Operator w_;
  ValidityReport report_;
};

// An instrument branch E (A -> B) or an effect factor F (on C), with
// E^dag E <= id.
class MeasurementOp {
 public:
  explicit MeasurementOp(CMat e, double tol = kValidityTol);

  const CMat& matrix() const { return e_; }
  int dim_in() const { return static_cast<int>(e_.cols()); }
  int dim_out() const { return static_cast<int>(e_.rows()); }

 private:
  CMat e_;
};

// Choi operator of a CPTP map on in (x) out: N >= 0, Tr_out N = id_in.
class ChoiChannel {
 public:
  explicit ChoiChannel(Operator n, double tol = kValidityTol);
  static ChoiChannel from_kraus(const std::vector<CMat>& kraus,
                                const Subsystem& in, const Subsystem& out);
  static ChoiChannel identity(const Subsystem& in, const Subsystem& out);

  const Operator& op() const { return n_; }
  const Subsystem& in() const { return n_.space()[0]; }
  const Subsystem& out() const { return n_.space()[1]; }
  // N(rho) for rho on the input factor.
  CMat apply(const CMat& rho) const;

 private:
  Operator n_;
};

// Finite classical-memory ensemble {w_l, rho_l, N_l}.
struct CmEnsemble {
  std::vector<double> weights;
  std::vector<Operator> states;  // on A
  std::vector<ChoiChannel> channels;

  // Throws ValidationError on invalid weights or states.
  void validate(double tol = kValidityTol) const;
};

// Effects of a two-time tester on the process space.
struct Tester {
  std::vector<std::pair<std::string, Operator>> effects;
};

struct TesterReport {
  double positivity = 0.0;   // max over effects of max(0, -lambda_min)
  double product_c = 0.0;    // ||T - Tr_C T / d_C (x) id_C||_max
  double normalization = 0.0;  // ||Tr_BC T / d_C - id_A||_max
  double tol = kValidityTol;
  bool valid() const {
    return positivity <= tol && product_c <= tol && normalization <= tol;
  }
};

// Factors are used by position (first factor plays the role of A, which may
// carry an ancilla label such as A').
TesterReport validate_tester(const Tester& t, double tol = kValidityTol);
// Outcome distribution Tr(E_x W); throws ValidationError on an invalid tester.
std::vector<std::pair<std::string, double>> tester_apply(const Tester& t,
                                                         const TpmProcess& w);

// g2 = Tr[(M_E^T (x) F^dag F) W] = [M_E (x) (F^dag F)^T] * W: the probability of
// the branch E at time t followed by F at t + tau.
double tpm_correlation(const TpmProcess& w, const MeasurementOp& e,
                       const MeasurementOp& f);

using HeisenbergMap = std::function<CMat(const CMat&)>;
// X -> sum_k K^dag X K.
HeisenbergMap heisenberg_dual(std::vector<CMat> kraus);
// Tr[E^dag Phi(F^dag F) E rho]; throws ValidationError if Phi(id) != id.
double regression_correlation(const CMat& rho, const HeisenbergMap& heis,
                              const MeasurementOp& e, const MeasurementOp& f);

// W = rho (x) N.
TpmProcess markov_process(const Operator& rho, const ChoiChannel& n);
// W = sum_l w_l rho_l (x) N_l.
TpmProcess cm_mixture(const CmEnsemble& ens);

// Labels used for processes built from dynamics.
struct ProcessLabels {
  std::string a = "A";
  std::string b = "B";
  std::string c = "C";
};

// Process matrix of the two-time scenario generated by u1 = U(t|0) and
// u2 = U(t+tau|t) on S (x) Env (system factor first) from rho_s (x) rho_env:
//   W = sum_{mu,nu} <mu|rho_SEnv(t)|nu>_Env (x) N_{mu nu},
// with N_{mu nu} the Choi operator of X -> Tr_Env[u2 (X (x) |mu><nu|) u2^dag].
TpmProcess process_from_dynamics(const CMat& u1, const CMat& u2,
                                 const CMat& rho_s, const CMat& rho_env,
                                 const ProcessLabels& labels = {});

// u2 = sum_mu V_mu (x) |mu><f(mu)|; throws ValidationError if f is not a
// bijection or a V_mu is not unitary.
TpmProcess dephasing_process(const std::vector<CMat>& v,
                             const std::vector<int>& f, const CMat& rho_s,
                             const CMat& rho_env, const CMat& u1,
                             const ProcessLabels& labels = {});

// {"kind": "tpm", "dims": [d_A, d_B, d_C], "labels": ..., "entries": ...}
nlohmann::json process_to_json(const TpmProcess& w);
// Parses an operator (the "kind" tag is optional); validation is left to
// the caller so that invalid inputs can be reported.
Operator process_operator_from_json(const nlohmann::json& j);

}  // namespace tpm
