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

#include <cstdint>
#include <string>
#include <vector>

#include "tpm/core/frame.hpp"
#include "tpm/core/operator.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/memory/seesaw.hpp"
#include "tpm/process/process.hpp"

namespace tpm {

// Which sign of the denominator 1/d_A - Tr(Theta Omega) the ratio defining
// kappa is minimized over. kPositive is the printed definition and requires
// the denominator to be positive on every sampled classical process;
// kNegative treats retrievers whose classical threshold exceeds 1/d_A and
// returns the largest admissible (negative) kappa, sup N/D over D < 0.
enum class KappaBranch { kPositive, kNegative };
std::string to_string(KappaBranch b);

struct KappaOptions {
  KappaBranch branch = KappaBranch::kPositive;
  SeesawOptions seesaw;
  int battery = 100;  // random classical-memory samples for the sign check
  int max_iter = 50;  // Dinkelbach iterations
  double tol = 1e-9;
};

struct KappaResult {
  double kappa = 0.0;
  KappaBranch branch = KappaBranch::kPositive;
  bool heuristic = true;  // see-saw estimate, not a certified optimum
  int iterations = 0;
  std::vector<Operator> samples;  // classical processes visited
};

// Heuristic kappa(Theta, Z0) by Dinkelbach iterations whose subproblems are
// solved with cm_maximize. Throws ValidationError if Z0 is negative on a random
// process battery or if the denominator changes sign on the sampled region
// ("kappa undefined on sampled region").
KappaResult kappa(const EntanglementRetriever& theta, const Operator& z0,
                  const KappaOptions& opts = {});

struct MemoryWitness {
  Operator z;
  EntanglementRetriever theta;
  Operator z0;
  double kappa = 0.0;
  double battery_min = 0.0;  // min Tr(Z Omega) over the classical battery
};

// Z = Z0 + kappa (Theta - id/(d_A d_B)), checked on `battery` random
// classical-memory samples plus any `extra` samples; throws ValidationError
// if Tr(Z Omega) < -1e-6 on any of them.
MemoryWitness build_witness(const EntanglementRetriever& theta,
                            const Operator& z0, double kappa_value,
                            int battery = 100, std::uint64_t seed = 7,
                            const std::vector<Operator>& extra = {});

struct CorrelationTerm {
  int i = 0;  // index into the A (x) B frame
  int j = 0;  // index into the C frame
  double coefficient = 0.0;
  std::vector<MeasurementOp> e;  // instrument realizing frame element i
  MeasurementOp f{CMat::Identity(1, 1)};
};

struct CorrelationDecomposition {
  std::vector<CorrelationTerm> terms;
  // sum_k coefficient_k sum_gamma g2(W, E_gamma, F).
  double evaluate(const TpmProcess& w) const;
};

// Expands Tr(Z W) into two-point correlations of fixed instruments: with
// dual frames, d_ij = Tr[(dual_i (x) dual_j) Z]; each A (x) B frame element
// becomes the instrument of Kraus operators of its transpose, each C frame
// element P_j the effect F_j = sqrt(P_j). Elements with operator norm above
// one are rescaled and the factor moved into the coefficient. Throws
// ValidationError for frames that are not informationally complete.
CorrelationDecomposition witness_to_correlations(const Operator& z,
                                                 const OperatorFrame& frame_ab,
                                                 const OperatorFrame& frame_c);

}  // namespace tpm
