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

#include "json.hpp"
#include "tpm/core/operator.hpp"
#include "tpm/process/process.hpp"
#include "tpm/sdp/sdp.hpp"

namespace tpm {

inline constexpr double kRetrieverTol = 1e-9;

// An entanglement retriever: Theta >= 0 on A (x) B (x) C together with a
// density operator eta on B such that eta (x) id_C - Tr_A Theta >= 0.
struct EntanglementRetriever {
  Operator theta;
  Operator eta;
};

struct RetrieverReport {
  double theta_positivity = 0.0;  // max(0, -lambda_min(Theta))
  double eta_positivity = 0.0;    // max(0, -lambda_min(eta))
  double eta_trace = 0.0;         // |Tr eta - 1|
  double dominance = 0.0;         // max(0, -lambda_min(eta (x) id - Tr_A Theta))
  double tol = kRetrieverTol;
  bool valid() const {
    return theta_positivity <= tol && eta_positivity <= tol &&
           eta_trace <= tol && dominance <= tol;
  }
  std::string summary() const;
};

// Theta must have exactly three factors (used by position) and eta must live
// on the second of them.
RetrieverReport validate_retriever(const EntanglementRetriever& r,
                                   double tol = kRetrieverTol);

struct RetrieverResult {
  double value = 0.0;  // E(W) = max Tr(Theta W) over retrievers
  EntanglementRetriever retriever;
  SdpSolution solution;
};

// The retriever cone as an SDP over blocks theta, eta and a slack block for
// eta (x) id_C - Tr_A Theta; the objective is left at zero.
SdpProblem retriever_problem(const Space& abc);

// Solves E(W). Throws NumericError if the solver does not reach optimality.
RetrieverResult retriever_value(const TpmProcess& w,
                                const SdpOptions& opts = {});

// Smallest integer d >= 1 with value <= d (within 1e-9): the environment
// cannot be simulated with a memory of dimension smaller than this.
int memory_dimension_bound(double value);

nlohmann::json retriever_to_json(const EntanglementRetriever& r);
EntanglementRetriever retriever_from_json(const nlohmann::json& j);

}  // namespace tpm
