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
#include <utility>
#include <vector>

#include "json.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/process/process.hpp"

namespace tpm {

struct ProtocolResult {
  // Pr(y = x | x) for the four Pauli encodings "I", "X", "Y", "Z".
  std::vector<std::pair<std::string, double>> per_letter;
  double average = 0.0;
  double inconclusive = 0.0;  // average probability of the inconclusive effect
  // | |X|^{-1/2} sum_x Pr(y = x | x) - Tr(Theta W) |
  double identity_residual = 0.0;
  TesterReport tester;
};

// Letter-discrimination game for a qubit A: Alice applies the Pauli unitary
// U_x (A -> A'), Bob decodes with the tester E_x = F_x * Theta (link product
// over A) where F_x are the Bell projectors on A (x) A', plus the
// inconclusive effect id_A' (x) eta (x) id_C - sum_x E_x. Throws
// ValidationError if d_A != 2, if the tester is invalid, or if the internal
// identity check fails beyond 1e-8.
ProtocolResult discrimination_protocol(const EntanglementRetriever& theta,
                                       const TpmProcess& w);

nlohmann::json protocol_to_json(const ProtocolResult& r);

}  // namespace tpm
