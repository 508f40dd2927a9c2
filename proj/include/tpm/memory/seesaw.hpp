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
#include <vector>

#include "tpm/core/operator.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/process/process.hpp"
#include "tpm/sdp/sdp.hpp"

namespace tpm {

struct SeesawOptions {
  int ensemble_size = 2;
  int restarts = 8;
  std::uint64_t seed = 1;
  double tol = 1e-9;     // stop once a round improves by less than this
  int max_rounds = 100;  // per restart
  SdpOptions sdp;
};

struct SeesawResult {
  double value = 0.0;   // best Tr(X Omega) found; attained by `ensemble`
  CmEnsemble ensemble;  // the optimizing classical-memory ensemble
  int best_restart = 0;
  std::vector<double> restart_values;
  std::vector<int> restart_rounds;
};

// Lower bound on max Tr(X Omega) over classical-memory processes Omega on the
// space of X (three factors, used by position), by alternating between the
// states {w_l rho_l} and the channels {N_l} with the other held fixed. Each
// restart r is seeded with seed + r, so results do not depend on threading.
SeesawResult cm_maximize(const Operator& x, const SeesawOptions& opts = {});
// Same computation with the restarts run sequentially.
SeesawResult cm_maximize_serial(const Operator& x,
                                const SeesawOptions& opts = {});

// lambda* = max over classical memory of Tr(Theta Omega) (lower bound).
SeesawResult classical_threshold_seesaw(const EntanglementRetriever& theta,
                                        const SeesawOptions& opts = {});

struct RelaxationResult {
  double value = 0.0;
  SdpSolution solution;
};

// Upper bound on lambda*: max Tr(X Omega) over process matrices Omega whose
// partial transpose on the first factor is positive semidefinite. Every
// classical-memory process is of this kind. Throws NumericError on solver
// failure.
RelaxationResult ppt_relaxation_upper(const Operator& x,
                                      const SdpOptions& opts = {});

}  // namespace tpm
