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
#include "tpm/core/random.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/process/process.hpp"

namespace tpm {

// Random process matrix from unitary system-environment dynamics with an
// environment of dimension d_env; the three factors of abc share the system
// dimension.
TpmProcess random_tpm(int d_env, Rng& rng, const Space& abc);

// Random classical-memory ensemble with `size` atoms on the space abc.
CmEnsemble random_cm_ensemble(const Space& abc, int size, Rng& rng);

// Random entanglement retriever: a random positive Theta rescaled so that
// eta (x) id_C - Tr_A Theta >= 0 is tight for a random full-rank eta.
EntanglementRetriever random_retriever(const Space& abc, Rng& rng);

// Battery sample k is drawn from Rng(seed + k) with ensemble size 1 + k % 8,
// so every sample is reproducible on its own.
std::vector<Operator> cm_battery(const Space& abc, int count,
                                 std::uint64_t seed);
std::vector<Operator> tpm_battery(const Space& abc, int count,
                                  std::uint64_t seed);

// min_k Re Tr(Z Omega_k), in parallel and as a serial reference.
double battery_min(const Operator& z, const std::vector<Operator>& samples);
double battery_min_serial(const Operator& z,
                          const std::vector<Operator>& samples);

}  // namespace tpm
