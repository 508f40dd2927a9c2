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
#include <random>
#include <vector>

#include "tpm/core/operator.hpp"

namespace tpm {

// All randomized routines take an explicit engine so that results are a pure
// function of the seed.
using Rng = std::mt19937_64;

// Complex Ginibre matrix with i.i.d. standard normal real/imaginary parts.
CMat random_ginibre(int rows, int cols, Rng& rng);
// Haar-random unitary (QR of a Ginibre matrix with phase correction).
CMat random_unitary(int d, Rng& rng);
// Random Hermitian matrix (GUE-like).
CMat random_hermitian(int d, Rng& rng);
// Random density matrix of the given rank (Hilbert-Schmidt measure at full
// rank).
CMat random_density(int d, Rng& rng, int rank = -1);
// Random pure state vector.
CVec random_pure_state(int d, Rng& rng);
// Kraus operators of a random CPTP map d_in -> d_out with `count` operators,
// taken from the blocks of a Haar-random isometry.
std::vector<CMat> random_kraus(int d_in, int d_out, int count, Rng& rng);
// Random probability vector (flat Dirichlet).
std::vector<double> random_probabilities(int n, Rng& rng);

}  // namespace tpm
