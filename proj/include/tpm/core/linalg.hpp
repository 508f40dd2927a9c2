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

#include "tpm/core/operator.hpp"

namespace tpm {

// Absolute max-norm tolerance on X - X^dag accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

struct Eigensystem {
  RVec values;   // ascending
  CMat vectors;  // columns are eigenvectors
};

// Eigendecomposition of a Hermitian matrix. The input is symmetrized first;
// throws NotHermitianError if ||x - x^dag||_max > tol.
Eigensystem hermitian_eig(const CMat& x, double tol = kHermitianTol);
Eigensystem hermitian_eig(const Operator& x, double tol = kHermitianTol);

double min_eigenvalue(const CMat& x, double tol = kHermitianTol);
double max_eigenvalue(const CMat& x, double tol = kHermitianTol);

// f(H) for Hermitian H via its eigendecomposition.
CMat hermitian_function(const CMat& h, const std::function<double(double)>& f);
// exp(-i t H) for Hermitian H.
CMat unitary_propagator(const CMat& h, double t);
// Principal square root of a PSD matrix (negative eigenvalues clipped).
CMat psd_sqrt(const CMat& x);
// Projection onto the PSD cone (negative eigenvalues set to zero).
CMat clip_psd(const CMat& x);
// ||U^dag U - id||_max.
double unitarity_residual(const CMat& u);
double max_abs(const CMat& x);
// Kronecker product of plain matrices.
CMat kron(const CMat& x, const CMat& y);

}  // namespace tpm
