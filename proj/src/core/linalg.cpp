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

#include "tpm/core/linalg.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "tpm/core/errors.hpp"

namespace tpm {

Eigensystem hermitian_eig(const CMat& x, double tol) {
  if (x.rows() != x.cols()) {
    throw DimensionError("hermitian_eig: matrix is not square");
  }
  const double res = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (res > tol) {
    throw NotHermitianError("hermitian_eig: ||x - x^dag|| = " +
                            std::to_string(res) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (x + x.adjoint()));
  if (es.info() != Eigen::Success) {
    throw NumericError("hermitian_eig: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigensystem hermitian_eig(const Operator& x, double tol) {
  return hermitian_eig(x.matrix(), tol);
}

double min_eigenvalue(const CMat& x, double tol) {
  return hermitian_eig(x, tol).values(0);
}

double max_eigenvalue(const CMat& x, double tol) {
  RVec v = hermitian_eig(x, tol).values;
  return v(v.size() - 1);
}

CMat hermitian_function(const CMat& h,
                        const std::function<double(double)>& f) {
  Eigensystem es = hermitian_eig(h);
  RVec fv = es.values.unaryExpr(f);
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

CMat unitary_propagator(const CMat& h, double t) {
  Eigensystem es = hermitian_eig(h);
  CVec phase(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    phase(k) = std::exp(cplx(0.0, -t * es.values(k)));
  }
  return es.vectors * phase.asDiagonal() * es.vectors.adjoint();
}

CMat psd_sqrt(const CMat& x) {
  return hermitian_function(x, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

CMat clip_psd(const CMat& x) {
  return hermitian_function(x, [](double v) { return std::max(v, 0.0); });
}

double unitarity_residual(const CMat& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - CMat::Identity(u.rows(), u.cols()));
}

double max_abs(const CMat& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

CMat kron(const CMat& x, const CMat& y) { return Eigen::kroneckerProduct(x, y).eval(); }

}  // namespace tpm
