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

#include "tpm/core/random.hpp"

#include <cmath>

#include "tpm/core/errors.hpp"

namespace tpm {

CMat random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

CMat random_unitary(int d, Rng& rng) {
  CMat g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const cplx rk = r(k, k);
    const double a = std::abs(rk);
    if (a > 0) q.col(k) *= rk / a;
  }
  return q;
}

CMat random_hermitian(int d, Rng& rng) {
  CMat g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

CMat random_density(int d, Rng& rng, int rank) {
  if (rank < 1 || rank > d) rank = d;
  CMat g = random_ginibre(d, rank, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CVec random_pure_state(int d, Rng& rng) {
  CMat g = random_ginibre(d, 1, rng);
  return g.col(0).normalized();
}

std::vector<CMat> random_kraus(int d_in, int d_out, int count, Rng& rng) {
  if (count < 1) throw DimensionError("random_kraus: need at least one operator");
  if (d_out * count < d_in) {
    throw DimensionError("random_kraus: d_out * count must be >= d_in");
  }
  // Isometry V: d_in -> d_out * count, V^dag V = id; K_k = rows block k.
  const int big = d_out * count;
  CMat g = random_ginibre(big, d_in, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(big, d_in);
  std::vector<CMat> kraus;
  for (int k = 0; k < count; ++k) kraus.push_back(q.block(k * d_out, 0, d_out, d_in));
  return kraus;
}

std::vector<double> random_probabilities(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0;
  for (auto& v : p) {
    v = e(rng);
    s += v;
  }
  for (auto& v : p) v /= s;
  return p;
}

}  // namespace tpm
