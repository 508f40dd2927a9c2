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

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "tpm/core/space.hpp"

namespace tpm {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Dense complex operator on a labeled space. Immutable value type: all
// algebra returns new operators.
class Operator {
 public:
  // The scalar 0 on the empty space.
  Operator();
  // Throws DimensionError unless `m` is square of size space.dim().
  Operator(Space space, CMat m);

  static Operator identity(const Space& space);
  static Operator zero(const Space& space);
  static Operator scalar(cplx value);
  // Rank-one |v><v| on `space`.
  static Operator projector(const Space& space, const CVec& v);

  const Space& space() const { return space_; }
  const CMat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  cplx trace() const { return m_.trace(); }
  // Value of an operator on the empty space; throws DimensionError otherwise.
  cplx value() const;
  Operator adjoint() const { return Operator(space_, m_.adjoint()); }
  Operator transpose() const { return Operator(space_, m_.transpose()); }
  Operator conjugate() const { return Operator(space_, m_.conjugate()); }
  // Max-norm of X - X^dag.
  double hermiticity_residual() const;
  // (X + X^dag)/2.
  Operator hermitian_part() const;
  Operator renamed(const std::string& from, const std::string& to) const;

  Operator operator-() const { return Operator(space_, -m_); }

 private:
  Space space_;
  CMat m_;
};

// Arithmetic between operators requires equal label sets; the right operand is
// permuted into the left operand's order when the orders differ.
Operator operator+(const Operator& x, const Operator& y);
Operator operator-(const Operator& x, const Operator& y);
Operator operator*(const Operator& x, const Operator& y);
Operator operator*(cplx s, const Operator& x);
Operator operator*(double s, const Operator& x);
// Tr(xy) after aligning label orders.
cplx trace_product(const Operator& x, const Operator& y);
// Max-norm of x - y after alignment.
double max_abs_diff(const Operator& x, const Operator& y);

// `x` reordered to the given label order (a permutation of its labels).
Operator permute(const Operator& x, const std::vector<std::string>& order);
// `x` with its factors reordered to match `like` (same label set).
Operator align(const Operator& x, const Space& like);

// Kronecker product with concatenated labels; throws LabelError on collision.
Operator tensor(const Operator& x, const Operator& y);
// x (x) id on the missing factors of `target`, in target's order.
Operator embed(const Operator& x, const Space& target);

Operator partial_trace(const Operator& x, const std::vector<std::string>& over);
Operator partial_transpose(const Operator& x,
                           const std::vector<std::string>& over);

// X * Y = Tr_S[(X^{T_S} (x) id)(id (x) Y)] over the shared labels S. The result
// lives on x's unshared labels followed by y's unshared labels.
Operator link_product(const Operator& x, const Operator& y);

// Choi operator M = sum_ij |i><j| (x) M(|i><j|) on in (x) out.
Operator choi_of_kraus(const std::vector<CMat>& kraus, const Subsystem& in,
                       const Subsystem& out);
Operator choi_of_map(const std::function<CMat(const CMat&)>& map,
                     const Subsystem& in, const Subsystem& out);
// M(rho) = Tr_in[(rho^T (x) id) M] = rho * M. `arg` must live on a subset of
// m's labels; the result lives on the remaining labels.
Operator map_of_choi(const Operator& m, const Operator& arg);

struct MaxEntangled {
  CVec normalized;    // sum_i |ii>/sqrt(d)
  CVec unnormalized;  // sum_i |ii>
};
MaxEntangled max_entangled(int d);
// ||Phi+><Phi+|| on a (x) b (non-normalized, trace d).
Operator bell_operator(const Subsystem& a, const Subsystem& b);

}  // namespace tpm
