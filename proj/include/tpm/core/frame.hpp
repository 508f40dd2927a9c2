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

#include <vector>

#include "tpm/core/operator.hpp"

namespace tpm {

// Informationally complete operator frame {elements_i} with a dual frame
// {duals_i} such that X = sum_i Tr(duals_i X) elements_i for every operator X.
class OperatorFrame {
 public:
  // Duals from the Moore-Penrose pseudo-inverse of the Gram matrix
  // G_ij = Tr(e_i^dag e_j). Throws ValidationError if the elements do not
  // span the operator space.
  static OperatorFrame from_elements(const Space& space,
                                     std::vector<Operator> elements);
  // Frame with explicitly supplied duals (checked for reconstruction).
  static OperatorFrame with_duals(const Space& space,
                                  std::vector<Operator> elements,
                                  std::vector<Operator> duals);

  const Space& space() const { return space_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Operator>& elements() const { return elements_; }
  const std::vector<Operator>& duals() const { return duals_; }

  // c_i = Tr(duals_i X).
  std::vector<cplx> coefficients(const Operator& x) const;
  // sum_i c_i elements_i.
  Operator reconstruct(const std::vector<cplx>& coefficients) const;
  // Worst reconstruction error over the matrix units |i><j|.
  double reconstruction_residual() const;

 private:
  OperatorFrame(Space space, std::vector<Operator> elements,
                std::vector<Operator> duals);

  Space space_;
  std::vector<Operator> elements_;
  std::vector<Operator> duals_;
};

// Qubit SIC-POVM: elements P_x = Pi_x / 2 from the tetrahedron Bloch vectors,
// duals 6 P_x - id. `label` names the subsystem (dimension must be 2).
OperatorFrame sic_frame(const Subsystem& label);
// Single-system frame: qubit SIC for d = 2, otherwise a rank-one IC frame of
// d^2 projectors with pseudo-inverse duals.
OperatorFrame standard_frame(const Subsystem& label);
// Tensor products of the factor frames' elements; duals via the Gram
// pseudo-inverse.
OperatorFrame product_frame(const OperatorFrame& x, const OperatorFrame& y);
OperatorFrame product_frame(const Subsystem& a, const Subsystem& b);

}  // namespace tpm
