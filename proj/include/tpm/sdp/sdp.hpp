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
#include <string>
#include <vector>

#include "json.hpp"
#include "tpm/core/operator.hpp"

namespace tpm {

// Block-structured complex semidefinite program in standard form:
//   maximize   sum_b Tr(C_b X_b)
//   subject to sum_b Tr(A_{i,b} X_b) = b_i,   X_b >= 0 (Hermitian).
// Inequalities are expressed through additional slack blocks.
class SdpProblem {
 public:
  struct Block {
    std::string name;
    int dim = 0;
  };
  struct Term {
    int block = 0;
    CMat a;  // Hermitian, dim x dim of the block
  };
  struct Constraint {
    std::vector<Term> terms;
    double rhs = 0.0;
  };
  // Adjoint of a linear map from a block into a Hermitian matrix space:
  // given H, returns A with Tr(A X) = Tr(H L(X)).
  using Adjoint = std::function<CMat(const CMat&)>;

  // Returns the block index; the block's objective starts at zero.
  int add_block(std::string name, int dim);
  void set_objective(int block, CMat c);
  void add_constraint(Constraint c);
  // Imposes sum_k L_k(X_{b_k}) = rhs for Hermitian-valued linear maps L_k by
  // one scalar constraint per element of an orthonormal Hermitian basis of the
  // rhs space. `parts` lists (block, adjoint of L) pairs. If the range of
  // the combined map is a proper subspace, the rows are replaced by an
  // orthogonal basis of their span (throws ValidationError if rhs lies
  // outside the range).
  void add_matrix_constraint(const std::vector<std::pair<int, Adjoint>>& parts,
                             const CMat& rhs);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<CMat>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int block_index(const std::string& name) const;

  // Throws DimensionError / NotHermitianError on malformed data.
  void validate() const;

  nlohmann::json to_json() const;
  static SdpProblem from_json(const nlohmann::json& j);

 private:
  std::vector<Block> blocks_;
  std::vector<CMat> objective_;
  std::vector<Constraint> constraints_;
};

enum class SdpStatus { kOptimal, kMaxIterations, kInfeasibleSuspected };
std::string to_string(SdpStatus s);

struct SdpIterate {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;    // ||C + S - A*(y)|| / (1 + ||C||)
  double complementarity = 0.0;  // <X, S>
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kMaxIterations;
  std::vector<CMat> x;  // primal blocks
  std::vector<CMat> s;  // dual slack blocks
  RVec y;               // dual multipliers
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // |dual - primal| / (1 + |primal| + |dual|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_eigenvalue = 0.0;  // smallest eigenvalue over primal blocks
  int iterations = 0;
  std::vector<SdpIterate> history;

  bool optimal() const { return status == SdpStatus::kOptimal; }
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 200;
  double step_fraction = 0.98;  // fraction-to-boundary factor
  double sigma = 0.1;           // centering (mu reduction) factor
  int stall_window = 30;
  bool record_history = false;
};

// [[Re H, -Im H], [Im H, Re H]]; throws NotHermitianError for non-Hermitian H.
RMat realify(const CMat& h);
// Inverse of realify on its range (projects a general symmetric matrix onto
// the realified structure first).
CMat derealify(const RMat& y);

// Infeasible-start primal-dual path-following method with the HKM search
// direction on the realified problem. Deterministic.
SdpSolution solve(const SdpProblem& p, const SdpOptions& opts = {});

// Orthonormal basis of d x d Hermitian matrices under <A, B> = Tr(AB).
std::vector<CMat> hermitian_basis(int d);

}  // namespace tpm
