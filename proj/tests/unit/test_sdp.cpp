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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/random.hpp"
#include "tpm/sdp/sdp.hpp"

namespace tpm {
namespace {

// max Tr(H rho) over density operators.
SdpProblem max_expectation(const CMat& h) {
  SdpProblem p;
  const int n = static_cast<int>(h.rows());
  const int b = p.add_block("rho", n);
  p.set_objective(b, h);
  p.add_constraint({{{b, CMat::Identity(n, n)}}, 1.0});
  return p;
}

TEST(Realify, PauliY) {
  RMat r = realify(oracle::pauli(2));
  RMat expect(4, 4);
  expect << 0, 0, 0, 1,  //
      0, 0, -1, 0,       //
      0, -1, 0, 0,       //
      1, 0, 0, 0;
  EXPECT_EQ((r - expect).cwiseAbs().maxCoeff(), 0.0);
  Eigen::SelfAdjointEigenSolver<RMat> es(r);
  RVec ev = es.eigenvalues();
  EXPECT_NEAR(ev(0), -1.0, 1e-14);
  EXPECT_NEAR(ev(1), -1.0, 1e-14);
  EXPECT_NEAR(ev(2), 1.0, 1e-14);
  EXPECT_NEAR(ev(3), 1.0, 1e-14);
}

TEST(Realify, IdentityAndTrace) {
  EXPECT_EQ((realify(CMat::Identity(3, 3)) - RMat::Identity(6, 6)).cwiseAbs().maxCoeff(), 0.0);
  Rng rng(1);
  CMat h = random_hermitian(4, rng);
  EXPECT_NEAR(realify(h).trace(), 2.0 * h.trace().real(), 1e-13);
}

TEST(Realify, RejectsNonHermitian) {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(realify(m), NotHermitianError);
}

TEST(Realify, SpectrumDoublesAndRoundTrips) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 4;
    RVec spec(n);
    for (int i = 0; i < n; ++i) spec(i) = -1.0 + 0.5 * i;
    CMat u = random_unitary(n, rng);
    CMat h = u * spec.cast<cplx>().asDiagonal() * u.adjoint();
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<RMat> es(realify(h));
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(es.eigenvalues()(2 * i), spec(i), 1e-12);
      EXPECT_NEAR(es.eigenvalues()(2 * i + 1), spec(i), 1e-12);
    }
    EXPECT_LT(max_abs(derealify(realify(h)) - h), 1e-15);
  }
}

TEST(HermitianBasis, Orthonormal) {
  for (int d : {1, 2, 3, 4}) {
    auto basis = hermitian_basis(d);
    ASSERT_EQ(static_cast<int>(basis.size()), d * d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_LT(max_abs(basis[i] - basis[i].adjoint()), 1e-15);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        EXPECT_NEAR(std::abs((basis[i] * basis[j]).trace()), i == j ? 1.0 : 0.0, 1e-14);
      }
    }
  }
}

TEST(Solve, MaxExpectationIsLargestEigenvalue) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 5;
    CMat h = random_hermitian(n, rng);
    SdpSolution s = solve(max_expectation(h));
    ASSERT_TRUE(s.optimal()) << to_string(s.status);
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    EXPECT_NEAR(s.primal_objective, es.eigenvalues()(n - 1), 1e-7);
    EXPECT_GE(s.min_eigenvalue, -1e-8);
    EXPECT_LE(s.gap, 1e-8);
    EXPECT_LE(s.primal_residual, 1e-8);
  }
}

TEST(Solve, ZeroObjective) {
  SdpSolution s = solve(max_expectation(CMat::Zero(3, 3)));
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.primal_objective, 0.0, 1e-8);
  EXPECT_NEAR(s.x[0].trace().real(), 1.0, 1e-8);
  EXPECT_GE(s.min_eigenvalue, -1e-8);
}

TEST(Solve, TwoBlocksShareBudget) {
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    CMat h1 = random_hermitian(2, rng), h2 = random_hermitian(3, rng);
    SdpProblem p;
    const int a = p.add_block("a", 2), b = p.add_block("b", 3);
    p.set_objective(a, h1);
    p.set_objective(b, h2);
    p.add_constraint({{{a, CMat::Identity(2, 2)}, {b, CMat::Identity(3, 3)}}, 1.0});
    SdpSolution s = solve(p);
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(s.primal_objective, std::max(max_eigenvalue(h1), max_eigenvalue(h2)), 1e-7);
  }
}

TEST(Solve, BestChannelFidelity) {
  // max Tr(Phi N) over CJ operators of channels is d^2 (identity channel).
  for (int d : {2, 3}) {
    SdpProblem p;
    const int n = p.add_block("N", d * d);
    Operator phi = bell_operator({"i", d}, {"o", d});
    p.set_objective(n, phi.matrix());
    // Tr_out N = id_in, adjoint H -> H (x) id_out.
    p.add_matrix_constraint(
        {{n, [d](const CMat& h) { return oracle::kron(h, CMat::Identity(d, d)); }}},
        CMat::Identity(d, d));
    SdpSolution s = solve(p);
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(s.primal_objective, d * d, 1e-7);
    EXPECT_LT(max_abs(s.x[0] - phi.matrix()), 1e-4);
  }
}

TEST(Solve, SlackBlockEncodesUpperBound) {
  // max Tr(H X) s.t. Tr X = 1, X <= id/2 (slack block Y = id/2 - X).
  CMat h = CMat::Zero(3, 3);
  h(0, 0) = 3.0;
  h(1, 1) = 2.0;
  h(2, 2) = -1.0;
  SdpProblem p;
  const int x = p.add_block("X", 3), y = p.add_block("Y", 3);
  p.set_objective(x, h);
  p.add_constraint({{{x, CMat::Identity(3, 3)}}, 1.0});
  p.add_matrix_constraint({{x, [](const CMat& m) { return m; }}, {y, [](const CMat& m) { return m; }}},
                          0.5 * CMat::Identity(3, 3));
  SdpSolution s = solve(p);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.primal_objective, 2.5, 1e-7);
}

TEST(Solve, RankDeficientMatrixConstraint) {
  // X - Tr_2(X) (x) id/2 = 0 forces X = rho (x) id/2; the map has a
  // 4-dimensional kernel, so only 12 of its 16 rows are independent.
  Rng rng(9);
  CMat h1 = random_hermitian(2, rng);
  SdpProblem p;
  const int x = p.add_block("X", 4);
  p.set_objective(x, oracle::kron(h1, CMat::Identity(2, 2)));
  p.add_constraint({{{x, CMat::Identity(4, 4)}}, 1.0});
  p.add_matrix_constraint(
      {{x, [](const CMat& h) {
          return CMat(h - oracle::kron(oracle::trace_second(h, 2, 2), CMat::Identity(2, 2)) / 2.0);
        }}},
      CMat::Zero(4, 4));
  EXPECT_EQ(p.constraints().size(), 13u);
  SdpSolution s = solve(p);
  ASSERT_TRUE(s.optimal()) << to_string(s.status);
  EXPECT_NEAR(s.primal_objective, max_eigenvalue(h1), 1e-7);
  SdpProblem q;
  const int y = q.add_block("X", 4);
  EXPECT_THROW(q.add_matrix_constraint(
                   {{y, [](const CMat& h) {
                       return CMat(h - oracle::kron(oracle::trace_second(h, 2, 2), CMat::Identity(2, 2)) / 2.0);
                     }}},
                   CMat::Identity(4, 4)),
               ValidationError);
}

TEST(Solve, WeakDualityOnFeasibleIterates) {
  Rng rng(5);
  SdpOptions opts;
  opts.record_history = true;
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    SdpSolution s = solve(max_expectation(random_hermitian(4, rng)), opts);
    ASSERT_TRUE(s.optimal());
    ASSERT_FALSE(s.history.empty());
    for (const auto& it : s.history) {
      if (it.primal_residual < 1e-10 && it.dual_residual < 1e-10) {
        EXPECT_LE(it.primal_objective, it.dual_objective + 1e-12);
        // On feasible iterates the gap equals the complementarity <X, S>.
        EXPECT_NEAR(it.dual_objective - it.primal_objective, it.complementarity, 1e-8);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Solve, Deterministic) {
  Rng rng(6);
  SdpProblem p = max_expectation(random_hermitian(4, rng));
  SdpOptions opts;
  opts.record_history = true;
  SdpSolution a = solve(p, opts), b = solve(p, opts);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].primal_objective, b.history[i].primal_objective);
    EXPECT_EQ(a.history[i].dual_objective, b.history[i].dual_objective);
  }
  EXPECT_EQ(max_abs(a.x[0] - b.x[0]), 0.0);
}

TEST(Solve, InfeasibleProblemIsFlagged) {
  SdpProblem p;
  const int b = p.add_block("X", 2);
  p.set_objective(b, CMat::Identity(2, 2));
  p.add_constraint({{{b, CMat::Identity(2, 2)}}, -1.0});
  SdpSolution s = solve(p);
  EXPECT_FALSE(s.optimal());
  EXPECT_EQ(s.status, SdpStatus::kInfeasibleSuspected);
}

TEST(Solve, MaxIterationsReported) {
  Rng rng(7);
  SdpOptions opts;
  opts.max_iter = 2;
  SdpSolution s = solve(max_expectation(random_hermitian(3, rng)), opts);
  EXPECT_EQ(s.status, SdpStatus::kMaxIterations);
}

TEST(Problem, ValidationErrors) {
  SdpProblem p;
  EXPECT_THROW(p.add_block("bad", 0), DimensionError);
  const int b = p.add_block("X", 2);
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1.0;
  p.set_objective(b, m);
  EXPECT_THROW(p.validate(), NotHermitianError);
  p.set_objective(b, CMat::Zero(3, 3));
  EXPECT_THROW(p.validate(), DimensionError);
  EXPECT_THROW(p.block_index("nope"), LabelError);
  SdpProblem q;
  const int c = q.add_block("X", 1);
  q.add_constraint({{{c, CMat::Identity(1, 1)}}, 1.0});
  q.add_constraint({{{c, CMat::Identity(1, 1)}}, 1.0});
  EXPECT_THROW(q.validate(), DimensionError);
}

TEST(Problem, JsonRoundTrip) {
  Rng rng(8);
  SdpProblem p = max_expectation(random_hermitian(3, rng));
  SdpProblem q = SdpProblem::from_json(p.to_json());
  EXPECT_EQ(q.to_json(), p.to_json());
  EXPECT_EQ(solve(p).primal_objective, solve(q).primal_objective);
  EXPECT_THROW(SdpProblem::from_json(nlohmann::json{{"blocks", 3}}), ParseError);
}

}  // namespace
}  // namespace tpm
