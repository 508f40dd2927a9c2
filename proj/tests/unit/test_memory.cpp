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

#include <cmath>

#include "oracles.hpp"
#include "tpm/core/errors.hpp"
#include "tpm/core/frame.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/random.hpp"
#include "tpm/memory/battery.hpp"
#include "tpm/memory/protocol.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/memory/seesaw.hpp"
#include "tpm/memory/witness.hpp"

namespace tpm {
namespace {

const Subsystem kA{"A", 2};
const Subsystem kB{"B", 2};
const Subsystem kC{"C", 2};
const Space kAbc{kA, kB, kC};

EntanglementRetriever theta_star() {
  CMat eta = CMat::Zero(2, 2);
  eta(0, 0) = 1.0;
  return {Operator(kAbc, oracle::theta_star()), Operator(Space{kB}, eta)};
}

// Single-mode JC process, vacuum field (cutoff 1), system excited.
TpmProcess jc_process(double gt, double gtau) {
  const CMat h = oracle::jc_hamiltonian(1.0, 2);
  CMat rs = CMat::Zero(2, 2), re = CMat::Zero(2, 2);
  rs(1, 1) = 1.0;
  re(0, 0) = 1.0;
  return process_from_dynamics(oracle::propagator(h, gt), oracle::propagator(h, gtau), rs, re);
}

TpmProcess random_markov(Rng& rng) {
  return markov_process(Operator(Space{kA}, random_density(2, rng)),
                        ChoiChannel::from_kraus(random_kraus(2, 2, 1 + rng() % 4, rng), kB, kC));
}

SeesawOptions quick(int restarts = 6, int size = 2) {
  SeesawOptions o;
  o.restarts = restarts;
  o.ensemble_size = size;
  return o;
}

TEST(Retriever, ProblemShape) {
  SdpProblem p = retriever_problem(kAbc);
  ASSERT_EQ(p.blocks().size(), 3u);
  EXPECT_EQ(p.blocks()[0].dim, 8);
  EXPECT_EQ(p.blocks()[1].dim, 2);
  EXPECT_EQ(p.blocks()[2].dim, 4);
  EXPECT_EQ(p.constraints().size(), 1u + 16u);
}

TEST(Retriever, ThetaStarIsValid) {
  EXPECT_TRUE(validate_retriever(theta_star()).valid());
  EntanglementRetriever bad = theta_star();
  bad.theta = 1.5 * bad.theta;
  EXPECT_FALSE(validate_retriever(bad).valid());
}

TEST(Retriever, MarkovProcessesStayBelowOne) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    TpmProcess w = random_markov(rng);
    RetrieverResult r = retriever_value(w);
    EXPECT_LE(r.value, 1.0 + 1e-6);
    RetrieverReport rep = validate_retriever(r.retriever, 1e-8);
    EXPECT_TRUE(rep.valid()) << rep.summary();
  }
}

TEST(Retriever, JaynesCummingsOptimumIsTwo) {
  RetrieverResult r = retriever_value(jc_process(M_PI / 4, M_PI / 2));
  EXPECT_NEAR(r.value, 2.0, 1e-6);
  EXPECT_EQ(memory_dimension_bound(r.value), 2);
  EXPECT_GT(memory_dimension_bound(r.value + 1e-3), 2);
}

TEST(Retriever, JaynesCummingsAtOriginIsOne) {
  EXPECT_NEAR(retriever_value(jc_process(0.0, 0.0)).value, 1.0, 1e-6);
}

TEST(Retriever, BoundedByReducedStateAndSystemDimension) {
  // |a><a| (x) eta (x) id_C is a retriever, so E(W) >= lambda_max(rho_A);
  // the singlet-fraction ceiling gives E(W) <= d_A.
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    TpmProcess w = random_tpm(1 + k % 3, rng, kAbc);
    const double v = retriever_value(w).value;
    EXPECT_LE(v, 2.0 + 1e-6);
    EXPECT_GE(v, max_eigenvalue(w.reduced_state().matrix()) - 1e-6);
  }
}

TEST(Retriever, ConvexUnderMixing) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    TpmProcess w1 = random_tpm(2, rng, kAbc), w2 = random_tpm(2, rng, kAbc);
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    TpmProcess mix(p * w1.w() + (1.0 - p) * w2.w());
    EXPECT_LE(retriever_value(mix).value,
              p * retriever_value(w1).value + (1 - p) * retriever_value(w2).value + 1e-6);
  }
}

TEST(Retriever, CmAndDephasingStayBelowOne) {
  Rng rng(4);
  for (const Operator& om : cm_battery(kAbc, 16, 11)) {
    EXPECT_LE(retriever_value(TpmProcess(om)).value, 1.0 + 1e-6);
  }
  // Dephasing with V_0 = id, V_1 = sigma_z, env in |+>.
  const CMat plus = CMat::Constant(2, 2, 0.5);
  std::vector<CMat> v = {oracle::pauli(0), oracle::pauli(3)};
  for (int k = 0; k < 5; ++k) {
    TpmProcess w = dephasing_process(v, {0, 1}, random_density(2, rng), plus, random_unitary(4, rng));
    EXPECT_LE(retriever_value(w).value, 1.0 + 1e-6);
  }
}

TEST(Retriever, DimensionBound) {
  EXPECT_EQ(memory_dimension_bound(0.7), 1);
  EXPECT_EQ(memory_dimension_bound(1.0), 1);
  EXPECT_EQ(memory_dimension_bound(1.3), 2);
  EXPECT_EQ(memory_dimension_bound(2.0), 2);
  EXPECT_THROW(memory_dimension_bound(-0.1), ValidationError);
}

TEST(Retriever, JsonRoundTrip) {
  EntanglementRetriever r = theta_star();
  EntanglementRetriever back = retriever_from_json(retriever_to_json(r));
  EXPECT_EQ(max_abs_diff(back.theta, r.theta), 0.0);
  EXPECT_EQ(max_abs_diff(back.eta, r.eta), 0.0);
}

TEST(Seesaw, ThetaStarThresholdIsOne) {
  SeesawResult r = classical_threshold_seesaw(theta_star(), quick());
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  // The reported ensemble attains the value.
  EXPECT_NEAR(trace_product(theta_star().theta, cm_mixture(r.ensemble).w()).real(), r.value, 1e-12);
}

TEST(Seesaw, ConstantObjective) {
  const Operator theta = (1.0 / 4.0) * Operator::identity(kAbc);
  SeesawResult r = cm_maximize(theta, quick(2));
  EXPECT_NEAR(r.value, 0.5, 1e-12);
}

TEST(Seesaw, NonDecreasingInEnsembleSize) {
  Rng rng(5);
  for (int k = 0; k < 3; ++k) {
    EntanglementRetriever th = random_retriever(kAbc, rng);
    const double one = classical_threshold_seesaw(th, quick(8, 1)).value;
    const double four = classical_threshold_seesaw(th, quick(8, 4)).value;
    EXPECT_GE(four, one - 1e-7);
  }
}

TEST(Seesaw, ParallelMatchesSerial) {
  Rng rng(6);
  const Operator x(kAbc, random_hermitian(8, rng));
  SeesawResult a = cm_maximize(x, quick(4)), b = cm_maximize_serial(x, quick(4));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.restart_values, b.restart_values);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Seesaw, LowerBoundBelowEveryCmSample) {
  // The see-saw is a lower bound on the CM maximum; random CM samples are too,
  // so they should not beat a converged run by more than solver noise.
  Rng rng(7);
  const Operator x(kAbc, random_hermitian(8, rng));
  const double best = cm_maximize(x, quick(8)).value;
  for (const Operator& om : cm_battery(kAbc, 50, 3)) {
    EXPECT_LE(trace_product(x, om).real(), best + 1e-6);
  }
}

TEST(Relaxation, BracketsThreshold) {
  Rng rng(8);
  for (int k = 0; k < 3; ++k) {
    EntanglementRetriever th = random_retriever(kAbc, rng);
    const double lo = classical_threshold_seesaw(th, quick()).value;
    const double hi = ppt_relaxation_upper(th.theta).value;
    EXPECT_GE(hi, lo - 1e-6);
    EXPECT_LE(hi, 2.0 + 1e-6);  // Tr(Theta Omega) <= E(Omega) <= d_A
  }
  const double star = ppt_relaxation_upper(theta_star().theta).value;
  EXPECT_GE(star, 1.0 - 1e-6);
  EXPECT_LE(star, 2.0 + 1e-6);
}

TEST(Kappa, ThetaStarPositiveBranchUndefined) {
  KappaOptions o;
  o.seesaw = quick(4);
  try {
    kappa(theta_star(), 0.5 * Operator::identity(kAbc), o);
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("kappa undefined on sampled region"), std::string::npos);
  }
}

TEST(Kappa, ThetaStarNegativeBranchMatchesThreshold) {
  // With Tr(Z0 W) = 1 on all processes, kappa = 1/(1/d_A - lambda*).
  KappaOptions o;
  o.branch = KappaBranch::kNegative;
  o.seesaw = quick(4);
  const Operator z0 = 0.5 * Operator::identity(kAbc);
  KappaResult k = kappa(theta_star(), z0, o);
  const double lam = classical_threshold_seesaw(theta_star(), quick(4)).value;
  EXPECT_NEAR(k.kappa, 1.0 / (0.5 - lam), 1e-5);
  EXPECT_NEAR(k.kappa, -2.0, 1e-5);
  EXPECT_TRUE(k.heuristic);
}

TEST(Kappa, ConstantRatio) {
  // Theta = 0.1 id: Tr(Theta Omega) = 0.2, so the ratio is 1/(0.5 - 0.2).
  EntanglementRetriever th{0.1 * Operator::identity(kAbc), 0.5 * Operator::identity(Space{kB})};
  KappaOptions o;
  o.seesaw = quick(2);
  EXPECT_NEAR(kappa(th, 0.5 * Operator::identity(kAbc), o).kappa, 1.0 / 0.3, 1e-9);
}

TEST(Kappa, RandomRetrieverPositiveBranchFinite) {
  Rng rng(9);
  EntanglementRetriever th = random_retriever(kAbc, rng);
  th.theta = 0.3 * th.theta;
  KappaOptions o;
  o.seesaw = quick(16);
  const Operator z0 = 0.5 * Operator::identity(kAbc);
  KappaResult k = kappa(th, z0, o);
  EXPECT_TRUE(std::isfinite(k.kappa));
  EXPECT_GT(k.kappa, 0.0);
  // The resulting witness is nonnegative on every classical sample visited.
  MemoryWitness w = build_witness(th, z0, k.kappa, 100, 7, k.samples);
  EXPECT_GE(w.battery_min, -1e-6);
}

TEST(Kappa, RejectsNegativeZ0) {
  KappaOptions o;
  o.seesaw = quick(2);
  EXPECT_THROW(kappa(theta_star(), -1.0 * Operator::identity(kAbc), o), ValidationError);
}

TEST(Witness, ZeroKappaIsZ0) {
  const Operator z0 = 0.5 * Operator::identity(kAbc);
  MemoryWitness w = build_witness(theta_star(), z0, 0.0);
  EXPECT_EQ(max_abs_diff(w.z, z0), 0.0);
  EXPECT_NEAR(w.battery_min, 1.0, 1e-12);
}

TEST(Witness, ThetaStarDetectsJaynesCummings) {
  const Operator z0 = 0.5 * Operator::identity(kAbc);
  MemoryWitness w = build_witness(theta_star(), z0, -2.0);
  // Z = id - 2 Theta*, so Tr(Z W) = 2 - 2 m.
  EXPECT_LT(max_abs_diff(w.z, Operator::identity(kAbc) - 2.0 * theta_star().theta), 1e-15);
  EXPECT_NEAR(trace_product(w.z, jc_process(M_PI / 4, M_PI / 2).w()).real(), -2.0, 1e-12);
  EXPECT_GE(w.battery_min, -1e-6);
}

TEST(Witness, TooAggressiveKappaRejected) {
  const Operator z0 = 0.5 * Operator::identity(kAbc);
  SeesawResult top = classical_threshold_seesaw(theta_star(), quick(4));
  EXPECT_THROW(build_witness(theta_star(), z0, -3.0, 100, 7, {cm_mixture(top.ensemble).w()}),
               ValidationError);
}

TEST(Correlations, SingleProductElement) {
  OperatorFrame fab = product_frame(sic_frame(kA), sic_frame(kB));
  OperatorFrame fc = sic_frame(kC);
  const Operator z = tensor(fab.elements()[1], fc.elements()[1]);
  CorrelationDecomposition d = witness_to_correlations(z, fab, fc);
  ASSERT_EQ(d.terms.size(), 16u * 4u);
  for (const auto& t : d.terms) {
    EXPECT_NEAR(t.coefficient, (t.i == 1 && t.j == 1) ? 1.0 : 0.0, 1e-12);
    EXPECT_EQ(t.e.size(), 1u);  // rank-1 elements give a single Kraus operator
  }
}

TEST(Correlations, ThetaStarReconstruction) {
  OperatorFrame fab = product_frame(sic_frame(kA), sic_frame(kB));
  OperatorFrame fc = sic_frame(kC);
  const Operator z = theta_star().theta;
  CorrelationDecomposition d = witness_to_correlations(z, fab, fc);
  for (const Operator& w : tpm_battery(kAbc, 50, 21)) {
    TpmProcess p(w);
    EXPECT_NEAR(d.evaluate(p), trace_product(z, w).real(), 1e-9);
  }
}

TEST(Correlations, GenericWitnessAndFrames) {
  Rng rng(10);
  const Operator z(kAbc, random_hermitian(8, rng));
  OperatorFrame fab = product_frame(kA, kB);
  OperatorFrame fc = standard_frame(kC);
  CorrelationDecomposition d = witness_to_correlations(z, fab, fc);
  for (const Operator& w : tpm_battery(kAbc, 10, 31)) {
    EXPECT_NEAR(d.evaluate(TpmProcess(w)), trace_product(z, w).real(), 1e-9);
  }
}

TEST(Correlations, MismatchedFramesRejected) {
  OperatorFrame fab = product_frame(sic_frame(kA), sic_frame(kC));
  EXPECT_THROW(witness_to_correlations(theta_star().theta, fab, sic_frame(kC)), LabelError);
}

TEST(Protocol, PerfectDecodingAtJaynesCummingsOptimum) {
  TpmProcess w = jc_process(M_PI / 4, M_PI / 2);
  RetrieverResult r = retriever_value(w);
  ProtocolResult p = discrimination_protocol(r.retriever, w);
  EXPECT_NEAR(p.average, 1.0, 1e-6);
  for (const auto& [x, pr] : p.per_letter) EXPECT_NEAR(pr, 1.0, 1e-5) << x;
  // The same holds for the fixed retriever Theta*.
  EXPECT_NEAR(discrimination_protocol(theta_star(), w).average, 1.0, 1e-12);
}

TEST(Protocol, OriginGivesOneHalf) {
  EXPECT_NEAR(discrimination_protocol(theta_star(), jc_process(0.0, 0.0)).average, 0.5, 1e-12);
}

TEST(Protocol, MarkovBoundedByOneHalf) {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    TpmProcess w = random_markov(rng);
    ProtocolResult p = discrimination_protocol(random_retriever(kAbc, rng), w);
    EXPECT_LE(p.average, 0.5 * (1.0 + 1e-6));
    ProtocolResult q = discrimination_protocol(retriever_value(w).retriever, w);
    EXPECT_LE(q.average, 0.5 * (1.0 + 1e-6));
  }
}

TEST(Protocol, SuccessIdentity) {
  Rng rng(12);
  for (int k = 0; k < 30; ++k) {
    EntanglementRetriever th = random_retriever(kAbc, rng);
    TpmProcess w = random_tpm(1 + k % 3, rng, kAbc);
    ProtocolResult p = discrimination_protocol(th, w);
    double total = 0.0;
    for (const auto& [x, pr] : p.per_letter) total += pr;
    EXPECT_NEAR(total / 2.0, trace_product(th.theta, w.w()).real(), 1e-8);
    EXPECT_TRUE(p.tester.valid());
    EXPECT_LE(p.average + p.inconclusive, 1.0 + 1e-9);
    EXPECT_GE(p.inconclusive, -1e-12);
  }
}

TEST(Protocol, QutritRejected) {
  const Space s3{{"A", 3}, {"B", 3}, {"C", 3}};
  Rng rng(13);
  EXPECT_THROW(discrimination_protocol(random_retriever(s3, rng), random_tpm(1, rng, s3)),
               ValidationError);
}

TEST(Battery, ParallelMatchesSerial) {
  Rng rng(14);
  const Operator z(kAbc, random_hermitian(8, rng));
  const auto samples = cm_battery(kAbc, 40, 5);
  EXPECT_EQ(battery_min(z, samples), battery_min_serial(z, samples));
  for (const Operator& s : samples) EXPECT_TRUE(validate_tpm(s).valid());
}

}  // namespace
}  // namespace tpm
