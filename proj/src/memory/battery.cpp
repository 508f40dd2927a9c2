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

#include "tpm/memory/battery.hpp"

#include <cmath>
#include <limits>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"

namespace tpm {

namespace {

ProcessLabels labels_of(const Space& abc) {
  if (abc.size() != 3) throw LabelError("battery: expected three factors");
  return {abc[0].name, abc[1].name, abc[2].name};
}

}  // namespace

TpmProcess random_tpm(int d_env, Rng& rng, const Space& abc) {
  const ProcessLabels labels = labels_of(abc);
  const int d = abc[0].dim;
  if (abc[1].dim != d || abc[2].dim != d) {
    throw DimensionError("random_tpm: factors must share the system dimension");
  }
  const CMat u1 = random_unitary(d * d_env, rng);
  const CMat u2 = random_unitary(d * d_env, rng);
  const CMat rs = random_density(d, rng);
  const CMat re = random_density(d_env, rng);
  return process_from_dynamics(u1, u2, rs, re, labels);
}

CmEnsemble random_cm_ensemble(const Space& abc, int size, Rng& rng) {
  labels_of(abc);
  if (size < 1) throw ValidationError("random_cm_ensemble: size must be >= 1");
  CmEnsemble ens;
  ens.weights = random_probabilities(size, rng);
  for (int l = 0; l < size; ++l) {
    ens.states.emplace_back(Space{abc[0]}, random_density(abc[0].dim, rng));
    const int nk = 1 + static_cast<int>(rng() % 4);
    const int count = std::max(nk, (abc[1].dim + abc[2].dim - 1) / abc[2].dim);
    ens.channels.push_back(ChoiChannel::from_kraus(
        random_kraus(abc[1].dim, abc[2].dim, count, rng), abc[1], abc[2]));
  }
  return ens;
}

EntanglementRetriever random_retriever(const Space& abc, Rng& rng) {
  labels_of(abc);
  const Subsystem b = abc[1], c = abc[2];
  const CMat r = random_density(abc.dim(), rng);
  CMat eta = random_density(b.dim, rng);
  eta = 0.5 * eta + 0.5 * CMat::Identity(b.dim, b.dim) / b.dim;
  const Operator ta = partial_trace(Operator(abc, r), {abc[0].name});
  const CMat ec = kron(eta, CMat::Identity(c.dim, c.dim));
  const CMat isq = hermitian_function(ec, [](double v) { return 1.0 / std::sqrt(v); });
  const double scale = 1.0 / max_eigenvalue(CMat(isq * ta.matrix() * isq));
  EntanglementRetriever out;
  // A tiny margin keeps the dominance constraint strictly satisfied.
  out.theta = Operator(abc, (1.0 - 1e-12) * scale * r);
  out.eta = Operator(Space{b}, eta);
  return out;
}

std::vector<Operator> cm_battery(const Space& abc, int count,
                                 std::uint64_t seed) {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    out.push_back(cm_mixture(random_cm_ensemble(abc, 1 + k % 8, rng)).w());
  }
  return out;
}

std::vector<Operator> tpm_battery(const Space& abc, int count,
                                  std::uint64_t seed) {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    out.push_back(random_tpm(1 + k % 3, rng, abc).w());
  }
  return out;
}

double battery_min(const Operator& z, const std::vector<Operator>& samples) {
  double best = std::numeric_limits<double>::infinity();
  const long n = static_cast<long>(samples.size());
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long k = 0; k < n; ++k) {
    const double v = trace_product(z, samples[static_cast<std::size_t>(k)]).real();
    if (v < best) best = v;
  }
  return best;
}

double battery_min_serial(const Operator& z,
                          const std::vector<Operator>& samples) {
  double best = std::numeric_limits<double>::infinity();
  for (const Operator& s : samples) {
    best = std::min(best, trace_product(z, s).real());
  }
  return best;
}

}  // namespace tpm
