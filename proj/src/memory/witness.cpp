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

#include "tpm/memory/witness.hpp"

#include <cmath>
#include <limits>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/memory/battery.hpp"

namespace tpm {

namespace {

constexpr double kSignTol = 1e-12;

void require_valid(const EntanglementRetriever& theta) {
  const RetrieverReport rep = validate_retriever(theta);
  if (!rep.valid()) {
    throw ValidationError("invalid entanglement retriever: " + rep.summary());
  }
}

bool equal_dims(const Space& s) {
  return s[0].dim == s[1].dim && s[1].dim == s[2].dim;
}

}  // namespace

std::string to_string(KappaBranch b) {
  return b == KappaBranch::kPositive ? "positive" : "negative";
}

KappaResult kappa(const EntanglementRetriever& theta, const Operator& z0_in,
                  const KappaOptions& opts) {
  require_valid(theta);
  const Operator& th = theta.theta;
  const Space& s = th.space();
  const Operator z0 = align(z0_in, s).hermitian_part();
  const double inv_da = 1.0 / s[0].dim;
  const std::uint64_t seed = opts.seesaw.seed;

  if (equal_dims(s)) {
    const double zmin = battery_min(z0, tpm_battery(s, opts.battery, seed + 5000));
    if (zmin < -1e-9) {
      throw ValidationError("kappa: Z0 is negative on a sampled process matrix (" +
                            std::to_string(zmin) + ")");
    }
  }
  auto num = [&](const Operator& om) { return trace_product(z0, om).real(); };
  auto den = [&](const Operator& om) { return inv_da - trace_product(th, om).real(); };

  KappaResult res;
  res.branch = opts.branch;
  res.samples = cm_battery(s, opts.battery, seed + 6000);
  const std::string undefined = "kappa undefined on sampled region";

  if (opts.branch == KappaBranch::kPositive) {
    double lam = std::numeric_limits<double>::infinity();
    for (const Operator& om : res.samples) {
      const double d = den(om);
      if (d <= kSignTol) throw ValidationError(undefined);
      lam = std::min(lam, num(om) / d);
    }
    for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
      // min_Omega N - lam D = min Tr((Z0 + lam Theta) Omega) - lam / d_A.
      const SeesawResult sub = cm_maximize(-1.0 * (z0 + lam * th), opts.seesaw);
      const double g = -sub.value - lam * inv_da;
      const Operator om = cm_mixture(sub.ensemble).w();
      res.samples.push_back(om);
      if (den(om) <= kSignTol) throw ValidationError(undefined);
      if (g >= -opts.tol) break;
      lam = num(om) / den(om);
    }
    res.kappa = lam;
    return res;
  }

  // Negative branch: t = inf N / (-D) over D < 0, kappa = -t.
  const SeesawResult top = cm_maximize(th, opts.seesaw);
  res.samples.push_back(cm_mixture(top.ensemble).w());
  double t = std::numeric_limits<double>::infinity();
  for (const Operator& om : res.samples) {
    const double d = den(om);
    if (d < -kSignTol) t = std::min(t, num(om) / -d);
  }
  if (!std::isfinite(t)) {
    throw ValidationError(
        "kappa: no sampled classical process has a negative denominator");
  }
  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    // min_Omega N + t D = min Tr((Z0 - t Theta) Omega) + t / d_A.
    const SeesawResult sub = cm_maximize(-1.0 * (z0 - t * th), opts.seesaw);
    const double g = -sub.value + t * inv_da;
    const Operator om = cm_mixture(sub.ensemble).w();
    res.samples.push_back(om);
    if (g >= -opts.tol) break;
    const double d = den(om);
    if (d >= -kSignTol) break;  // N >= 0 forces D < 0 whenever g < 0
    t = num(om) / -d;
  }
  res.kappa = -t;
  return res;
}

MemoryWitness build_witness(const EntanglementRetriever& theta,
                            const Operator& z0, double kappa_value,
                            int battery, std::uint64_t seed,
                            const std::vector<Operator>& extra) {
  require_valid(theta);
  const Space& s = theta.theta.space();
  MemoryWitness w;
  w.theta = theta;
  w.z0 = align(z0, s);
  w.kappa = kappa_value;
  const double norm = 1.0 / (s[0].dim * s[1].dim);
  w.z = w.z0 + kappa_value * (theta.theta - norm * Operator::identity(s));
  std::vector<Operator> samples = cm_battery(s, battery, seed);
  for (const Operator& e : extra) samples.push_back(align(e, s));
  w.battery_min = samples.empty() ? 0.0 : battery_min(w.z, samples);
  if (w.battery_min < -1e-6) {
    throw ValidationError("witness rejected: Tr(Z Omega) = " +
                          std::to_string(w.battery_min) +
                          " on a classical-memory sample (kappa too aggressive)");
  }
  return w;
}

double CorrelationDecomposition::evaluate(const TpmProcess& w) const {
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.coefficient == 0.0) continue;
    double g = 0.0;
    for (const auto& e : t.e) g += tpm_correlation(w, e, t.f);
    total += t.coefficient * g;
  }
  return total;
}

CorrelationDecomposition witness_to_correlations(const Operator& z,
                                                 const OperatorFrame& frame_ab,
                                                 const OperatorFrame& frame_c) {
  const Space& s = z.space();
  if (s.size() != 3) throw LabelError("witness: expected three factors");
  if (!(frame_ab.space() == Space{s[0], s[1]}) || !(frame_c.space() == Space{s[2]})) {
    throw LabelError("witness_to_correlations: frames do not match " + s.to_string());
  }
  for (const OperatorFrame* f : {&frame_ab, &frame_c}) {
    if (f->reconstruction_residual() > 1e-8) {
      throw ValidationError("witness_to_correlations: frame is not informationally complete");
    }
  }
  const int da = s[0].dim, db = s[1].dim;

  // Instruments for the A (x) B elements: Kraus operators of M_i^T.
  std::vector<std::vector<MeasurementOp>> inst;
  std::vector<double> inst_scale;
  for (const Operator& m : frame_ab.elements()) {
    const Eigensystem es = hermitian_eig(CMat(m.matrix().transpose()));
    std::vector<CMat> kraus;
    double scale = 1.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      const double lam = es.values(k);
      if (lam < -1e-9) {
        throw ValidationError("witness_to_correlations: frame element is not positive");
      }
      if (lam <= 1e-12) continue;
      CMat e(db, da);
      for (int a = 0; a < da; ++a) {
        for (int b = 0; b < db; ++b) e(b, a) = std::sqrt(lam) * es.vectors(a * db + b, k);
      }
      scale = std::max(scale, max_eigenvalue(CMat(e.adjoint() * e)));
      kraus.push_back(std::move(e));
    }
    std::vector<MeasurementOp> ops;
    for (const CMat& e : kraus) ops.emplace_back(e / std::sqrt(scale));
    inst.push_back(std::move(ops));
    inst_scale.push_back(scale);
  }
  // Effects for the C elements: F_j = sqrt(P_j).
  std::vector<MeasurementOp> effects;
  std::vector<double> eff_scale;
  for (const Operator& p : frame_c.elements()) {
    const double scale = std::max(1.0, max_eigenvalue(p.matrix()));
    effects.emplace_back(psd_sqrt(p.matrix() / scale));
    eff_scale.push_back(scale);
  }

  CorrelationDecomposition out;
  for (std::size_t i = 0; i < frame_ab.size(); ++i) {
    for (std::size_t j = 0; j < frame_c.size(); ++j) {
      const Operator dual = tensor(frame_ab.duals()[i], frame_c.duals()[j]);
      const cplx d = trace_product(dual, z);
      if (std::abs(d.imag()) > 1e-8 * (1.0 + std::abs(d.real()))) {
        throw NotHermitianError("witness_to_correlations: complex coefficient");
      }
      CorrelationTerm t;
      t.i = static_cast<int>(i);
      t.j = static_cast<int>(j);
      t.coefficient = d.real() * inst_scale[i] * eff_scale[j];
      t.e = inst[i];
      t.f = effects[j];
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace tpm
