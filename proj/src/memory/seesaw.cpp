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

#include "tpm/memory/seesaw.hpp"

#include <limits>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/random.hpp"

namespace tpm {

namespace {

struct Atom {
  double weight = 0.0;
  CMat rho;  // on the first factor
  CMat n;    // CJ operator on second (x) third factor
};

class Seesaw {
 public:
  Seesaw(const Operator& x, const SeesawOptions& opts)
      : space_(x.space()), opts_(opts) {
    if (space_.size() != 3) throw LabelError("see-saw: expected three factors");
    x_ = x.hermitian_part();
    a_ = space_[0];
    b_ = space_[1];
    c_ = space_[2];
    // Channel step template: N >= 0 with Tr_C N = id_B.
    channel_block_ = channel_.add_block("N", b_.dim * c_.dim);
    const int dc = c_.dim;
    channel_.add_matrix_constraint(
        {{channel_block_,
          SdpProblem::Adjoint([dc](const CMat& h) {
            return kron(h, CMat::Identity(dc, dc));
          })}},
        CMat::Identity(b_.dim, b_.dim));
  }

  // One restart; returns the final value and the finished ensemble.
  double run(std::uint64_t seed, CmEnsemble* best, int* rounds) {
    Rng rng(seed);
    const int k = opts_.ensemble_size;
    std::vector<Atom> atoms(static_cast<std::size_t>(k));
    for (auto& at : atoms) {
      at.rho = random_density(a_.dim, rng);
      const int count = std::max(2, (b_.dim + c_.dim - 1) / c_.dim);
      at.n = choi_of_kraus(random_kraus(b_.dim, c_.dim, count, rng), b_, c_).matrix();
    }
    const std::vector<double> w = random_probabilities(k, rng);
    for (int l = 0; l < k; ++l) atoms[static_cast<std::size_t>(l)].weight = w[static_cast<std::size_t>(l)];

    double value = evaluate(atoms);
    int r = 0;
    for (; r < opts_.max_rounds; ++r) {
      std::vector<Atom> next = atoms;
      if (!state_step(next) || !channel_step(next)) break;
      const double v = evaluate(next);
      if (v < value) break;  // solver noise; keep the better ensemble
      const double gain = v - value;
      atoms = std::move(next);
      value = v;
      if (gain < opts_.tol) break;
    }
    *rounds = r;
    *best = to_ensemble(atoms);
    return value;
  }

 private:
  double evaluate(const std::vector<Atom>& atoms) const {
    double v = 0.0;
    for (const auto& at : atoms) {
      if (at.weight == 0.0) continue;
      const Operator omega(space_, kron(at.rho, at.n));
      v += at.weight * trace_product(x_, omega).real();
    }
    return v;
  }

  // Tr_BC[X (id_A (x) N)] on A.
  CMat state_objective(const CMat& n) const {
    const Operator m = x_ * embed(Operator(Space{b_, c_}, n), space_);
    return partial_trace(m, {b_.name, c_.name}).hermitian_part().matrix();
  }

  // Tr_A[X (sigma (x) id_BC)] on B (x) C.
  CMat channel_objective(const CMat& sigma) const {
    const Operator m = x_ * embed(Operator(Space{a_}, sigma), space_);
    return partial_trace(m, {a_.name}).hermitian_part().matrix();
  }

  bool state_step(std::vector<Atom>& atoms) const {
    SdpProblem p;
    Constraint norm;
    for (std::size_t l = 0; l < atoms.size(); ++l) {
      const int blk = p.add_block("sigma" + std::to_string(l), a_.dim);
      p.set_objective(blk, state_objective(atoms[l].n));
      norm.terms.push_back({blk, CMat::Identity(a_.dim, a_.dim)});
    }
    norm.rhs = 1.0;
    p.add_constraint(std::move(norm));
    const SdpSolution s = solve(p, opts_.sdp);
    if (!s.optimal()) return false;
    double total = 0.0;
    std::vector<CMat> sig(atoms.size());
    for (std::size_t l = 0; l < atoms.size(); ++l) {
      sig[l] = clip_psd(s.x[l]);
      total += sig[l].trace().real();
    }
    for (std::size_t l = 0; l < atoms.size(); ++l) {
      const double t = sig[l].trace().real();
      atoms[l].weight = t / total;
      if (t > 1e-14) atoms[l].rho = sig[l] / t;
    }
    return true;
  }

  bool channel_step(std::vector<Atom>& atoms) const {
    for (auto& at : atoms) {
      if (at.weight <= 1e-14) continue;
      SdpProblem p = channel_;
      p.set_objective(channel_block_, channel_objective(at.weight * at.rho));
      const SdpSolution s = solve(p, opts_.sdp);
      if (!s.optimal()) return false;
      at.n = repair_channel(s.x[0]);
    }
    return true;
  }

  // Restores Tr_C N = id_B exactly: N -> (T^{-1/2} (x) id) N (T^{-1/2} (x) id).
  CMat repair_channel(const CMat& n) const {
    const CMat np = clip_psd(n);
    const Operator nop(Space{b_, c_}, np);
    const CMat t = partial_trace(nop, {c_.name}).matrix();
    const CMat tis = hermitian_function(t, [](double v) {
      return v > 1e-14 ? 1.0 / std::sqrt(v) : 0.0;
    });
    const CMat l = kron(tis, CMat::Identity(c_.dim, c_.dim));
    const CMat out = l * np * l;
    return 0.5 * (out + out.adjoint());
  }

  CmEnsemble to_ensemble(const std::vector<Atom>& atoms) const {
    CmEnsemble e;
    for (const auto& at : atoms) {
      e.weights.push_back(at.weight);
      e.states.emplace_back(Space{a_}, at.rho);
      e.channels.emplace_back(Operator(Space{b_, c_}, at.n), 1e-7);
    }
    return e;
  }

  using Constraint = SdpProblem::Constraint;

  Space space_;
  SeesawOptions opts_;
  Operator x_;
  Subsystem a_, b_, c_;
  SdpProblem channel_;
  int channel_block_ = 0;
};

SeesawResult finish(std::vector<double> values, std::vector<CmEnsemble> ens,
                    std::vector<int> rounds) {
  SeesawResult res;
  res.value = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r] > res.value) {
      res.value = values[r];
      res.best_restart = static_cast<int>(r);
    }
  }
  res.ensemble = std::move(ens[static_cast<std::size_t>(res.best_restart)]);
  res.restart_values = std::move(values);
  res.restart_rounds = std::move(rounds);
  return res;
}

void check_options(const SeesawOptions& opts) {
  if (opts.ensemble_size < 1 || opts.restarts < 1) {
    throw ValidationError("see-saw: ensemble_size and restarts must be >= 1");
  }
}

}  // namespace

SeesawResult cm_maximize(const Operator& x, const SeesawOptions& opts) {
  check_options(opts);
  const Seesaw s(x, opts);
  const int n = opts.restarts;
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<CmEnsemble> ens(static_cast<std::size_t>(n));
  std::vector<int> rounds(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < n; ++r) {
    Seesaw local = s;
    const auto k = static_cast<std::size_t>(r);
    values[k] = local.run(opts.seed + static_cast<std::uint64_t>(r), &ens[k], &rounds[k]);
  }
  return finish(std::move(values), std::move(ens), std::move(rounds));
}

SeesawResult cm_maximize_serial(const Operator& x, const SeesawOptions& opts) {
  check_options(opts);
  Seesaw s(x, opts);
  const int n = opts.restarts;
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<CmEnsemble> ens(static_cast<std::size_t>(n));
  std::vector<int> rounds(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const auto k = static_cast<std::size_t>(r);
    values[k] = s.run(opts.seed + static_cast<std::uint64_t>(r), &ens[k], &rounds[k]);
  }
  return finish(std::move(values), std::move(ens), std::move(rounds));
}

SeesawResult classical_threshold_seesaw(const EntanglementRetriever& theta,
                                        const SeesawOptions& opts) {
  return cm_maximize(theta.theta, opts);
}

RelaxationResult ppt_relaxation_upper(const Operator& x,
                                      const SdpOptions& opts) {
  const Space& s = x.space();
  if (s.size() != 3) throw LabelError("relaxation: expected three factors");
  const Subsystem a = s[0], b = s[1], c = s[2];
  const int dim = s.dim();
  SdpProblem p;
  const int om = p.add_block("omega", dim);
  const int pt = p.add_block("omega_pt", dim);
  p.set_objective(om, x.hermitian_part().matrix());
  p.add_constraint({{{om, CMat::Identity(dim, dim)}}, static_cast<double>(b.dim)});
  // omega_pt - omega^{T_A} = 0 (the partial transpose is self-adjoint).
  p.add_matrix_constraint(
      {{pt, [](const CMat& h) { return h; }},
       {om,
        [&](const CMat& h) {
          return CMat(-partial_transpose(Operator(s, h), {a.name}).matrix());
        }}},
      CMat::Zero(dim, dim));
  // d_B Tr_C omega - Tr_BC omega (x) id_B = 0, probed with H on A (x) B.
  const Space ab{a, b};
  p.add_matrix_constraint(
      {{om,
        [&](const CMat& h) {
          const Operator hh(ab, h);
          const Operator term1 = static_cast<double>(b.dim) * embed(hh, s);
          const Operator term2 = embed(partial_trace(hh, {b.name}), s);
          return CMat((term1 - term2).matrix());
        }}},
      CMat::Zero(a.dim * b.dim, a.dim * b.dim));
  SdpSolution sol = solve(p, opts);
  if (!sol.optimal()) {
    throw NumericError("relaxation SDP did not converge (" +
                       to_string(sol.status) + ")");
  }
  RelaxationResult r;
  r.value = sol.primal_objective;
  r.solution = std::move(sol);
  return r;
}

}  // namespace tpm
