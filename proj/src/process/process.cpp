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

#include "tpm/process/process.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/serialize.hpp"

namespace tpm {

namespace {

constexpr double kUnitaryTol = 1e-10;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

nlohmann::json ValidityReport::to_json() const {
  return {{"positivity", positivity},
          {"trace", trace},
          {"causality", causality},
          {"tolerance", tol},
          {"valid", valid()}};
}

std::string ValidityReport::summary() const {
  return "positivity residual " + fmt(positivity) + ", trace residual " +
         fmt(trace) + ", causality residual " + fmt(causality);
}

ValidityReport validate_tpm(const Operator& w, double tol) {
  const Space& s = w.space();
  if (s.size() != 3) {
    throw LabelError("process matrix must live on three factors, got " +
                     s.to_string());
  }
  ValidityReport r;
  r.tol = tol;
  const std::string& b = s[1].name;
  const std::string& c = s[2].name;
  const double d_b = s[1].dim;
  const double herm = w.hermiticity_residual();
  if (herm > kHermitianTol) {
    r.positivity = std::max(herm, 0.0);
  } else {
    r.positivity = std::max(0.0, -min_eigenvalue(w.matrix()));
  }
  r.trace = std::abs(w.trace() - d_b);
  Operator lhs = d_b * partial_trace(w, {c});
  Operator rhs = tensor(partial_trace(w, {b, c}),
                        Operator::identity(Space{s[1]}));
  r.causality = max_abs_diff(lhs, rhs);
  return r;
}

TpmProcess::TpmProcess(Operator w, double tol)
    : w_(std::move(w)), report_(validate_tpm(w_, tol)) {
  if (!report_.valid()) {
    throw ValidationError("invalid TPM process matrix: " + report_.summary());
  }
}

Operator TpmProcess::reduced_state() const {
  return (1.0 / d_b()) * partial_trace(w_, {label_b(), label_c()});
}

MeasurementOp::MeasurementOp(CMat e, double tol) : e_(std::move(e)) {
  CMat g = e_.adjoint() * e_;
  const double top = max_eigenvalue(0.5 * (g + g.adjoint()), 1e-8);
  if (top > 1.0 + tol) {
    throw ValidationError("measurement operator violates E^dag E <= id (" +
                          fmt(top - 1.0) + ")");
  }
}

ChoiChannel::ChoiChannel(Operator n, double tol) : n_(std::move(n)) {
  if (n_.space().size() != 2) {
    throw LabelError("channel Choi operator must live on two factors");
  }
  if (n_.hermiticity_residual() > kHermitianTol ||
      min_eigenvalue(n_.matrix()) < -tol) {
    throw ValidationError("channel Choi operator is not positive");
  }
  Operator tr = partial_trace(n_, {n_.space()[1].name});
  const double res = max_abs_diff(tr, Operator::identity(tr.space()));
  if (res > tol) {
    throw ValidationError("channel is not trace preserving (" + fmt(res) +
                          ")");
  }
}

ChoiChannel ChoiChannel::from_kraus(const std::vector<CMat>& kraus,
                                    const Subsystem& in,
                                    const Subsystem& out) {
  return ChoiChannel(choi_of_kraus(kraus, in, out));
}

ChoiChannel ChoiChannel::identity(const Subsystem& in, const Subsystem& out) {
  return ChoiChannel(bell_operator(in, out));
}

CMat ChoiChannel::apply(const CMat& rho) const {
  return map_of_choi(n_, Operator(Space{in()}, rho)).matrix();
}

void CmEnsemble::validate(double tol) const {
  if (weights.size() != states.size() || weights.size() != channels.size() ||
      weights.empty()) {
    throw ValidationError("CM ensemble: inconsistent component counts");
  }
  double s = 0.0;
  for (double w : weights) {
    if (w < -tol) throw ValidationError("CM ensemble: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > tol) {
    throw ValidationError("CM ensemble: weights do not sum to one");
  }
  for (const auto& rho : states) {
    if (rho.space().size() != 1 || rho.hermiticity_residual() > kHermitianTol ||
        min_eigenvalue(rho.matrix()) < -tol ||
        std::abs(rho.trace() - 1.0) > tol) {
      throw ValidationError("CM ensemble: state is not a density operator");
    }
  }
}

TesterReport validate_tester(const Tester& t, double tol) {
  if (t.effects.empty()) throw ValidationError("tester has no effects");
  const Space& s = t.effects.front().second.space();
  if (s.size() != 3) {
    throw LabelError("tester effects must live on three factors");
  }
  TesterReport r;
  r.tol = tol;
  Operator total = Operator::zero(s);
  for (const auto& [name, e] : t.effects) {
    Operator ea = align(e, s);
    const double herm = ea.hermiticity_residual();
    const double neg =
        herm > kHermitianTol ? herm : std::max(0.0, -min_eigenvalue(ea.matrix()));
    r.positivity = std::max(r.positivity, neg);
    total = total + ea;
  }
  const double d_c = s[2].dim;
  Operator marg = partial_trace(total, {s[2].name});
  r.product_c = max_abs_diff(
      total, tensor((1.0 / d_c) * marg, Operator::identity(Space{s[2]})));
  Operator ra = (1.0 / d_c) * partial_trace(total, {s[1].name, s[2].name});
  r.normalization = max_abs_diff(ra, Operator::identity(ra.space()));
  return r;
}

std::vector<std::pair<std::string, double>> tester_apply(const Tester& t,
                                                         const TpmProcess& w) {
  TesterReport rep = validate_tester(t, kValidityTol);
  if (!rep.valid()) {
    throw ValidationError("invalid tester: positivity " + fmt(rep.positivity) +
                          ", product " + fmt(rep.product_c) +
                          ", normalization " + fmt(rep.normalization));
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [name, e] : t.effects) {
    out.emplace_back(name, trace_product(e, w.w()).real());
  }
  return out;
}

double tpm_correlation(const TpmProcess& w, const MeasurementOp& e,
                       const MeasurementOp& f) {
  const Subsystem& a = w.space()[0];
  const Subsystem& b = w.space()[1];
  const Subsystem& c = w.space()[2];
  if (e.dim_in() != a.dim || e.dim_out() != b.dim) {
    throw DimensionError("tpm_correlation: E must map A to B");
  }
  if (f.dim_in() != c.dim) {
    throw DimensionError("tpm_correlation: F must act on C");
  }
  Operator me = choi_of_kraus({e.matrix()}, a, b);
  CMat ff = f.matrix().adjoint() * f.matrix();
  Operator tester = tensor(me.transpose(), Operator(Space{c}, ff));
  return trace_product(tester, w.w()).real();
}

HeisenbergMap heisenberg_dual(std::vector<CMat> kraus) {
  return [kraus = std::move(kraus)](const CMat& x) {
    CMat out = CMat::Zero(kraus.front().cols(), kraus.front().cols());
    for (const auto& k : kraus) out += k.adjoint() * x * k;
    return out;
  };
}

double regression_correlation(const CMat& rho, const HeisenbergMap& heis,
                              const MeasurementOp& e, const MeasurementOp& f) {
  const int d_c = f.dim_in();
  CMat id_img = heis(CMat::Identity(d_c, d_c));
  if (id_img.rows() != e.dim_out()) {
    throw DimensionError("regression_correlation: channel does not map C to B");
  }
  const double res = max_abs(id_img - CMat::Identity(id_img.rows(), id_img.cols()));
  if (res > kValidityTol) {
    throw ValidationError("regression_correlation: map is not unital (" +
                          fmt(res) + ")");
  }
  CMat ff = f.matrix().adjoint() * f.matrix();
  CMat op = e.matrix().adjoint() * heis(ff) * e.matrix() * rho;
  return op.trace().real();
}

TpmProcess markov_process(const Operator& rho, const ChoiChannel& n) {
  return TpmProcess(tensor(rho, n.op()));
}

TpmProcess cm_mixture(const CmEnsemble& ens) {
  ens.validate();
  Operator w = tensor(ens.states[0], ens.channels[0].op());
  w = ens.weights[0] * w;
  for (std::size_t l = 1; l < ens.weights.size(); ++l) {
    if (ens.weights[l] == 0.0) continue;
    w = w + ens.weights[l] * tensor(ens.states[l], ens.channels[l].op());
  }
  return TpmProcess(w);
}

TpmProcess process_from_dynamics(const CMat& u1, const CMat& u2,
                                 const CMat& rho_s, const CMat& rho_env,
                                 const ProcessLabels& labels) {
  const int ds = static_cast<int>(rho_s.rows());
  const int de = static_cast<int>(rho_env.rows());
  const int d = ds * de;
  if (rho_s.cols() != ds || rho_env.cols() != de || u1.rows() != d ||
      u2.rows() != d) {
    throw DimensionError("process_from_dynamics: inconsistent dimensions");
  }
  if (unitarity_residual(u1) > kUnitaryTol ||
      unitarity_residual(u2) > kUnitaryTol) {
    throw ValidationError("process_from_dynamics: propagator is not unitary");
  }
  CMat rho0(d, d);
  for (int i = 0; i < ds; ++i) {
    for (int j = 0; j < ds; ++j) {
      rho0.block(i * de, j * de, de, de) = rho_s(i, j) * rho_env;
    }
  }
  CMat rho_t = u1 * rho0 * u1.adjoint();

  Space out{{labels.a, ds}, {labels.b, ds}, {labels.c, ds}};
  const int dtot = ds * ds * ds;
  CMat w = CMat::Zero(dtot, dtot);
  CMat block(ds, ds);
  CMat n(ds * ds, ds * ds);
  for (int mu = 0; mu < de; ++mu) {
    for (int nu = 0; nu < de; ++nu) {
      // <mu|rho_SEnv(t)|nu> on S.
      for (int i = 0; i < ds; ++i) {
        for (int j = 0; j < ds; ++j) block(i, j) = rho_t(i * de + mu, j * de + nu);
      }
      if (block.cwiseAbs().maxCoeff() == 0.0) continue;
      // N_{mu nu} = sum_ij |i><j| (x) Tr_Env[u2 |i mu><j nu| u2^dag].
      for (int i = 0; i < ds; ++i) {
        for (int j = 0; j < ds; ++j) {
          const auto ci = u2.col(i * de + mu);
          const auto cj = u2.col(j * de + nu);
          for (int k = 0; k < ds; ++k) {
            for (int l = 0; l < ds; ++l) {
              cplx s = 0.0;
              for (int e = 0; e < de; ++e) {
                s += ci(k * de + e) * std::conj(cj(l * de + e));
              }
              n(i * ds + k, j * ds + l) = s;
            }
          }
        }
      }
      for (int i = 0; i < ds; ++i) {
        for (int j = 0; j < ds; ++j) {
          if (block(i, j) == cplx(0.0)) continue;
          w.block(i * ds * ds, j * ds * ds, ds * ds, ds * ds) += block(i, j) * n;
        }
      }
    }
  }
  return TpmProcess(Operator(out, w));
}

TpmProcess dephasing_process(const std::vector<CMat>& v,
                             const std::vector<int>& f, const CMat& rho_s,
                             const CMat& rho_env, const CMat& u1,
                             const ProcessLabels& labels) {
  const int de = static_cast<int>(rho_env.rows());
  const int ds = static_cast<int>(rho_s.rows());
  if (static_cast<int>(v.size()) != de || static_cast<int>(f.size()) != de) {
    throw DimensionError("dephasing_process: need one unitary and one image per "
                         "environment level");
  }
  std::vector<int> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < de; ++k) {
    if (sorted[k] != k) {
      throw ValidationError("dephasing_process: f is not a bijection");
    }
  }
  CMat u2 = CMat::Zero(ds * de, ds * de);
  for (int mu = 0; mu < de; ++mu) {
    if (v[mu].rows() != ds || unitarity_residual(v[mu]) > kUnitaryTol) {
      throw ValidationError("dephasing_process: V_mu is not a system unitary");
    }
    for (int i = 0; i < ds; ++i) {
      for (int j = 0; j < ds; ++j) u2(i * de + mu, j * de + f[mu]) = v[mu](i, j);
    }
  }
  return process_from_dynamics(u1, u2, rho_s, rho_env, labels);
}

nlohmann::json process_to_json(const TpmProcess& w) {
  nlohmann::json j = operator_to_json(w.w());
  j["kind"] = "tpm";
  j["dims"] = {w.d_a(), w.d_b(), w.d_c()};
  return j;
}

Operator process_operator_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("kind") && j["kind"] != "tpm") {
    throw ParseError("expected a \"kind\": \"tpm\" document");
  }
  Operator w = operator_from_json(j);
  if (j.is_object() && j.contains("dims")) {
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != w.space().size()) {
      throw ParseError("'dims' does not match 'labels'");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (!dims[k].is_number_integer() || dims[k].get<int>() != w.space()[k].dim) {
        throw ParseError("'dims' does not match 'labels'");
      }
    }
  }
  return w;
}

}  // namespace tpm
