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

#include "tpm/memory/protocol.hpp"

#include <array>
#include <cmath>

#include "tpm/core/errors.hpp"

namespace tpm {

namespace {

std::array<CMat, 4> paulis() {
  std::array<CMat, 4> p;
  for (auto& m : p) m = CMat::Zero(2, 2);
  p[0](0, 0) = p[0](1, 1) = 1.0;
  p[1](0, 1) = p[1](1, 0) = 1.0;
  p[2](0, 1) = cplx(0.0, -1.0);
  p[2](1, 0) = cplx(0.0, 1.0);
  p[3](0, 0) = 1.0;
  p[3](1, 1) = -1.0;
  return p;
}

}  // namespace

ProtocolResult discrimination_protocol(const EntanglementRetriever& theta,
                                       const TpmProcess& w) {
  const Space& s = w.space();
  if (s[0].dim != 2) {
    throw ValidationError("discrimination protocol implemented for a qubit A only");
  }
  const RetrieverReport rep = validate_retriever(theta);
  if (!rep.valid()) {
    throw ValidationError("invalid entanglement retriever: " + rep.summary());
  }
  const Operator th = align(theta.theta, s);
  const Subsystem a = s[0], b = s[1], c = s[2];
  std::string ap_name = a.name + "'";
  while (s.contains(ap_name)) ap_name += "'";
  const Subsystem ap{ap_name, a.dim};
  const Space aap{a, ap};
  const std::array<CMat, 4> p = paulis();
  const std::array<const char*, 4> names = {"I", "X", "Y", "Z"};

  std::vector<Operator> wx, ex;
  Operator sum_e = Operator::zero(Space{ap, b, c});
  for (std::size_t x = 0; x < 4; ++x) {
    // Encoding U_x applied from A to A'.
    const Operator mx = choi_of_kraus({p[x]}, a, ap);
    wx.push_back(permute(link_product(w.w(), mx), {ap.name, b.name, c.name}));
    // Bell projector (id (x) U_x)|Phi+><Phi+|(id (x) U_x^dag) on A (x) A'.
    CVec v = CVec::Zero(4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) v(i * 2 + j) = p[x](j, i) / std::sqrt(2.0);
    }
    const Operator fx(aap, v * v.adjoint());
    ex.push_back(link_product(fx, th));
    sum_e = sum_e + ex.back();
  }
  const Operator eta = theta.eta.renamed(theta.eta.space()[0].name, b.name);
  const Operator e_none =
      tensor(tensor(Operator::identity(Space{ap}), eta), Operator::identity(Space{c})) - sum_e;

  Tester tester;
  for (std::size_t x = 0; x < 4; ++x) tester.effects.emplace_back(names[x], ex[x]);
  tester.effects.emplace_back("inconclusive", e_none);

  ProtocolResult r;
  r.tester = validate_tester(tester);
  if (!r.tester.valid()) {
    throw ValidationError("discrimination protocol: tester validation failed");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < 4; ++x) {
    const double pr = trace_product(ex[x], wx[x]).real();
    r.per_letter.emplace_back(names[x], pr);
    total += pr;
    r.inconclusive += 0.25 * trace_product(e_none, wx[x]).real();
  }
  r.average = total / 4.0;
  r.identity_residual = std::abs(total / 2.0 - trace_product(th, w.w()).real());
  if (r.identity_residual > 1e-8) {
    throw NumericError("discrimination protocol: success identity violated by " +
                       std::to_string(r.identity_residual));
  }
  return r;
}

nlohmann::json protocol_to_json(const ProtocolResult& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [x, v] : r.per_letter) per[x] = v;
  return {{"per_letter", per}, {"average", r.average}, {"inconclusive", r.inconclusive}};
}

}  // namespace tpm
