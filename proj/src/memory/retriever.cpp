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

#include "tpm/memory/retriever.hpp"

#include <cmath>
#include <sstream>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/serialize.hpp"

namespace tpm {

namespace {

void check_three(const Space& s, const char* what) {
  if (s.size() != 3) {
    throw LabelError(std::string(what) + " must have exactly three factors, got " +
                     s.to_string());
  }
}

}  // namespace

std::string RetrieverReport::summary() const {
  std::ostringstream os;
  os << "theta_positivity=" << theta_positivity
     << " eta_positivity=" << eta_positivity << " eta_trace=" << eta_trace
     << " dominance=" << dominance;
  return os.str();
}

RetrieverReport validate_retriever(const EntanglementRetriever& r,
                                   double tol) {
  const Space& s = r.theta.space();
  check_three(s, "retriever");
  if (r.eta.space().size() != 1 || r.eta.dim() != s[1].dim) {
    throw DimensionError("retriever: eta must act on the second factor");
  }
  RetrieverReport rep;
  rep.tol = tol;
  rep.theta_positivity = std::max(0.0, -min_eigenvalue(r.theta.matrix()));
  rep.eta_positivity = std::max(0.0, -min_eigenvalue(r.eta.matrix()));
  rep.eta_trace = std::abs(r.eta.trace().real() - 1.0);
  const Operator eta = r.eta.space()[0].name == s[1].name
                           ? r.eta
                           : r.eta.renamed(r.eta.space()[0].name, s[1].name);
  const Operator dom = tensor(eta, Operator::identity(Space{s[2]})) -
                       partial_trace(r.theta, {s[0].name});
  rep.dominance = std::max(0.0, -min_eigenvalue(dom.matrix()));
  return rep;
}

SdpProblem retriever_problem(const Space& abc) {
  check_three(abc, "retriever problem");
  const int da = abc[0].dim, db = abc[1].dim, dc = abc[2].dim;
  SdpProblem p;
  const int theta = p.add_block("theta", da * db * dc);
  const int eta = p.add_block("eta", db);
  const int slack = p.add_block("slack", db * dc);
  p.add_constraint({{{eta, CMat::Identity(db, db)}}, 1.0});
  // slack - eta (x) id_C + Tr_A theta = 0, probed with Hermitian H on B (x) C.
  const Space bc{abc[1], abc[2]};
  p.add_matrix_constraint(
      {{theta,
        [&](const CMat& h) {
          return tensor(Operator::identity(Space{abc[0]}), Operator(bc, h)).matrix();
        }},
       {eta,
        [&](const CMat& h) {
          return CMat(-partial_trace(Operator(bc, h), {abc[2].name}).matrix());
        }},
       {slack, [](const CMat& h) { return h; }}},
      CMat::Zero(db * dc, db * dc));
  return p;
}

RetrieverResult retriever_value(const TpmProcess& w, const SdpOptions& opts) {
  const Space& s = w.space();
  SdpProblem p = retriever_problem(s);
  p.set_objective(p.block_index("theta"), w.w().hermitian_part().matrix());
  SdpSolution sol = solve(p, opts);
  if (!sol.optimal()) {
    throw NumericError("entanglement-retriever SDP did not converge (" +
                       to_string(sol.status) + ")");
  }
  RetrieverResult r;
  r.retriever.theta = Operator(s, sol.x[p.block_index("theta")]);
  r.retriever.eta = Operator(Space{s[1]}, sol.x[p.block_index("eta")]);
  r.value = trace_product(r.retriever.theta, w.w()).real();
  r.solution = std::move(sol);
  return r;
}

int memory_dimension_bound(double value) {
  if (!(value >= 0.0)) {
    throw ValidationError("memory_dimension_bound: value must be nonnegative");
  }
  const int d = static_cast<int>(std::ceil(value - 1e-9));
  return std::max(1, d);
}

nlohmann::json retriever_to_json(const EntanglementRetriever& r) {
  return {{"theta", operator_to_json(r.theta)}, {"eta", operator_to_json(r.eta)}};
}

EntanglementRetriever retriever_from_json(const nlohmann::json& j) {
  try {
    EntanglementRetriever r;
    r.theta = operator_from_json(j.at("theta"));
    r.eta = operator_from_json(j.at("eta"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed retriever: ") + e.what());
  }
}

}  // namespace tpm
