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

#include "tpm/sdp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"
#include "tpm/core/serialize.hpp"

namespace tpm {

namespace {

// Realified problem data: C_b and A_{i,b} already scaled by 1/2 so that
// <C, Y> = Tr(C X) for Y = realify(X).
struct RealData {
  std::vector<int> n;
  std::vector<RMat> c;
  std::vector<std::vector<std::pair<int, RMat>>> a;  // per constraint
  std::vector<std::vector<std::pair<int, const RMat*>>> by_block;
  RVec b;
};

RealData realify_problem(const SdpProblem& p) {
  RealData d;
  const auto& blocks = p.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    d.n.push_back(2 * blocks[k].dim);
    d.c.push_back(0.5 * realify(p.objective()[k]));
  }
  const auto& cons = p.constraints();
  d.b.resize(static_cast<Eigen::Index>(cons.size()));
  d.a.resize(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    d.b(static_cast<Eigen::Index>(i)) = cons[i].rhs;
    for (const auto& t : cons[i].terms) {
      d.a[i].emplace_back(t.block, 0.5 * realify(t.a));
    }
  }
  d.by_block.resize(blocks.size());
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    for (const auto& [blk, m] : d.a[i]) {
      d.by_block[blk].emplace_back(static_cast<int>(i), &m);
    }
  }
  return d;
}

RVec apply_a(const RealData& d, const std::vector<RMat>& x) {
  RVec out = RVec::Zero(static_cast<Eigen::Index>(d.a.size()));
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    double s = 0.0;
    for (const auto& [blk, m] : d.a[i]) s += (m.array() * x[blk].array()).sum();
    out(static_cast<Eigen::Index>(i)) = s;
  }
  return out;
}

std::vector<RMat> apply_at(const RealData& d, const RVec& y) {
  std::vector<RMat> out;
  for (int n : d.n) out.push_back(RMat::Zero(n, n));
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    const double yi = y(static_cast<Eigen::Index>(i));
    if (yi == 0.0) continue;
    for (const auto& [blk, m] : d.a[i]) out[blk] += yi * m;
  }
  return out;
}

double dot(const std::vector<RMat>& x, const std::vector<RMat>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k].array() * y[k].array()).sum();
  return s;
}

double norm(const std::vector<RMat>& x) { return std::sqrt(dot(x, x)); }

// Largest alpha with x + alpha dx >= 0 (infinity if unbounded). Returns a
// negative value if x itself is not positive definite.
double max_step(const RMat& x, const RMat& dx) {
  Eigen::LLT<RMat> llt(x);
  if (llt.info() != Eigen::Success) return -1.0;
  RMat linv = llt.matrixL().solve(RMat::Identity(x.rows(), x.cols()));
  RMat z = linv * dx * linv.transpose();
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (z + z.transpose()),
                                         Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

}  // namespace

int SdpProblem::add_block(std::string name, int dim) {
  if (dim < 1) throw DimensionError("SDP block dimension must be >= 1");
  blocks_.push_back({std::move(name), dim});
  objective_.push_back(CMat::Zero(dim, dim));
  return static_cast<int>(blocks_.size()) - 1;
}

void SdpProblem::set_objective(int block, CMat c) {
  if (block < 0 || block >= static_cast<int>(blocks_.size())) {
    throw DimensionError("SDP objective: unknown block");
  }
  objective_[block] = std::move(c);
}

void SdpProblem::add_constraint(Constraint c) {
  constraints_.push_back(std::move(c));
}

void SdpProblem::add_matrix_constraint(
    const std::vector<std::pair<int, Adjoint>>& parts, const CMat& rhs) {
  const int d = static_cast<int>(rhs.rows());
  std::vector<Constraint> rows;
  for (const CMat& h : hermitian_basis(d)) {
    Constraint c;
    for (const auto& [blk, adj] : parts) {
      CMat a = adj(h);
      auto it = std::find_if(c.terms.begin(), c.terms.end(),
                             [b = blk](const Term& x) { return x.block == b; });
      if (it != c.terms.end()) {
        it->a += a;
      } else {
        c.terms.push_back({blk, std::move(a)});
      }
    }
    c.terms.erase(std::remove_if(c.terms.begin(), c.terms.end(),
                                 [](const Term& t) { return max_abs(t.a) == 0.0; }),
                  c.terms.end());
    c.rhs = (h * rhs).trace().real();
    if (c.terms.empty()) {
      if (std::abs(c.rhs) > 1e-12) {
        throw ValidationError("SDP matrix constraint is trivially infeasible");
      }
      continue;
    }
    rows.push_back(std::move(c));
  }
  if (rows.empty()) return;

  // Linear maps whose range is a proper subspace (e.g. causality-type
  // conditions) produce linearly dependent rows, which make the Schur
  // complement singular. Detect that through the Gram matrix of the rows and
  // replace the rows by an orthogonal basis of their span.
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  auto inner = [](const Constraint& x, const Constraint& y) {
    double s = 0.0;
    for (const auto& tx : x.terms) {
      for (const auto& ty : y.terms) {
        if (tx.block == ty.block) s += (tx.a.adjoint() * ty.a).trace().real();
      }
    }
    return s;
  };
  RMat gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      gram(i, j) = gram(j, i) = inner(rows[i], rows[j]);
    }
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(gram);
  const double cut = 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff());
  if (es.eigenvalues()(0) > cut) {
    for (auto& c : rows) constraints_.push_back(std::move(c));
    return;
  }
  RVec b(m);
  for (Eigen::Index i = 0; i < m; ++i) b(i) = rows[i].rhs;
  for (Eigen::Index k = 0; k < m; ++k) {
    const RVec u = es.eigenvectors().col(k);
    if (es.eigenvalues()(k) <= cut) {
      if (std::abs(u.dot(b)) > 1e-9 * (1.0 + b.norm())) {
        throw ValidationError("SDP matrix constraint is inconsistent");
      }
      continue;
    }
    const double scale = 1.0 / std::sqrt(es.eigenvalues()(k));
    Constraint c;
    c.rhs = scale * u.dot(b);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (const auto& t : rows[i].terms) {
        auto it = std::find_if(c.terms.begin(), c.terms.end(),
                               [&](const Term& x) { return x.block == t.block; });
        if (it == c.terms.end()) {
          c.terms.push_back({t.block, scale * u(i) * t.a});
        } else {
          it->a += scale * u(i) * t.a;
        }
      }
    }
    constraints_.push_back(std::move(c));
  }
}

int SdpProblem::block_index(const std::string& name) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].name == name) return static_cast<int>(k);
  }
  throw LabelError("SDP: unknown block '" + name + "'");
}

void SdpProblem::validate() const {
  long dof = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = blocks_[k].dim;
    dof += static_cast<long>(n) * n;
    const CMat& c = objective_[k];
    if (c.rows() != n || c.cols() != n) {
      throw DimensionError("SDP objective of block '" + blocks_[k].name +
                           "' has the wrong size");
    }
    if (max_abs(c - c.adjoint()) > kHermitianTol) {
      throw NotHermitianError("SDP objective is not Hermitian");
    }
  }
  for (const auto& con : constraints_) {
    for (const auto& t : con.terms) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks_.size())) {
        throw DimensionError("SDP constraint references an unknown block");
      }
      const int n = blocks_[t.block].dim;
      if (t.a.rows() != n || t.a.cols() != n) {
        throw DimensionError("SDP constraint matrix has the wrong size");
      }
      if (max_abs(t.a - t.a.adjoint()) > kHermitianTol) {
        throw NotHermitianError("SDP constraint matrix is not Hermitian");
      }
    }
  }
  if (static_cast<long>(constraints_.size()) > dof) {
    throw DimensionError("SDP has more constraints than degrees of freedom");
  }
}

nlohmann::json SdpProblem::to_json() const {
  nlohmann::json blocks = nlohmann::json::array();
  nlohmann::json obj = nlohmann::json::array();
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks.push_back({{"name", blocks_[k].name}, {"dim", blocks_[k].dim}});
    obj.push_back(matrix_to_json(objective_[k]));
  }
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : constraints_) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms) {
      terms.push_back({{"block", t.block}, {"a", matrix_to_json(t.a)}});
    }
    cons.push_back({{"rhs", c.rhs}, {"terms", terms}});
  }
  return {{"blocks", blocks}, {"objective", obj}, {"constraints", cons}};
}

SdpProblem SdpProblem::from_json(const nlohmann::json& j) {
  try {
    SdpProblem p;
    for (const auto& b : j.at("blocks")) {
      p.add_block(b.at("name").get<std::string>(), b.at("dim").get<int>());
    }
    const auto& obj = j.at("objective");
    for (std::size_t k = 0; k < obj.size(); ++k) {
      p.set_objective(static_cast<int>(k), matrix_from_json(obj[k]));
    }
    for (const auto& c : j.at("constraints")) {
      Constraint con;
      con.rhs = c.at("rhs").get<double>();
      for (const auto& t : c.at("terms")) {
        con.terms.push_back({t.at("block").get<int>(), matrix_from_json(t.at("a"))});
      }
      p.add_constraint(std::move(con));
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed SDP problem: ") + e.what());
  }
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kMaxIterations:
      return "max-iterations";
    case SdpStatus::kInfeasibleSuspected:
      return "infeasible-suspected";
  }
  return "unknown";
}

RMat realify(const CMat& h) {
  if (h.rows() != h.cols()) throw DimensionError("realify: matrix not square");
  if (max_abs(h - h.adjoint()) > kHermitianTol) {
    throw NotHermitianError("realify: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

CMat derealify(const RMat& y) {
  const Eigen::Index n = y.rows() / 2;
  RMat re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
  RMat im = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
  CMat out(n, n);
  out.real() = re;
  out.imag() = im;
  return 0.5 * (out + out.adjoint());
}

std::vector<CMat> hermitian_basis(int d) {
  std::vector<CMat> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    CMat e = CMat::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      CMat e = CMat::Zero(d, d);
      e(k, l) = r;
      e(l, k) = r;
      basis.push_back(e);
      e(k, l) = cplx(0.0, r);
      e(l, k) = cplx(0.0, -r);
      basis.push_back(e);
    }
  }
  return basis;
}

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
  p.validate();
  const RealData d = realify_problem(p);
  const std::size_t nb = d.n.size();
  const Eigen::Index m = d.b.size();

  double total_n = 0.0;
  for (int n : d.n) total_n += n;
  double c_norm = 0.0;
  for (const auto& c : d.c) c_norm += c.squaredNorm();
  c_norm = std::sqrt(c_norm);
  const double b_norm = d.b.norm();

  // Identity-based starting point scaled to the data.
  double max_a = 0.0, ratio = 0.0;
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    double an = 0.0;
    for (const auto& [blk, a] : d.a[i]) an += a.squaredNorm();
    an = std::sqrt(an);
    max_a = std::max(max_a, an);
    ratio = std::max(ratio, (1.0 + std::abs(d.b(static_cast<Eigen::Index>(i)))) /
                                (1.0 + an));
  }
  const double xi_p = std::max({10.0, std::sqrt(total_n), total_n * ratio});
  const double xi_d = std::max({10.0, std::sqrt(total_n), c_norm, max_a});

  std::vector<RMat> x, s;
  for (int n : d.n) {
    x.push_back(xi_p * RMat::Identity(n, n));
    s.push_back(xi_d * RMat::Identity(n, n));
  }
  RVec y = RVec::Zero(m);

  SdpSolution sol;
  double best_res = std::numeric_limits<double>::infinity();
  int last_improve = 0;
  int it = 0;
  for (;; ++it) {
    const RVec rp = d.b - apply_a(d, x);
    std::vector<RMat> aty = apply_at(d, y);
    std::vector<RMat> rd(nb);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = d.c[k] + s[k] - aty[k];
    const double pobj = dot(d.c, x);
    const double dobj = d.b.dot(y);
    const double pres = rp.norm() / (1.0 + b_norm);
    const double dres = norm(rd) / (1.0 + c_norm);
    const double gap = std::abs(dobj - pobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double xs = dot(x, s);

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.gap = gap;
    sol.iterations = it;
    if (opts.record_history) {
      sol.history.push_back({it, pobj, dobj, pres, dres, xs});
    }
    if (pres <= opts.tol && dres <= opts.tol && gap <= opts.tol) {
      sol.status = SdpStatus::kOptimal;
      break;
    }
    if (it >= opts.max_iter) {
      sol.status = SdpStatus::kMaxIterations;
      break;
    }
    const double res = std::max(pres, dres);
    if (res < 0.5 * best_res) {
      best_res = res;
      last_improve = it;
    } else if (res > opts.tol && it - last_improve >= opts.stall_window) {
      sol.status = SdpStatus::kInfeasibleSuspected;
      break;
    }

    const double mu = xs / total_n;
    const double smu = opts.sigma * mu;
    std::vector<RMat> sinv(nb);
    bool broken = false;
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<RMat> llt(s[k]);
      if (llt.info() != Eigen::Success) {
        broken = true;
        break;
      }
      sinv[k] = llt.solve(RMat::Identity(d.n[k], d.n[k]));
    }
    if (broken) {
      sol.status = SdpStatus::kInfeasibleSuspected;
      break;
    }

    // Schur complement M_ij = <A_i, X A_j S^-1> and right-hand side.
    RMat schur = RMat::Zero(m, m);
    RVec rhs = -rp;
    for (std::size_t k = 0; k < nb; ++k) {
      const auto& cons = d.by_block[k];
      if (cons.empty()) continue;
      const RMat z = smu * sinv[k] - x[k] + x[k] * rd[k] * sinv[k];
      for (const auto& [j, aj] : cons) {
        const RMat g = x[k] * (*aj) * sinv[k];
        for (const auto& [i, ai] : cons) {
          schur(i, j) += (ai->array() * g.array()).sum();
        }
        rhs(j) += (aj->array() * z.array()).sum();
      }
    }
    schur = 0.5 * (schur + schur.transpose());
    RVec dy;
    Eigen::LLT<RMat> mllt(schur);
    if (mllt.info() == Eigen::Success) {
      dy = mllt.solve(rhs);
    } else {
      dy = schur.ldlt().solve(rhs);
    }
    if (!dy.allFinite()) {
      sol.status = SdpStatus::kInfeasibleSuspected;
      break;
    }
    const std::vector<RMat> atdy = apply_at(d, dy);
    std::vector<RMat> dx(nb), ds(nb);
    double alpha_p = std::numeric_limits<double>::infinity();
    double alpha_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nb; ++k) {
      ds[k] = atdy[k] - rd[k];
      RMat t = smu * sinv[k] - x[k] - x[k] * ds[k] * sinv[k];
      dx[k] = 0.5 * (t + t.transpose());
      const double ap = max_step(x[k], dx[k]);
      const double ad = max_step(s[k], ds[k]);
      if (ap < 0.0 || ad < 0.0) broken = true;
      alpha_p = std::min(alpha_p, ap);
      alpha_d = std::min(alpha_d, ad);
    }
    if (broken) {
      sol.status = SdpStatus::kInfeasibleSuspected;
      break;
    }
    alpha_p = std::min(1.0, opts.step_fraction * alpha_p);
    alpha_d = std::min(1.0, opts.step_fraction * alpha_d);
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] += alpha_p * dx[k];
      s[k] += alpha_d * ds[k];
    }
    y += alpha_d * dy;
  }

  sol.y = y;
  sol.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nb; ++k) {
    sol.x.push_back(derealify(x[k]));
    sol.s.push_back(derealify(s[k]));
    sol.min_eigenvalue = std::min(sol.min_eigenvalue, min_eigenvalue(sol.x.back()));
  }
  // Report objectives of the complex blocks actually returned.
  double pobj = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    pobj += (p.objective()[k] * sol.x[k]).trace().real();
  }
  sol.primal_objective = pobj;
  return sol;
}

}  // namespace tpm
