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

#include "tpm/core/operator.hpp"

#include <algorithm>

#include "tpm/core/errors.hpp"

namespace tpm {

namespace {

std::vector<int> dims_of(const Space& s) {
  std::vector<int> d;
  for (const auto& p : s.parts()) d.push_back(p.dim);
  return d;
}

// Row-major strides: the last factor varies fastest.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> st(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    st[k] = st[k + 1] * dims[k + 1];
  }
  return st;
}

std::vector<std::string> shared_labels(const Space& x, const Space& y) {
  std::vector<std::string> out;
  for (const auto& p : x.parts()) {
    if (y.contains(p.name)) out.push_back(p.name);
  }
  return out;
}

std::vector<std::string> unshared_labels(const Space& x, const Space& y) {
  std::vector<std::string> out;
  for (const auto& p : x.parts()) {
    if (!y.contains(p.name)) out.push_back(p.name);
  }
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Operator::Operator() : m_(CMat::Zero(1, 1)) {}

Operator::Operator(Space space, CMat m)
    : space_(std::move(space)), m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() != space_.dim()) {
    throw DimensionError("operator of size " + std::to_string(m_.rows()) +
                         "x" + std::to_string(m_.cols()) +
                         " does not match space " + space_.to_string());
  }
}

Operator Operator::identity(const Space& space) {
  return Operator(space, CMat::Identity(space.dim(), space.dim()));
}

Operator Operator::zero(const Space& space) {
  return Operator(space, CMat::Zero(space.dim(), space.dim()));
}

Operator Operator::scalar(cplx value) {
  CMat m(1, 1);
  m(0, 0) = value;
  return Operator(Space(), m);
}

Operator Operator::projector(const Space& space, const CVec& v) {
  if (v.size() != space.dim()) {
    throw DimensionError("vector size does not match space " +
                         space.to_string());
  }
  return Operator(space, v * v.adjoint());
}

cplx Operator::value() const {
  if (!space_.empty()) {
    throw DimensionError("operator on " + space_.to_string() +
                         " is not a scalar");
  }
  return m_(0, 0);
}

double Operator::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

Operator Operator::hermitian_part() const {
  return Operator(space_, 0.5 * (m_ + m_.adjoint()));
}

Operator Operator::renamed(const std::string& from,
                           const std::string& to) const {
  return Operator(space_.renamed(from, to), m_);
}

Operator permute(const Operator& x, const std::vector<std::string>& order) {
  const Space& old = x.space();
  if (order.size() != old.size()) {
    throw LabelError("permutation does not cover " + old.to_string());
  }
  Space target = old.select(order);
  if (target == old) return x;
  const std::vector<int> new_dims = dims_of(target);
  const std::vector<int> old_strides = strides_of(dims_of(old));
  std::vector<int> old_pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    old_pos[k] = static_cast<int>(*old.find(order[k]));
  }
  const int d = target.dim();
  std::vector<int> map(d);
  std::vector<int> digit(order.size(), 0);
  for (int flat = 0; flat < d; ++flat) {
    int o = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      o += digit[k] * old_strides[old_pos[k]];
    }
    map[flat] = o;
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  const CMat& m = x.matrix();
  CMat out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) out(i, j) = m(map[i], map[j]);
  }
  return Operator(target, out);
}

Operator align(const Operator& x, const Space& like) {
  if (x.space() == like) return x;
  if (x.space().size() != like.size()) {
    throw LabelError("cannot align " + x.space().to_string() + " with " +
                     like.to_string());
  }
  for (const auto& p : like.parts()) {
    if (x.space().dim_of(p.name) != p.dim) {
      throw DimensionError("dimension mismatch on label '" + p.name + "'");
    }
  }
  return permute(x, like.names());
}

Operator operator+(const Operator& x, const Operator& y) {
  return Operator(x.space(), x.matrix() + align(y, x.space()).matrix());
}

Operator operator-(const Operator& x, const Operator& y) {
  return Operator(x.space(), x.matrix() - align(y, x.space()).matrix());
}

Operator operator*(const Operator& x, const Operator& y) {
  return Operator(x.space(), x.matrix() * align(y, x.space()).matrix());
}

Operator operator*(cplx s, const Operator& x) {
  return Operator(x.space(), s * x.matrix());
}

Operator operator*(double s, const Operator& x) {
  return Operator(x.space(), s * x.matrix());
}

cplx trace_product(const Operator& x, const Operator& y) {
  const Operator ya = align(y, x.space());
  const CMat& a = x.matrix();
  const CMat& b = ya.matrix();
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

double max_abs_diff(const Operator& x, const Operator& y) {
  return (x.matrix() - align(y, x.space()).matrix()).cwiseAbs().maxCoeff();
}

Operator tensor(const Operator& x, const Operator& y) {
  Space s = x.space().concat(y.space());
  const CMat& a = x.matrix();
  const CMat& b = y.matrix();
  const Eigen::Index n = b.rows();
  CMat out(a.rows() * n, a.cols() * n);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * n, j * n, n, n) = a(i, j) * b;
    }
  }
  return Operator(s, out);
}

Operator embed(const Operator& x, const Space& target) {
  for (const auto& p : x.space().parts()) {
    if (target.dim_of(p.name) != p.dim) {
      throw DimensionError("dimension mismatch on label '" + p.name + "'");
    }
  }
  Space rest = target.without(x.space().names());
  return permute(tensor(x, Operator::identity(rest)), target.names());
}

Operator partial_trace(const Operator& x,
                       const std::vector<std::string>& over) {
  if (over.empty()) return x;
  Space kept = x.space().without(over);
  Operator y = permute(x, concat(kept.names(), over));
  const int dk = kept.dim();
  const int dt = x.dim() / dk;
  const CMat& m = y.matrix();
  CMat out = CMat::Zero(dk, dk);
  for (int b = 0; b < dk; ++b) {
    for (int a = 0; a < dk; ++a) {
      cplx s = 0.0;
      for (int t = 0; t < dt; ++t) s += m(a * dt + t, b * dt + t);
      out(a, b) = s;
    }
  }
  return Operator(kept, out);
}

Operator partial_transpose(const Operator& x,
                           const std::vector<std::string>& over) {
  const Space& s = x.space();
  const std::vector<int> dims = dims_of(s);
  const std::vector<int> st = strides_of(dims);
  std::vector<std::size_t> pos;
  for (const auto& n : over) {
    auto k = s.find(n);
    if (!k) throw LabelError("unknown subsystem label '" + n + "'");
    pos.push_back(*k);
  }
  const int d = x.dim();
  const CMat& m = x.matrix();
  CMat out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      int ii = i, jj = j;
      for (std::size_t k : pos) {
        const int di = (i / st[k]) % dims[k];
        const int dj = (j / st[k]) % dims[k];
        ii += (dj - di) * st[k];
        jj += (di - dj) * st[k];
      }
      out(ii, jj) = m(i, j);
    }
  }
  return Operator(s, out);
}

Operator link_product(const Operator& x, const Operator& y) {
  const std::vector<std::string> shared = shared_labels(x.space(), y.space());
  for (const auto& n : shared) {
    if (x.space().dim_of(n) != y.space().dim_of(n)) {
      throw DimensionError("link product: dimension mismatch on label '" + n +
                           "'");
    }
  }
  const std::vector<std::string> xa = unshared_labels(x.space(), y.space());
  const std::vector<std::string> yc = unshared_labels(y.space(), x.space());
  Operator xp = permute(x, concat(xa, shared));
  Operator yp = permute(y, concat(shared, yc));
  Space out_space = x.space().select(xa).concat(y.space().select(yc));
  const int da = x.space().select(xa).dim();
  const int dc = y.space().select(yc).dim();
  const int ds = x.dim() / da;
  const CMat& X = xp.matrix();
  const CMat& Y = yp.matrix();
  // R[(a,c),(b,d)] = sum_{u,s} X[(a,u),(b,s)] Y[(u,c),(s,d)]
  CMat out = CMat::Zero(da * dc, da * dc);
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < da; ++b) {
      for (int u = 0; u < ds; ++u) {
        for (int s = 0; s < ds; ++s) {
          const cplx xv = X(a * ds + u, b * ds + s);
          if (xv == cplx(0.0)) continue;
          for (int c = 0; c < dc; ++c) {
            for (int e = 0; e < dc; ++e) {
              out(a * dc + c, b * dc + e) += xv * Y(u * dc + c, s * dc + e);
            }
          }
        }
      }
    }
  }
  return Operator(out_space, out);
}

Operator choi_of_kraus(const std::vector<CMat>& kraus, const Subsystem& in,
                       const Subsystem& out) {
  Space s{in, out};
  CMat m = CMat::Zero(s.dim(), s.dim());
  for (const auto& k : kraus) {
    if (k.rows() != out.dim || k.cols() != in.dim) {
      throw DimensionError("Kraus operator of shape " +
                           std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()) + " does not map " +
                           in.name + " to " + out.name);
    }
    CVec v(s.dim());
    for (int i = 0; i < in.dim; ++i) {
      for (int b = 0; b < out.dim; ++b) v(i * out.dim + b) = k(b, i);
    }
    m += v * v.adjoint();
  }
  return Operator(s, m);
}

Operator choi_of_map(const std::function<CMat(const CMat&)>& map,
                     const Subsystem& in, const Subsystem& out) {
  Space s{in, out};
  CMat m = CMat::Zero(s.dim(), s.dim());
  for (int i = 0; i < in.dim; ++i) {
    for (int j = 0; j < in.dim; ++j) {
      CMat e = CMat::Zero(in.dim, in.dim);
      e(i, j) = 1.0;
      CMat img = map(e);
      if (img.rows() != out.dim || img.cols() != out.dim) {
        throw DimensionError("map output does not live on " + out.name);
      }
      m.block(i * out.dim, j * out.dim, out.dim, out.dim) = img;
    }
  }
  return Operator(s, m);
}

Operator map_of_choi(const Operator& m, const Operator& arg) {
  for (const auto& p : arg.space().parts()) {
    if (m.space().dim_of(p.name) != p.dim) {
      throw DimensionError("argument label '" + p.name +
                           "' does not match the Choi operator");
    }
  }
  return link_product(arg, m);
}

MaxEntangled max_entangled(int d) {
  if (d < 1) throw DimensionError("max_entangled: d must be >= 1");
  CVec v = CVec::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return {v / std::sqrt(static_cast<double>(d)), v};
}

Operator bell_operator(const Subsystem& a, const Subsystem& b) {
  if (a.dim != b.dim) {
    throw DimensionError("bell_operator: factors must have equal dimension");
  }
  return Operator::projector(Space{a, b}, max_entangled(a.dim).unnormalized);
}

}  // namespace tpm
