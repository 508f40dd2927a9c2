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

#include "tpm/core/frame.hpp"

#include <cmath>

#include "tpm/core/errors.hpp"
#include "tpm/core/linalg.hpp"

namespace tpm {

namespace {

constexpr double kSpanTol = 1e-10;

Operator matrix_unit(const Space& s, int i, int j) {
  CMat m = CMat::Zero(s.dim(), s.dim());
  m(i, j) = 1.0;
  return Operator(s, m);
}

}  // namespace

OperatorFrame::OperatorFrame(Space space, std::vector<Operator> elements,
                             std::vector<Operator> duals)
    : space_(std::move(space)),
      elements_(std::move(elements)),
      duals_(std::move(duals)) {}

OperatorFrame OperatorFrame::from_elements(const Space& space,
                                           std::vector<Operator> elements) {
  const int n = static_cast<int>(elements.size());
  const int d = space.dim();
  for (auto& e : elements) e = align(e, space);
  if (n < d * d) {
    throw ValidationError("frame with " + std::to_string(n) +
                          " elements cannot span a " + std::to_string(d * d) +
                          "-dimensional operator space");
  }
  CMat gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram(i, j) = trace_product(elements[i].adjoint(), elements[j]);
    }
  }
  Eigensystem es = hermitian_eig(gram, 1e-9);
  const double top = es.values(n - 1);
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (es.values(k) > kSpanTol * std::max(1.0, top)) ++rank;
  }
  if (rank < d * d) {
    throw ValidationError("frame elements span only " + std::to_string(rank) +
                          " of " + std::to_string(d * d) + " dimensions");
  }
  CMat ginv = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double v = es.values(k);
    if (v > kSpanTol * std::max(1.0, top)) {
      ginv += (1.0 / v) * es.vectors.col(k) * es.vectors.col(k).adjoint();
    }
  }
  // Canonical dual D_i = S^{-1} e_i = sum_j Ginv_ji e_j, with coefficient
  // functional Tr(D_i^dag X); we store D_i^dag so that c_i = Tr(dual_i X).
  std::vector<Operator> duals;
  for (int i = 0; i < n; ++i) {
    CMat di = CMat::Zero(d, d);
    for (int j = 0; j < n; ++j) di += ginv(j, i) * elements[j].matrix();
    duals.emplace_back(space, di.adjoint());
  }
  OperatorFrame f(space, std::move(elements), std::move(duals));
  const double res = f.reconstruction_residual();
  if (res > 1e-9) {
    throw ValidationError("frame reconstruction residual " +
                          std::to_string(res) + " exceeds tolerance");
  }
  return f;
}

OperatorFrame OperatorFrame::with_duals(const Space& space,
                                        std::vector<Operator> elements,
                                        std::vector<Operator> duals) {
  if (elements.size() != duals.size()) {
    throw DimensionError("frame: element and dual counts differ");
  }
  for (auto& e : elements) e = align(e, space);
  for (auto& e : duals) e = align(e, space);
  OperatorFrame f(space, std::move(elements), std::move(duals));
  const double res = f.reconstruction_residual();
  if (res > 1e-9) {
    throw ValidationError("frame reconstruction residual " +
                          std::to_string(res) + " exceeds tolerance");
  }
  return f;
}

std::vector<cplx> OperatorFrame::coefficients(const Operator& x) const {
  std::vector<cplx> c;
  c.reserve(duals_.size());
  for (const auto& d : duals_) c.push_back(trace_product(d, x));
  return c;
}

Operator OperatorFrame::reconstruct(const std::vector<cplx>& c) const {
  if (c.size() != elements_.size()) {
    throw DimensionError("frame: coefficient count mismatch");
  }
  CMat m = CMat::Zero(space_.dim(), space_.dim());
  for (std::size_t i = 0; i < c.size(); ++i) m += c[i] * elements_[i].matrix();
  return Operator(space_, m);
}

double OperatorFrame::reconstruction_residual() const {
  double worst = 0.0;
  const int d = space_.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Operator u = matrix_unit(space_, i, j);
      worst = std::max(worst, max_abs_diff(reconstruct(coefficients(u)), u));
    }
  }
  return worst;
}

OperatorFrame sic_frame(const Subsystem& label) {
  if (label.dim != 2) {
    throw DimensionError("sic_frame: only d = 2 is supported");
  }
  const double s2 = std::sqrt(2.0);
  const double bloch[4][3] = {{0.0, 0.0, 1.0},
                              {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
                              {-s2 / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
                              {-s2 / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
  Space s{label};
  const cplx i(0.0, 1.0);
  std::vector<Operator> elements, duals;
  for (const auto& n : bloch) {
    CMat pi(2, 2);
    // Pi = (id + n . sigma) / 2
    pi << 1.0 + n[2], n[0] - i * n[1], n[0] + i * n[1], 1.0 - n[2];
    pi *= 0.5;
    CMat p = 0.5 * pi;
    elements.emplace_back(s, p);
    duals.emplace_back(s, 6.0 * p - CMat::Identity(2, 2));
  }
  return OperatorFrame::with_duals(s, std::move(elements), std::move(duals));
}

OperatorFrame standard_frame(const Subsystem& label) {
  if (label.dim == 2) return sic_frame(label);
  const int d = label.dim;
  Space s{label};
  std::vector<Operator> elements;
  const cplx i(0.0, 1.0);
  for (int a = 0; a < d; ++a) {
    CVec v = CVec::Zero(d);
    v(a) = 1.0;
    elements.push_back(Operator::projector(s, v));
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      CVec v = CVec::Zero(d);
      v(a) = 1.0;
      v(b) = 1.0;
      elements.push_back(Operator::projector(s, v / std::sqrt(2.0)));
      v(b) = i;
      elements.push_back(Operator::projector(s, v / std::sqrt(2.0)));
    }
  }
  return OperatorFrame::from_elements(s, std::move(elements));
}

OperatorFrame product_frame(const OperatorFrame& x, const OperatorFrame& y) {
  Space s = x.space().concat(y.space());
  std::vector<Operator> elements;
  for (const auto& a : x.elements()) {
    for (const auto& b : y.elements()) elements.push_back(tensor(a, b));
  }
  return OperatorFrame::from_elements(s, std::move(elements));
}

OperatorFrame product_frame(const Subsystem& a, const Subsystem& b) {
  return product_frame(standard_frame(a), standard_frame(b));
}

}  // namespace tpm
