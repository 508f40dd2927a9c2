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

#include "tpm/spinboson/scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "tpm/core/errors.hpp"
#include "tpm/spinboson/memory_grid.hpp"

namespace tpm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvGolden = 0.6180339887498949;

// Maximizes `f` over integers in [lo, hi] by golden-section search, finishing
// with an exhaustive look at the last few candidates.
int golden_argmax(int lo, int hi, const std::function<double(int)>& f) {
  while (hi - lo > 3) {
    const int a = hi - static_cast<int>(std::round(kInvGolden * (hi - lo)));
    const int b = lo + static_cast<int>(std::round(kInvGolden * (hi - lo)));
    if (a >= b) break;
    if (f(a) < f(b))
      lo = a + 1;
    else
      hi = b - 1;
  }
  int best = lo;
  double best_v = f(lo);
  for (int k = lo + 1; k <= hi; ++k) {
    const double v = f(k);
    if (v > best_v) best_v = v, best = k;
  }
  return best;
}

}  // namespace

ScanResult scan_detection(const SpectralDensity& sd, const ScanWindow& w,
                          bool check_step) {
  sd.validate();
  if (!(w.t_max > 0.0) || !(w.tau_max > 0.0) || w.n_t < 1 || w.n_tau < 1 || !(w.dt > 0.0))
    throw ValidationError("scan window: extents, point counts and dt must be positive");
  // Make both grid spacings multiples of the solver step.
  const double ht = w.t_max / w.n_t;
  const int stride_t = std::max(1, static_cast<int>(std::ceil(ht / w.dt - 1e-9)));
  const double dt = ht / stride_t;
  const int stride_tau =
      std::max(1, static_cast<int>(std::round(w.tau_max / w.n_tau / dt)));
  const int steps = w.n_t * stride_t + w.n_tau * stride_tau;

  AmplitudeOptions opts;
  opts.check_step = check_step;
  const AmplitudeSolution sol = solve_amplitude(sd, steps * dt, dt, opts);

  ScanResult r;
  r.warnings = sol.warnings;
  r.t_step = stride_t * sol.dt;
  r.tau_step = stride_tau * sol.dt;
  const double period = 2.0 * kPi / sd.characteristic_rate();
  if (std::max(r.t_step, r.tau_step) > period / 20.0) {
    std::ostringstream os;
    os << "scan grid spacing " << std::max(r.t_step, r.tau_step)
       << " is coarser than 1/20 of the shortest period " << period;
    r.warnings.push_back(os.str());
  }
  r.grid = memory_grid(sol, stride_t, stride_tau, w.n_t, w.n_tau);
  r.non_monotone_amplitude = amplitude_non_monotone(sol);

  Eigen::Index bi = 0, bj = 0;
  r.grid_max_m = r.grid.maxCoeff(&bi, &bj);

  // Refine along t, then along tau, on the solver grid around the maximum.
  const int t_hi = w.n_t * stride_t, tau_hi = w.n_tau * stride_tau;
  int it = static_cast<int>(bi) * stride_t;
  int jt = static_cast<int>(bj) * stride_tau;
  auto m_at = [&](int i, int j) { return memory_functional(sol, sd, i * sol.dt, j * sol.dt); };
  it = golden_argmax(std::max(0, it - stride_t), std::min(t_hi, it + stride_t),
                     [&](int i) { return m_at(i, jt); });
  jt = golden_argmax(std::max(0, jt - stride_tau), std::min(tau_hi, jt + stride_tau),
                     [&](int j) { return m_at(it, j); });
  const double refined = m_at(it, jt);
  if (refined >= r.grid_max_m) {
    r.max_m = refined;
    r.t = it * sol.dt;
    r.tau = jt * sol.dt;
  } else {
    r.max_m = r.grid_max_m;
    r.t = static_cast<double>(bi) * r.t_step;
    r.tau = static_cast<double>(bj) * r.tau_step;
  }
  r.detected = r.max_m > 1.0 + kDetectionMargin;
  return r;
}

std::string ScanFamily::parameter_name() const {
  return kind == FamilyKind::kLorentzian ? "omega_over_lambda" : "omega_c_over_omega0";
}

SpectralDensity ScanFamily::at(double p) const {
  if (!(p > 0.0)) throw ValidationError("scan family parameter must be positive");
  if (kind == FamilyKind::kLorentzian) {
    SpectralDensity sd = lorentzian_from_rabi(p, lambda);
    sd.omega0 = omega0;
    return sd;
  }
  SpectralDensity sd;
  sd.model = OhmicHardCutoff{eta, p * omega0};
  sd.omega0 = omega0;
  return sd;
}

ScanWindow ScanFamily::window(double p) const {
  const SpectralDensity sd = at(p);
  const double rate = sd.characteristic_rate();
  ScanWindow w;
  if (t_max > 0.0) {
    w.t_max = t_max;
  } else if (kind == FamilyKind::kLorentzian) {
    // A few Rabi periods, but no longer than the memory time.
    w.t_max = std::min(3.0 * 2.0 * kPi / (p * lambda), 12.0 / lambda);
  } else {
    w.t_max = 10.0 / omega0;
  }
  w.tau_max = w.t_max;
  const double spacing = std::min(2.0 * kPi / rate / 20.0, w.t_max / 40.0);
  const int n = points > 0 ? points : static_cast<int>(std::ceil(w.t_max / spacing));
  w.n_t = w.n_tau = n;
  w.dt = 0.025 / rate;
  return w;
}

ThresholdResult threshold_scan(const ScanFamily& family, const std::vector<double>& grid,
                               double tol, int max_bisections) {
  return threshold_search(
      [&family](double p) { return scan_detection(family.at(p), family.window(p)); }, grid,
      tol, max_bisections);
}

ThresholdResult threshold_search(const std::function<ScanResult(double)>& scan,
                                 const std::vector<double>& grid, double tol,
                                 int max_bisections) {
  if (grid.size() < 2) throw ValidationError("threshold_scan: need at least two parameters");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1]))
      throw ValidationError("threshold_scan: parameter grid must increase");
  if (!(tol > 0.0)) throw ValidationError("threshold_scan: tol must be positive");
  ThresholdResult res;
  res.bracket_lo = grid.front();
  res.bracket_hi = grid.back();
  auto eval = [&](double p) {
    ThresholdRow row{p, scan(p)};
    res.rows.push_back(row);
    return row.scan.detected;
  };
  std::vector<bool> det;
  for (double p : grid) det.push_back(eval(p));
  std::size_t flip = grid.size();
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    if (det[k] != det[k + 1]) {
      flip = k;
      break;
    }
  if (flip == grid.size()) {
    res.message = "no boundary in bracket";
    return res;
  }
  double lo = grid[flip], hi = grid[flip + 1];
  const bool det_lo = det[flip];
  for (int it = 0; it < max_bisections && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) == det_lo ? lo : hi) = mid;
  }
  res.boundary = 0.5 * (lo + hi);
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.message = det_lo ? "memory detected below the boundary" : "memory detected above the boundary";
  return res;
}

void write_scan_csv_header(std::ostream& os) { os << "param,t,tau,m,detected\n"; }

void write_csv_row(std::ostream& os, double param, double t, double tau, double m) {
  const auto old = os.precision();
  os << std::setprecision(12) << param << ',' << t << ',' << tau << ',' << m << ','
     << (m > 1.0 + kDetectionMargin ? 1 : 0) << '\n';
  os.precision(old);
}

void write_scan_csv_rows(std::ostream& os, double param, const ScanResult& r,
                         bool full_grid) {
  if (!full_grid) {
    write_csv_row(os, param, r.t, r.tau, r.max_m);
    return;
  }
  for (Eigen::Index i = 0; i < r.grid.rows(); ++i)
    for (Eigen::Index j = 0; j < r.grid.cols(); ++j)
      write_csv_row(os, param, static_cast<double>(i) * r.t_step,
                    static_cast<double>(j) * r.tau_step, r.grid(i, j));
}

nlohmann::json scan_summary_json(const ScanResult& r) {
  return {{"max_m", r.max_m},
          {"t", r.t},
          {"tau", r.tau},
          {"grid_max_m", r.grid_max_m},
          {"detected", r.detected},
          {"non_monotone_amplitude", r.non_monotone_amplitude},
          {"warnings", r.warnings}};
}

nlohmann::json threshold_json(const ScanFamily& family, const ThresholdResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ThresholdRow& row : r.rows) {
    nlohmann::json j = scan_summary_json(row.scan);
    j["param"] = row.param;
    rows.push_back(j);
  }
  nlohmann::json out{{"family", family.kind == FamilyKind::kLorentzian ? "lorentzian" : "ohmic"},
                     {"parameter", family.parameter_name()},
                     {"rows", rows},
                     {"bracket", {r.bracket_lo, r.bracket_hi}},
                     {"message", r.message}};
  out["boundary"] = r.boundary ? nlohmann::json(*r.boundary) : nlohmann::json(nullptr);
  return out;
}

}  // namespace tpm
