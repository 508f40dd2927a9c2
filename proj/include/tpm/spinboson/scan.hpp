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

#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tpm/spinboson/spectral.hpp"
#include "tpm/spinboson/volterra.hpp"

namespace tpm {

inline constexpr double kDetectionMargin = 1e-6;

// Scan window: t in [0, t_max] and tau in [0, tau_max] on n_t x n_tau grid
// intervals; the amplitude is solved with step dt (rounded so that the grid
// spacing is a multiple of it).
struct ScanWindow {
  double t_max = 10.0;
  double tau_max = 10.0;
  int n_t = 100;
  int n_tau = 100;
  double dt = 0.01;
};

struct ScanResult {
  double max_m = 0.0;  // after refinement
  double t = 0.0;
  double tau = 0.0;
  double grid_max_m = 0.0;
  bool detected = false;  // max_m > 1 + kDetectionMargin
  bool non_monotone_amplitude = false;
  RMat grid;  // m on the scan grid
  double t_step = 0.0;
  double tau_step = 0.0;
  std::vector<std::string> warnings;
};

// Maximizes m over the window: grid evaluation followed by one golden-section
// pass along t and then tau around the grid maximum.
ScanResult scan_detection(const SpectralDensity& sd, const ScanWindow& w,
                          bool check_step = false);

enum class FamilyKind { kLorentzian, kOhmic };

// One-parameter family of baths: Lorentzian in the ratio Omega/lambda (times in
// 1/lambda) or Ohmic in omega_c/omega0 (times in 1/omega0).
struct ScanFamily {
  FamilyKind kind = FamilyKind::kLorentzian;
  double lambda = 1.0;  // Lorentzian width
  double eta = 0.1;     // Ohmic coupling
  double omega0 = 1.0;
  // Optional window overrides; non-positive values select the defaults.
  double t_max = 0.0;
  int points = 0;

  std::string parameter_name() const;
  SpectralDensity at(double p) const;
  ScanWindow window(double p) const;
};

struct ThresholdRow {
  double param = 0.0;
  ScanResult scan;
};

struct ThresholdResult {
  std::vector<ThresholdRow> rows;  // grid rows, then bisection probes
  std::optional<double> boundary;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::string message;
};

// Evaluates the family on `grid` (increasing), then bisects the first
// detected/undetected sign change to within `tol`. With no change the result
// carries no boundary and the message "no boundary in bracket".
ThresholdResult threshold_scan(const ScanFamily& family,
                               const std::vector<double>& grid,
                               double tol = 1e-2, int max_bisections = 20);

// Same search for an arbitrary scan function of the parameter.
ThresholdResult threshold_search(const std::function<ScanResult(double)>& scan,
                                 const std::vector<double>& grid, double tol = 1e-2,
                                 int max_bisections = 20);

// CSV columns param,t,tau,m,detected with 12 significant digits.
void write_scan_csv_header(std::ostream& os);
void write_scan_csv_rows(std::ostream& os, double param, const ScanResult& r,
                         bool full_grid);
void write_csv_row(std::ostream& os, double param, double t, double tau,
                   double m);

nlohmann::json scan_summary_json(const ScanResult& r);
nlohmann::json threshold_json(const ScanFamily& family, const ThresholdResult& r);

}  // namespace tpm
