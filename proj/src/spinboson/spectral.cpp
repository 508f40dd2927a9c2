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

#include "tpm/spinboson/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tpm/core/errors.hpp"

namespace tpm {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// I0 = int_0^h exp(z x) dx and I1 = int_0^h x exp(z x) dx, with power series
// for small |z h| where the closed forms cancel catastrophically.
void segment_moments(cplx z, double h, cplx* i0, cplx* i1) {
  const cplx zh = z * h;
  if (std::abs(zh) < 1e-2) {
    cplx s0 = 0.0, s1 = 0.0, term = 1.0;  // term = (zh)^k / k!
    for (int k = 0; k < 12; ++k) {
      s0 += term / static_cast<double>(k + 1);
      s1 += term / static_cast<double>(k + 2);
      term *= zh / static_cast<double>(k + 1);
    }
    *i0 = h * s0;
    *i1 = h * h * s1;
    return;
  }
  const cplx e = std::exp(zh);
  *i0 = (e - 1.0) / z;
  *i1 = h * e / z - (e - 1.0) / (z * z);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("spectral density: " + what);
}

}  // namespace

void SpectralDensity::validate() const {
  require(std::isfinite(omega0), "omega0 must be finite");
  std::visit(
      Overloaded{
          [](const SingleMode& s) {
            require(std::isfinite(s.g) && s.g > 0.0, "g must be positive");
          },
          [](const Lorentzian& l) {
            require(std::isfinite(l.gamma0) && l.gamma0 > 0.0,
                    "gamma0 must be positive");
            require(std::isfinite(l.lambda) && l.lambda > 0.0,
                    "lambda must be positive");
          },
          [](const OhmicHardCutoff& o) {
            require(std::isfinite(o.eta) && o.eta > 0.0, "eta must be positive");
            require(std::isfinite(o.omega_c) && o.omega_c > 0.0,
                    "omega_c must be positive");
          },
          [](const Tabulated& t) {
            require(t.omega.size() >= 2 && t.omega.size() == t.j.size(),
                    "tabulated J needs >= 2 nodes and matching sizes");
            for (std::size_t k = 0; k < t.omega.size(); ++k) {
              require(std::isfinite(t.omega[k]) && std::isfinite(t.j[k]),
                      "tabulated J must be finite");
              require(t.j[k] >= 0.0, "tabulated J must be non-negative");
              if (k > 0)
                require(t.omega[k] > t.omega[k - 1],
                        "tabulated nodes must increase strictly");
            }
          }},
      model);
}

std::string SpectralDensity::name() const {
  return std::visit(Overloaded{[](const SingleMode&) { return "single_mode"; },
                               [](const Lorentzian&) { return "lorentzian"; },
                               [](const OhmicHardCutoff&) { return "ohmic"; },
                               [](const Tabulated&) { return "tabulated"; }},
                    model);
}

double SpectralDensity::characteristic_rate() const {
  const double w0 = omega0;
  return std::visit(
      Overloaded{
          [](const SingleMode& s) { return s.g; },
          [](const Lorentzian& l) {
            return std::max(l.lambda, std::sqrt(l.gamma0 * l.lambda / 2.0));
          },
          [w0](const OhmicHardCutoff& o) {
            return std::max({o.omega_c, std::abs(w0), std::abs(w0 - o.omega_c),
                             std::sqrt(o.eta / 2.0) * o.omega_c});
          },
          [this, w0](const Tabulated& t) {
            double r = std::max(std::abs(w0 - t.omega.front()),
                                std::abs(w0 - t.omega.back()));
            return std::max(r, std::sqrt(std::abs(bath_correlation(*this, 0.0))));
          }},
      model);
}

nlohmann::json SpectralDensity::to_json() const {
  nlohmann::json j = std::visit(
      Overloaded{
          [](const SingleMode& s) {
            return nlohmann::json{{"kind", "single_mode"}, {"g", s.g}};
          },
          [](const Lorentzian& l) {
            return nlohmann::json{
                {"kind", "lorentzian"}, {"gamma0", l.gamma0}, {"lambda", l.lambda}};
          },
          [](const OhmicHardCutoff& o) {
            return nlohmann::json{
                {"kind", "ohmic"}, {"eta", o.eta}, {"omega_c", o.omega_c}};
          },
          [](const Tabulated& t) {
            return nlohmann::json{{"kind", "tabulated"}, {"omega", t.omega}, {"j", t.j}};
          }},
      model);
  j["omega0"] = omega0;
  return j;
}

SpectralDensity SpectralDensity::from_json(const nlohmann::json& j) {
  SpectralDensity sd;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    sd.omega0 = j.value("omega0", 1.0);
    if (kind == "single_mode") {
      sd.model = SingleMode{j.at("g").get<double>()};
    } else if (kind == "lorentzian") {
      if (j.contains("rabi_ratio")) {
        const double lambda = j.value("lambda", 1.0);
        sd.model = std::get<Lorentzian>(
            lorentzian_from_rabi(j.at("rabi_ratio").get<double>(), lambda).model);
      } else {
        sd.model = Lorentzian{j.at("gamma0").get<double>(),
                              j.at("lambda").get<double>()};
      }
    } else if (kind == "ohmic") {
      sd.model = OhmicHardCutoff{j.at("eta").get<double>(),
                                 j.at("omega_c").get<double>()};
    } else if (kind == "tabulated") {
      sd.model = Tabulated{j.at("omega").get<std::vector<double>>(),
                           j.at("j").get<std::vector<double>>()};
    } else {
      throw ParseError("unknown spectral density kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("spectral density: ") + e.what());
  }
  sd.validate();
  return sd;
}

SpectralDensity lorentzian_from_rabi(double ratio, double lambda) {
  if (!(ratio > 0.0) || !(lambda > 0.0))
    throw ValidationError("Lorentzian: Omega/lambda and lambda must be positive");
  SpectralDensity sd;
  sd.model = Lorentzian{lambda * (4.0 * ratio * ratio + 1.0) / 2.0, lambda};
  return sd;
}

cplx bath_correlation(const SpectralDensity& sd, double u) {
  const double w0 = sd.omega0;
  const cplx z = -kI * u;  // J(w) exp(i (w0 - w) u) = J(w) exp(i w0 u) exp(z w)
  cplx f = std::visit(
      Overloaded{
          [](const SingleMode& s) { return cplx(s.g * s.g); },
          [u](const Lorentzian& l) {
            return cplx(l.gamma0 * l.lambda / 2.0 * std::exp(-l.lambda * std::abs(u)));
          },
          [&](const OhmicHardCutoff& o) {
            cplx i0, i1;
            segment_moments(z, o.omega_c, &i0, &i1);
            return o.eta * std::exp(kI * w0 * u) * i1;
          },
          [&](const Tabulated& t) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k + 1 < t.omega.size(); ++k) {
              const double a = t.omega[k], h = t.omega[k + 1] - a;
              const double slope = (t.j[k + 1] - t.j[k]) / h;
              cplx i0, i1;
              segment_moments(z, h, &i0, &i1);
              acc += std::exp(kI * (w0 - a) * u) * (t.j[k] * i0 + slope * i1);
            }
            return acc;
          }},
      sd.model);
  if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
    throw NumericError("bath correlation is not finite");
  return f;
}

LaplaceValue laplace_f(const SpectralDensity& sd, cplx w) {
  if (!(w.real() > 0.0))
    throw ValidationError("laplace_f: requires Re(w) > 0");
  const double w0 = sd.omega0;
  return std::visit(
      Overloaded{
          [w](const SingleMode& s) { return LaplaceValue{s.g * s.g / w}; },
          [w](const Lorentzian& l) {
            return LaplaceValue{l.gamma0 * l.lambda / (2.0 * (w + l.lambda))};
          },
          [w, w0](const OhmicHardCutoff& o) {
            // eta int_0^wc x / (a + i x) dx with a = w - i w0; the segment
            // a + i x stays in the right half plane, so the difference of
            // principal logarithms is the continuous one.
            const cplx a = w - kI * w0;
            const cplx b = a + kI * o.omega_c;
            LaplaceValue v;
            v.value = -kI * o.eta * o.omega_c + o.eta * a * (std::log(b) - std::log(a));
            v.near_branch_cut = w.real() < 1e-8 * std::abs(w);
            return v;
          },
          [](const Tabulated&) -> LaplaceValue {
            throw ValidationError("laplace_f: no closed form for tabulated J");
          }},
      sd.model);
}

}  // namespace tpm
