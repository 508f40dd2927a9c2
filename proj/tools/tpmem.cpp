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

// tpmem: command-line front end for process validation, memory detection,
// spin-boson scans and witness decompositions.
//
// Exit codes: 0 success, 1 semantic failure (invalid process / witness),
// 2 input failure (parse, label or shape errors), 3 numeric failure.

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpm/core/errors.hpp"
#include "tpm/core/frame.hpp"
#include "tpm/core/random.hpp"
#include "tpm/core/serialize.hpp"
#include "tpm/memory/battery.hpp"
#include "tpm/memory/protocol.hpp"
#include "tpm/memory/retriever.hpp"
#include "tpm/memory/seesaw.hpp"
#include "tpm/memory/witness.hpp"
#include "tpm/process/process.hpp"
#include "tpm/spinboson/jaynes_cummings.hpp"
#include "tpm/spinboson/scan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tpm {
namespace {

constexpr double kPi = 3.14159265358979323846;

enum ExitCode { kOk = 0, kSemantic = 1, kInput = 2, kNumeric = 3 };

struct GlobalFlags {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  int jobs = 0;
  double tol = 1e-8;
  std::string units;
};

json load_config(const GlobalFlags& g) {
  if (g.config.empty()) return json::object();
  json j = read_json_file(g.config);
  if (!j.is_object()) throw ParseError("config file must contain a JSON object");
  return j;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field '") + key + "': " + e.what());
  }
}

// Writes `j` to <out>/<name> when an output directory is given; always echoes
// it to stdout.
void emit_json(const GlobalFlags& g, const std::string& name, const json& j) {
  if (!g.out.empty()) {
    fs::create_directories(g.out);
    write_json_file((fs::path(g.out) / name).string(), j);
  }
  std::cout << j.dump(2) << "\n";
}

std::ofstream open_csv(const GlobalFlags& g, const std::string& name) {
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw ParseError("cannot write " + (dir / name).string());
  write_scan_csv_header(os);
  return os;
}

void print_warnings(const std::vector<std::string>& w, const std::string& where) {
  for (const std::string& s : w) std::cerr << "warning [" << where << "]: " << s << "\n";
}

// ------------------------------------------------------------------ units

// Rate whose inverse is the time unit. omega0 is always available; g and
// lambda only for the spectral densities that define them. A unit that does
// not match the bath is a configuration (input) error.
double unit_rate(const std::string& units, const SpectralDensity& sd) {
  if (units == "omega0") {
    if (!(std::abs(sd.omega0) > 0.0))
      throw ParseError("units omega0 require a non-zero omega0");
    return std::abs(sd.omega0);
  }
  if (units == "g") {
    if (const auto* s = std::get_if<SingleMode>(&sd.model)) return s->g;
    throw ParseError("units g are only defined for the single-mode bath");
  }
  if (units == "lambda") {
    if (const auto* l = std::get_if<Lorentzian>(&sd.model)) return l->lambda;
    throw ParseError("units lambda are only defined for the Lorentzian bath");
  }
  throw ParseError("unknown units '" + units + "' (omega0, g or lambda)");
}

void scale_times(ScanResult& r, double rate) {
  r.t *= rate;
  r.tau *= rate;
  r.t_step *= rate;
  r.tau_step *= rate;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path) {
  const Operator w = process_operator_from_json(read_json_file(path));
  const ValidityReport rep = validate_tpm(w);
  std::cout << rep.to_json().dump(2) << "\n";
  std::cerr << (rep.valid() ? "valid process matrix: " : "invalid process matrix: ")
            << rep.summary() << "\n";
  return rep.valid() ? kOk : kSemantic;
}

// ------------------------------------------------------------------ detect

struct DetectFlags {
  std::string path;
  bool protocol = false;
  bool theta = false;
  bool lambda_star = false;
};

int cmd_detect(const DetectFlags& f, const GlobalFlags& g) {
  const TpmProcess w(process_operator_from_json(read_json_file(f.path)));
  SdpOptions sdp;
  sdp.tol = g.tol;
  const RetrieverResult r = retriever_value(w, sdp);
  json rep{{"value", r.value},
           {"dimension_bound", memory_dimension_bound(r.value)},
           {"detected", r.value > 1.0 + 1e-6}};
  if (f.theta) rep["theta"] = operator_to_json(r.retriever.theta);
  if (f.lambda_star) {
    SeesawOptions so;
    so.seed = g.seed;
    so.sdp = sdp;
    const double lower = classical_threshold_seesaw(r.retriever, so).value;
    const double upper = ppt_relaxation_upper(r.retriever.theta, sdp).value;
    rep["lambda_star"] = {{"lower", lower}, {"relaxation_upper", upper}};
  }
  if (f.protocol) rep["protocol"] = protocol_to_json(discrimination_protocol(r.retriever, w));
  emit_json(g, "detect.json", rep);
  std::cerr << "E(W) = " << std::fixed << std::setprecision(6) << r.value
            << (r.value > 1.0 + 1e-6 ? " (quantum memory detected)" : " (not detected)")
            << "\n";
  return kOk;
}

// ---------------------------------------------------------------- spinboson

ScanWindow window_from_config(const json& c, const ScanWindow& base, double rate) {
  ScanWindow w = base;
  w.t_max = get_or(c, "t_max", base.t_max * rate) / rate;
  w.tau_max = get_or(c, "tau_max", base.tau_max * rate) / rate;
  w.n_t = get_or(c, "n_t", base.n_t);
  w.n_tau = get_or(c, "n_tau", base.n_tau);
  w.dt = get_or(c, "dt", base.dt * rate) / rate;
  return w;
}

int cmd_scan(const GlobalFlags& g) {
  const json c = load_config(g);
  if (!c.contains("spectral_density"))
    throw ParseError("scan config needs a 'spectral_density' object");
  const SpectralDensity sd = SpectralDensity::from_json(c.at("spectral_density"));
  const double rate = unit_rate(g.units.empty() ? "omega0" : g.units, sd);
  ScanWindow base;
  base.dt = 0.01 / sd.characteristic_rate();
  const ScanWindow w = window_from_config(c, base, rate);
  ScanResult r = scan_detection(sd, w, get_or(c, "check_step", true));
  print_warnings(r.warnings, "scan");
  scale_times(r, rate);
  std::ofstream csv = open_csv(g, "scan.csv");
  write_scan_csv_rows(csv, get_or(c, "param", 0.0), r, get_or(c, "full_grid", true));
  json rep = scan_summary_json(r);
  rep["spectral_density"] = sd.to_json();
  rep["units"] = g.units.empty() ? "omega0" : g.units;
  emit_json(g, "scan.json", rep);
  return kOk;
}

int cmd_family(const GlobalFlags& g, FamilyKind kind, const std::string& name) {
  const json c = load_config(g);
  ScanFamily fam;
  fam.kind = kind;
  fam.lambda = get_or(c, "lambda", 1.0);
  fam.eta = get_or(c, "eta", 0.1);
  fam.omega0 = get_or(c, "omega0", 1.0);
  fam.points = get_or(c, "points", 0);
  const std::string units =
      !g.units.empty() ? g.units : (kind == FamilyKind::kLorentzian ? "lambda" : "omega0");
  std::vector<double> grid;
  if (kind == FamilyKind::kLorentzian)
    grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  else
    grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};
  grid = get_or(c, "grid", grid);
  const double rate0 = unit_rate(units, fam.at(grid.front()));
  if (c.contains("t_max")) fam.t_max = c.at("t_max").get<double>() / rate0;
  const ThresholdResult res =
      threshold_scan(fam, grid, get_or(c, "tol", 1e-2), get_or(c, "max_bisections", 20));
  std::ofstream csv = open_csv(g, name + ".csv");
  ThresholdResult scaled = res;
  for (ThresholdRow& row : scaled.rows) {
    print_warnings(row.scan.warnings, name + " param " + std::to_string(row.param));
    scale_times(row.scan, unit_rate(units, fam.at(row.param)));
    write_scan_csv_rows(csv, row.param, row.scan, false);
  }
  json rep = threshold_json(fam, scaled);
  rep["units"] = units;
  if (kind == FamilyKind::kOhmic) rep["eta"] = fam.eta;
  emit_json(g, name + ".json", rep);
  return kOk;
}

// m(t, tau) for Fock and thermal fields versus tau at fixed t (times in 1/g).
int cmd_figure_a1(const GlobalFlags& g) {
  const json c = load_config(g);
  if (!g.units.empty() && g.units != "g")
    throw ParseError("figureA1 uses the single-mode time unit 1/g");
  const double coupling = get_or(c, "g", 1.0);
  if (!(coupling > 0.0)) throw ValidationError("figureA1: g must be positive");
  const double t = get_or(c, "t", kPi / 4.0);
  const double tau_max = get_or(c, "tau_max", 2.0 * kPi);
  const int points = get_or(c, "points", 200);
  if (points < 1 || !(tau_max > 0.0)) throw ValidationError("figureA1: bad tau grid");
  const std::vector<int> fock = get_or(c, "fock", std::vector<int>{0, 1, 2, 3});
  const std::vector<double> betas = get_or(c, "beta", std::vector<double>{0.5, 1.0, 2.0});

  json summary{{"t", t}, {"units", "g"}, {"fock", json::array()}, {"thermal", json::array()}};
  auto series = [&](std::ostream& os, double param, const std::function<double(double)>& m) {
    double best = -1.0, best_tau = 0.0;
    for (int k = 0; k <= points; ++k) {
      const double tau = tau_max * k / points;
      const double v = m(tau);
      write_csv_row(os, param, t, tau, v);
      if (v > best) best = v, best_tau = tau;
    }
    return json{{"param", param}, {"max_m", best}, {"tau", best_tau},
                {"detected", best > 1.0 + kDetectionMargin}};
  };
  {
    std::ofstream csv = open_csv(g, "figureA1_fock.csv");
    for (int n : fock)
      summary["fock"].push_back(series(csv, n, [&](double tau) {
        return singlemode_fock_m(coupling, t / coupling, tau / coupling, n);
      }));
  }
  for (double beta : betas) {
    std::ostringstream name;
    name << "figureA1_beta_" << std::setprecision(12) << beta << ".csv";
    std::ofstream csv = open_csv(g, name.str());
    const int cutoff = thermal_cutoff(beta);
    json s = series(csv, beta, [&](double tau) {
      return singlemode_thermal_m(coupling, t / coupling, tau / coupling, beta, cutoff);
    });
    s["file"] = name.str();
    summary["thermal"].push_back(s);
  }
  emit_json(g, "figureA1.json", summary);
  return kOk;
}

// ----------------------------------------------------------------- witness

struct WitnessFlags {
  std::string z_path;
  bool theta_star = false;
  std::string frame = "sic";
  std::string process;
};

// "sic" requires qubits; "standard" is the qubit SIC for d = 2 and a generic
// rank-one informationally complete frame otherwise.
OperatorFrame single_frame(const std::string& kind, const Subsystem& s) {
  if (kind == "sic") {
    if (s.dim != 2) throw ValidationError("the SIC frame is only available for qubits");
    return sic_frame(s);
  }
  if (kind == "standard") return standard_frame(s);
  throw ValidationError("unknown frame '" + kind + "' (sic or standard)");
}

int cmd_witness(const WitnessFlags& f, const GlobalFlags& g) {
  Operator z;
  if (f.theta_star) {
    if (!f.z_path.empty()) throw ValidationError("give either a Z file or --theta-star");
    z = theta_star().theta;
  } else {
    if (f.z_path.empty()) throw ValidationError("witness needs a Z file or --theta-star");
    z = operator_from_json(read_json_file(f.z_path));
  }
  if (z.space().size() != 3) throw LabelError("witness Z must live on three factors");
  if (z.hermiticity_residual() > 1e-9) throw NotHermitianError("witness Z is not Hermitian");
  const Subsystem a = z.space()[0], b = z.space()[1], c = z.space()[2];
  const OperatorFrame fab = product_frame(single_frame(f.frame, a), single_frame(f.frame, b));
  const OperatorFrame fc = single_frame(f.frame, c);
  const CorrelationDecomposition dec = witness_to_correlations(z, fab, fc);

  std::optional<TpmProcess> w;
  if (!f.process.empty()) {
    w.emplace(process_operator_from_json(read_json_file(f.process)));
  } else {
    Rng rng(g.seed);
    w.emplace(random_tpm(2, rng, z.space()));
  }
  const double direct = trace_product(z, w->w()).real();
  const double recon = dec.evaluate(*w);

  json terms = json::array();
  for (const CorrelationTerm& t : dec.terms) {
    json e = json::array();
    for (const MeasurementOp& k : t.e) e.push_back(matrix_to_json(k.matrix()));
    terms.push_back({{"i", t.i}, {"j", t.j}, {"coefficient", t.coefficient},
                     {"e_kraus", e}, {"f", matrix_to_json(t.f.matrix())}});
  }
  json rep{{"frame", f.frame},
           {"terms", terms},
           {"self_check",
            {{"trace_zw", direct}, {"reconstruction", recon},
             {"residual", std::abs(direct - recon)},
             {"process", f.process.empty() ? "random" : f.process}}}};
  emit_json(g, "witness.json", rep);
  return std::abs(direct - recon) <= 1e-9 * (1.0 + std::abs(direct)) ? kOk : kNumeric;
}

// ------------------------------------------------------------------ export

struct ExportFlags {
  std::string kind = "jc";
  double t = kPi / 4.0;
  double tau = kPi / 2.0;
  int fock = 0;
  std::string path;
};

// Writes example process matrices (single-mode JC or a random Markov process).
int cmd_export(const ExportFlags& f, const GlobalFlags& g) {
  json j;
  if (f.kind == "jc") {
    j = process_to_json(jc_process_matrix(JcModel{1.0, 0, Fock{f.fock}}, f.t, f.tau));
  } else if (f.kind == "markov") {
    Rng rng(g.seed);
    j = process_to_json(random_tpm(1, rng, Space({{"A", 2}, {"B", 2}, {"C", 2}})));
  } else {
    throw ValidationError("export kind must be jc or markov");
  }
  if (f.path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(f.path, j);
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Two-point-measurement memory detection toolkit"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "JSON configuration file");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--jobs", g.jobs, "Maximum number of worker threads")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "SDP tolerance")->check(CLI::PositiveNumber);
  app.add_option("--units", g.units, "Time unit: omega0, g or lambda")
      ->check(CLI::IsMember({"omega0", "g", "lambda"}));

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a process-matrix file");
  validate->add_option("file", validate_path, "Process JSON file")->required();

  DetectFlags df;
  CLI::App* detect = app.add_subcommand("detect", "Compute the entanglement-retriever value");
  detect->add_option("file", df.path, "Process JSON file")->required();
  detect->add_flag("--protocol", df.protocol, "Append the discrimination protocol");
  detect->add_flag("--theta", df.theta, "Include the optimal retriever");
  detect->add_flag("--lambda-star", df.lambda_star, "Bracket the classical threshold");

  CLI::App* sb = app.add_subcommand("spinboson", "Spin-boson memory functional scans");
  sb->require_subcommand(1);
  CLI::App* sb_scan = sb->add_subcommand("scan", "Scan one spectral density (config)");
  CLI::App* sb_f3 = sb->add_subcommand("figure3", "Lorentzian family versus Omega/lambda");
  CLI::App* sb_a1 = sb->add_subcommand("figureA1", "Fock and thermal single-mode fields");
  CLI::App* sb_a2 = sb->add_subcommand("figureA2", "Ohmic family versus omega_c/omega0");

  WitnessFlags wf;
  CLI::App* witness = app.add_subcommand("witness", "Decompose a witness into correlations");
  witness->add_option("file", wf.z_path, "Witness JSON file");
  witness->add_flag("--theta-star", wf.theta_star, "Use the built-in Theta*");
  witness->add_option("--frame", wf.frame, "Frame: sic or standard")
      ->check(CLI::IsMember({"sic", "standard"}));
  witness->add_option("--process", wf.process, "Process file for the self-check");

  ExportFlags ef;
  CLI::App* exp = app.add_subcommand("export", "Write an example process matrix");
  exp->add_option("kind", ef.kind, "jc or markov")->check(CLI::IsMember({"jc", "markov"}));
  exp->add_option("--t", ef.t, "First time (1/g)");
  exp->add_option("--tau", ef.tau, "Delay (1/g)");
  exp->add_option("--fock", ef.fock, "Initial photon number");
  exp->add_option("-o,--output", ef.path, "Output file");

  for (CLI::App* sub : {validate, detect, sb, sb_scan, sb_f3, sb_a1, sb_a2, witness, exp})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  if (g.jobs > 0) omp_set_num_threads(g.jobs);

  if (*validate) return cmd_validate(validate_path);
  if (*detect) return cmd_detect(df, g);
  if (*sb_scan) return cmd_scan(g);
  if (*sb_f3) return cmd_family(g, FamilyKind::kLorentzian, "figure3");
  if (*sb_a2) return cmd_family(g, FamilyKind::kOhmic, "figureA2");
  if (*sb_a1) return cmd_figure_a1(g);
  if (*witness) return cmd_witness(wf, g);
  if (*exp) return cmd_export(ef, g);
  return kInput;
}

}  // namespace
}  // namespace tpm

int main(int argc, char** argv) {
  try {
    return tpm::run(argc, argv);
  } catch (const tpm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tpm::kSemantic;
  } catch (const tpm::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return tpm::kNumeric;
  } catch (const tpm::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return tpm::kInput;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return tpm::kInput;
  }
}
