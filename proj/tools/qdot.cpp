// Command-line front end: evolve / sweep / entangle / phonon-rate / presets.
//
// Exit codes: 0 success, 2 usage or flag validation, 3 numerical failure,
// 4 input data failing density-matrix validation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdot/entanglement.hpp"
#include "qdot/errors.hpp"
#include "qdot/io.hpp"
#include "qdot/lindblad.hpp"
#include "qdot/model.hpp"
#include "qdot/sweep.hpp"
#include "qdot/version.hpp"

namespace {

using namespace qdot;

struct InvalidInputData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<Observable> kAllObservables = {
    Observable::P0, Observable::P1, Observable::P2, Observable::Negativity,
    Observable::Concurrence};

std::vector<Observable> parse_observables(const std::string& csv) {
  std::vector<Observable> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "p0") out.push_back(Observable::P0);
    else if (token == "p1") out.push_back(Observable::P1);
    else if (token == "p2") out.push_back(Observable::P2);
    else if (token == "negativity") out.push_back(Observable::Negativity);
    else if (token == "concurrence") out.push_back(Observable::Concurrence);
    else throw std::invalid_argument("unknown observable: " + token);
  }
  if (out.empty()) throw std::invalid_argument("empty observable list");
  return out;
}

std::string observables_csv(const std::vector<Observable>& obs) {
  std::string out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (i) out += ',';
    out += to_string(obs[i]);
  }
  return out;
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "delta-ratio" || name == "delta_ratio")
    return SweepParam::DeltaRatio;
  if (name == "eta-ratio" || name == "eta_ratio") return SweepParam::EtaRatio;
  if (name == "gamma-ratio" || name == "gamma_ratio")
    return SweepParam::GammaRatio;
  if (name == "phi") return SweepParam::Phi;
  throw std::invalid_argument("unknown sweep parameter: " + name);
}

std::string sweep_param_flag(SweepParam p) {
  switch (p) {
    case SweepParam::DeltaRatio: return "delta-ratio";
    case SweepParam::EtaRatio: return "eta-ratio";
    case SweepParam::GammaRatio: return "gamma-ratio";
    case SweepParam::Phi: return "phi";
  }
  return "?";
}

InitialState load_initial(const std::string& spec) {
  if (spec == "vacuum") return StateVector3(1, 0, 0);
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open initial state: " + spec);
  return read_initial_state_json(in);
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output: " + out_path);
  out << payload;
}

void append_config_echo(RunManifest& manifest, const SweepConfig& config) {
  manifest.resolved.emplace_back("delta_ratio",
                                 format_roundtrip(config.base.delta));
  manifest.resolved.emplace_back("eta_ratio",
                                 format_roundtrip(config.base.eta));
  manifest.resolved.emplace_back("gamma_ratio",
                                 format_roundtrip(config.base.gamma));
  manifest.resolved.emplace_back("phi", format_roundtrip(config.base.phi));
  manifest.resolved.emplace_back(
      "param_axis", std::string(to_string(config.param_axis.name)) + " [" +
                        format_roundtrip(config.param_axis.min) + ", " +
                        format_roundtrip(config.param_axis.max) +
                        "] points=" +
                        std::to_string(config.param_axis.n_points));
  manifest.resolved.emplace_back(
      "time_axis",
      "[0, " + format_roundtrip(config.time_axis.t_max) +
          "] steps=" + std::to_string(config.time_axis.n_steps));
  manifest.resolved.emplace_back(
      "initial", std::holds_alternative<StateVector3>(config.initial_state)
                     ? "state-vector"
                     : "density-matrix");
  manifest.resolved.emplace_back("method", to_string(config.method));
  manifest.resolved.emplace_back("observables",
                                 observables_csv(config.observables));
}

// ---------------------------------------------------------------- evolve

struct EvolveOptions {
  double delta_ratio = 0.0, eta_ratio = 0.0, gamma_ratio = 0.0, phi = 0.0;
  double t_max = 25.0;
  int steps = 501;
  std::string initial = "vacuum";
  std::string method = "auto";
  std::string out = "-";
};

void run_evolve(const EvolveOptions& opt) {
  if (!(opt.t_max > 0.0))
    throw std::invalid_argument("t_max must be > 0");
  if (opt.steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (opt.gamma_ratio < 0.0)
    throw std::invalid_argument("gamma-ratio must be >= 0");

  SweepMethod method;
  if (opt.method == "auto")
    method = opt.gamma_ratio > 0.0 ? SweepMethod::Lindblad
                                   : SweepMethod::ClosedForm;
  else if (opt.method == "closed-form")
    method = SweepMethod::ClosedForm;
  else if (opt.method == "lindblad")
    method = SweepMethod::Lindblad;
  else
    throw std::invalid_argument("method must be auto, closed-form or lindblad");

  const ModelParams params{1.0, opt.delta_ratio, opt.eta_ratio, opt.phi,
                           opt.gamma_ratio};
  const InitialState initial = load_initial(opt.initial);
  const TimeSeries series = evaluate_time_series(
      params, {opt.t_max, opt.steps}, initial, method, kAllObservables);

  RunManifest manifest;
  manifest.command =
      "evolve --delta-ratio " + format_roundtrip(opt.delta_ratio) +
      " --eta-ratio " + format_roundtrip(opt.eta_ratio) +
      " --gamma-ratio " + format_roundtrip(opt.gamma_ratio) + " --phi " +
      format_roundtrip(opt.phi) + " --t-max " + format_roundtrip(opt.t_max) +
      " --steps " + std::to_string(opt.steps) + " --initial " + opt.initial +
      " --method " + to_string(method);

  std::ostringstream payload;
  write_evolve_csv(payload, manifest, series, kAllObservables);
  emit(opt.out, payload.str());
}

// ----------------------------------------------------------------- sweep

struct SweepOptions {
  std::string figure;
  std::string param;
  double param_min = 0.0, param_max = 10.0;
  int param_points = 101;
  double delta_ratio = 0.0, eta_ratio = 0.0, gamma_ratio = 0.0, phi = 0.0;
  double t_max = 25.0;
  int steps = 501;
  std::string initial = "vacuum";
  std::string method = "auto";
  std::string observables = "p0,p1,p2,negativity,concurrence";
  std::string out = "-";

  bool t_max_given = false;
  bool steps_given = false;
  bool initial_given = false;
};

void run_sweep_cmd(const SweepOptions& opt) {
  SweepConfig config;
  RunManifest manifest;

  if (!opt.figure.empty()) {
    config = figure_preset(parse_figure_id(opt.figure));
    manifest.command = "sweep --figure " +
                       std::string(to_string(parse_figure_id(opt.figure)));
    if (opt.t_max_given) {
      config.time_axis.t_max = opt.t_max;
      manifest.command += " --t-max " + format_roundtrip(opt.t_max);
    }
    if (opt.steps_given) {
      config.time_axis.n_steps = opt.steps;
      manifest.command += " --steps " + std::to_string(opt.steps);
    }
    if (opt.initial_given) {
      config.initial_state = load_initial(opt.initial);
      manifest.command += " --initial " + opt.initial;
    }
  } else {
    if (opt.param.empty())
      throw std::invalid_argument("either --figure or --param is required");
    config.base =
        ModelParams{1.0, opt.delta_ratio, opt.eta_ratio, opt.phi,
                    opt.gamma_ratio};
    config.param_axis = {parse_sweep_param(opt.param), opt.param_min,
                         opt.param_max, opt.param_points};
    config.time_axis = {opt.t_max, opt.steps};
    config.initial_state = load_initial(opt.initial);
    config.observables = parse_observables(opt.observables);

    bool gamma_swept = config.param_axis.name == SweepParam::GammaRatio &&
                       (opt.param_min > 0.0 || opt.param_max > 0.0);
    if (opt.method == "auto")
      config.method = (opt.gamma_ratio > 0.0 || gamma_swept)
                          ? SweepMethod::Lindblad
                          : SweepMethod::ClosedForm;
    else if (opt.method == "closed-form")
      config.method = SweepMethod::ClosedForm;
    else if (opt.method == "lindblad")
      config.method = SweepMethod::Lindblad;
    else
      throw std::invalid_argument(
          "method must be auto, closed-form or lindblad");

    manifest.command =
        "sweep --param " + sweep_param_flag(config.param_axis.name) +
        " --param-min " + format_roundtrip(opt.param_min) + " --param-max " +
        format_roundtrip(opt.param_max) + " --param-points " +
        std::to_string(opt.param_points) + " --delta-ratio " +
        format_roundtrip(opt.delta_ratio) + " --eta-ratio " +
        format_roundtrip(opt.eta_ratio) + " --gamma-ratio " +
        format_roundtrip(opt.gamma_ratio) + " --phi " +
        format_roundtrip(opt.phi) + " --t-max " + format_roundtrip(opt.t_max) +
        " --steps " + std::to_string(opt.steps) + " --initial " + opt.initial +
        " --method " + to_string(config.method) + " --observables " +
        observables_csv(config.observables);
  }

  append_config_echo(manifest, config);
  const SweepResult result = run_sweep(config);

  std::ostringstream payload;
  write_sweep_csv(payload, manifest, result);
  emit(opt.out, payload.str());
}

// -------------------------------------------------------------- entangle

void run_entangle(const std::string& rho_path) {
  std::ifstream in(rho_path);
  if (!in) throw std::invalid_argument("cannot open: " + rho_path);
  const Eigen::MatrixXcd rho = read_density_json(in);

  const DensityDiagnostics diag = validate_density(rho);
  if (!diag.within(1e-6)) {
    std::ostringstream msg;
    msg << "density-matrix validation failed: hermiticity defect "
        << format_sig(diag.hermiticity_defect, 6) << ", trace defect "
        << format_sig(diag.trace_defect, 6) << ", min eigenvalue "
        << format_sig(diag.min_eigenvalue, 6);
    throw InvalidInputData(msg.str());
  }

  DensityMatrix4 rho4;
  if (rho.rows() == 3)
    rho4 = embed_two_qubit(DensityMatrix3(rho));
  else
    rho4 = DensityMatrix4(rho);

  std::cout << "{\"negativity\": " << format_sig(negativity(rho4), 12)
            << ", \"concurrence\": " << format_sig(concurrence(rho4), 12)
            << "}\n";
}

// ----------------------------------------------------------- phonon-rate

void run_phonon_rate(int n, double cutoff, double temperature,
                     double prefactor) {
  const PhononSpec spec{n, cutoff, temperature, prefactor};
  const double rate = phonon_rate(spec);
  std::cout << format_sig(rate, 10) << "\n";
  std::cerr << "note: the rate integral carries no material constants; "
               "absolute rates (e.g. the 20-60 ueV scale reported for "
               "semiconductor dots) require a material prefactor\n";
}

// --------------------------------------------------------------- presets

void run_presets() {
  const FigurePreset all[] = {FigurePreset::Fig1,  FigurePreset::Fig2,
                              FigurePreset::Fig3a, FigurePreset::Fig3b,
                              FigurePreset::Fig4a, FigurePreset::Fig4b};
  for (FigurePreset id : all) {
    const SweepConfig c = figure_preset(id);
    std::cout << to_string(id) << ": delta_ratio=" << c.base.delta
              << " eta_ratio=" << c.base.eta
              << " gamma_ratio=" << c.base.gamma << " phi=" << c.base.phi
              << " sweep=" << to_string(c.param_axis.name) << " ["
              << c.param_axis.min << ", " << c.param_axis.max
              << "] points=" << c.param_axis.n_points << " t_max="
              << c.time_axis.t_max << " steps=" << c.time_axis.n_steps
              << " method=" << to_string(c.method) << " observables="
              << observables_csv(c.observables) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dynamics, decoherence and entanglement of two "
               "laser-driven, Forster-coupled quantum dots"};
  app.set_version_flag("--version", std::string("qdot ") + qdot::kVersion);
  app.require_subcommand(1);

  EvolveOptions evolve_opt;
  CLI::App* evolve = app.add_subcommand(
      "evolve", "Time series of populations and entanglement at fixed "
                "parameters (CSV)");
  evolve->set_config("--config");
  evolve->add_option("--delta-ratio", evolve_opt.delta_ratio,
                     "Detuning over coupling");
  evolve->add_option("--eta-ratio", evolve_opt.eta_ratio,
                     "Hopping rate over coupling");
  evolve->add_option("--gamma-ratio", evolve_opt.gamma_ratio,
                     "Dephasing rate over coupling");
  evolve->add_option("--phi", evolve_opt.phi, "Laser phase (radians)");
  evolve->add_option("--t-max", evolve_opt.t_max, "End of the omega*t grid");
  evolve->add_option("--steps", evolve_opt.steps, "Number of grid times");
  evolve->add_option("--initial", evolve_opt.initial,
                     "\"vacuum\" or path to a state JSON");
  evolve->add_option("--method", evolve_opt.method,
                     "auto | closed-form | lindblad");
  evolve->add_option("--out", evolve_opt.out, "Output path (default stdout)");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Observables over an (omega*t, parameter) grid (CSV)");
  sweep->set_config("--config");
  CLI::Option* fig_opt =
      sweep->add_option("--figure", sweep_opt.figure,
                        "Preset id: 1, 2, 3a, 3b, 4a or 4b");
  CLI::Option* param_opt =
      sweep->add_option("--param", sweep_opt.param,
                        "Swept parameter: delta-ratio | eta-ratio | "
                        "gamma-ratio | phi");
  CLI::Option* pmin = sweep->add_option("--param-min", sweep_opt.param_min,
                                        "Axis start");
  CLI::Option* pmax = sweep->add_option("--param-max", sweep_opt.param_max,
                                        "Axis end");
  CLI::Option* ppts = sweep->add_option(
      "--param-points", sweep_opt.param_points, "Axis point count");
  CLI::Option* obs_opt = sweep->add_option(
      "--observables", sweep_opt.observables,
      "Comma list from p0,p1,p2,negativity,concurrence");
  CLI::Option* dr = sweep->add_option("--delta-ratio", sweep_opt.delta_ratio,
                                      "Base detuning over coupling");
  CLI::Option* er = sweep->add_option("--eta-ratio", sweep_opt.eta_ratio,
                                      "Base hopping over coupling");
  CLI::Option* gr = sweep->add_option("--gamma-ratio", sweep_opt.gamma_ratio,
                                      "Base dephasing over coupling");
  CLI::Option* ph = sweep->add_option("--phi", sweep_opt.phi,
                                      "Base laser phase (radians)");
  CLI::Option* method_opt = sweep->add_option(
      "--method", sweep_opt.method, "auto | closed-form | lindblad");
  CLI::Option* tmax_opt =
      sweep->add_option("--t-max", sweep_opt.t_max, "End of omega*t grid");
  CLI::Option* steps_opt =
      sweep->add_option("--steps", sweep_opt.steps, "Number of grid times");
  CLI::Option* init_opt = sweep->add_option(
      "--initial", sweep_opt.initial, "\"vacuum\" or path to a state JSON");
  sweep->add_option("--out", sweep_opt.out, "Output path (default stdout)");

  // A preset pins the physics; only the grid and initial state may be
  // overridden alongside it.
  for (CLI::Option* o : {param_opt, pmin, pmax, ppts, obs_opt, dr, er, gr, ph,
                         method_opt})
    fig_opt->excludes(o);

  std::string rho_path;
  CLI::App* entangle = app.add_subcommand(
      "entangle", "Negativity and concurrence of a density-matrix JSON");
  entangle->add_option("--rho", rho_path, "Path to density-matrix JSON")
      ->required();

  int phonon_n = 0;
  double phonon_cutoff = 0.0, phonon_temp = 0.0, phonon_prefactor = 1.0;
  CLI::App* phonon = app.add_subcommand(
      "phonon-rate", "Dephasing-rate quadrature over the phonon spectrum");
  phonon->set_config("--config");
  phonon->add_option("--n", phonon_n, "Spectral-dimensionality exponent")
      ->required();
  phonon->add_option("--cutoff", phonon_cutoff, "Cutoff frequency")
      ->required();
  phonon->add_option("--temperature", phonon_temp,
                     "Bath temperature (frequency units)")
      ->required();
  phonon->add_option("--prefactor", phonon_prefactor,
                     "Overall coupling constant");

  CLI::App* presets =
      app.add_subcommand("presets", "List the figure presets");

  try {
    app.parse(argc, argv);

    if (*evolve) run_evolve(evolve_opt);
    if (*sweep) {
      sweep_opt.t_max_given = tmax_opt->count() > 0;
      sweep_opt.steps_given = steps_opt->count() > 0;
      sweep_opt.initial_given = init_opt->count() > 0;
      run_sweep_cmd(sweep_opt);
    }
    if (*entangle) run_entangle(rho_path);
    if (*phonon) run_phonon_rate(phonon_n, phonon_cutoff, phonon_temp,
                                 phonon_prefactor);
    if (*presets) run_presets();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidInputData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const qdot::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
