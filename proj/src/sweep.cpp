#include "qdot/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "qdot/entanglement.hpp"
#include "qdot/errors.hpp"
#include "qdot/lindblad.hpp"
#include "qdot/spectral.hpp"

namespace qdot {

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::DeltaRatio: return "delta_ratio";
    case SweepParam::EtaRatio: return "eta_ratio";
    case SweepParam::GammaRatio: return "gamma_ratio";
    case SweepParam::Phi: return "phi";
  }
  return "?";
}

const char* to_string(SweepMethod m) {
  return m == SweepMethod::ClosedForm ? "closed-form" : "lindblad";
}

const char* to_string(Observable o) {
  switch (o) {
    case Observable::P0: return "p0";
    case Observable::P1: return "p1";
    case Observable::P2: return "p2";
    case Observable::Negativity: return "negativity";
    case Observable::Concurrence: return "concurrence";
  }
  return "?";
}

const char* to_string(FigurePreset id) {
  switch (id) {
    case FigurePreset::Fig1: return "1";
    case FigurePreset::Fig2: return "2";
    case FigurePreset::Fig3a: return "3a";
    case FigurePreset::Fig3b: return "3b";
    case FigurePreset::Fig4a: return "4a";
    case FigurePreset::Fig4b: return "4b";
  }
  return "?";
}

namespace {

bool sweeps_positive_gamma(const SweepConfig& c) {
  if (c.param_axis.name == SweepParam::GammaRatio)
    return c.param_axis.min > 0.0 || c.param_axis.max > 0.0;
  return c.base.gamma > 0.0;
}

double axis_value(double min, double max, int n, int i) {
  if (n <= 1) return min;
  return min + (max - min) * static_cast<double>(i) /
                   static_cast<double>(n - 1);
}

void append_from_state(const StateVector3& b,
                       const std::vector<Observable>& observables,
                       std::vector<double>& out) {
  DensityMatrix4 rho4;
  bool embedded = false;
  for (Observable o : observables) {
    switch (o) {
      case Observable::P0: out.push_back(std::norm(b(0))); break;
      case Observable::P1: out.push_back(std::norm(b(1))); break;
      case Observable::P2: out.push_back(std::norm(b(2))); break;
      case Observable::Negativity:
      case Observable::Concurrence: {
        if (!embedded) {
          rho4 = embed_two_qubit(b * b.adjoint());
          embedded = true;
        }
        out.push_back(o == Observable::Negativity ? negativity(rho4)
                                                  : concurrence(rho4));
        break;
      }
    }
  }
}

void append_from_density(const DensityMatrix3& rho,
                         const std::vector<Observable>& observables,
                         std::vector<double>& out) {
  DensityMatrix4 rho4;
  bool embedded = false;
  for (Observable o : observables) {
    switch (o) {
      case Observable::P0: out.push_back(rho(0, 0).real()); break;
      case Observable::P1: out.push_back(rho(1, 1).real()); break;
      case Observable::P2: out.push_back(rho(2, 2).real()); break;
      case Observable::Negativity:
      case Observable::Concurrence: {
        if (!embedded) {
          rho4 = embed_two_qubit(rho);
          embedded = true;
        }
        out.push_back(o == Observable::Negativity ? negativity(rho4)
                                                  : concurrence(rho4));
        break;
      }
    }
  }
}

void check_initial(const InitialState& initial) {
  if (const auto* b = std::get_if<StateVector3>(&initial)) {
    if (std::abs(b->norm() - 1.0) > 1e-6)
      throw std::invalid_argument("initial state vector is not normalized");
  } else {
    const auto& rho = std::get<DensityMatrix3>(initial);
    if (!validate_density(rho).within(1e-6))
      throw std::invalid_argument(
          "initial density matrix fails validation beyond 1e-6");
  }
}

}  // namespace

void SweepConfig::validate() const {
  base.validate();
  if (!std::isfinite(time_axis.t_max) || time_axis.t_max <= 0.0)
    throw std::invalid_argument("t_max must be > 0");
  if (time_axis.n_steps < 2)
    throw std::invalid_argument("n_steps must be >= 2");
  if (param_axis.n_points < 1)
    throw std::invalid_argument("n_points must be >= 1");
  if (!std::isfinite(param_axis.min) || !std::isfinite(param_axis.max) ||
      param_axis.min > param_axis.max)
    throw std::invalid_argument("param axis must satisfy min <= max");
  if (param_axis.name == SweepParam::GammaRatio && param_axis.min < 0.0)
    throw std::invalid_argument("gamma_ratio axis must be >= 0");
  if (observables.empty())
    throw std::invalid_argument("at least one observable required");
  if (method == SweepMethod::ClosedForm && sweeps_positive_gamma(*this))
    throw std::invalid_argument(
        "closed-form method requires gamma = 0; use the lindblad method");
  check_initial(initial_state);
}

ModelParams SweepConfig::params_at(double value) const {
  ModelParams p = base;
  switch (param_axis.name) {
    case SweepParam::DeltaRatio: p.delta = value * p.omega; break;
    case SweepParam::EtaRatio: p.eta = value * p.omega; break;
    case SweepParam::GammaRatio: p.gamma = value * p.omega; break;
    case SweepParam::Phi: p.phi = value; break;
  }
  return p;
}

FigurePreset parse_figure_id(const std::string& id) {
  std::string key;
  for (char c : id) key.push_back(static_cast<char>(std::tolower(c)));
  if (key.rfind("fig", 0) == 0) key = key.substr(3);
  if (key == "1") return FigurePreset::Fig1;
  if (key == "2") return FigurePreset::Fig2;
  if (key == "3a") return FigurePreset::Fig3a;
  if (key == "3b") return FigurePreset::Fig3b;
  if (key == "4a") return FigurePreset::Fig4a;
  if (key == "4b") return FigurePreset::Fig4b;
  throw std::invalid_argument("unknown figure preset: " + id);
}

SweepConfig figure_preset(FigurePreset id) {
  SweepConfig config;
  config.base = ModelParams{};  // omega = 1, everything else 0
  config.time_axis = {25.0, 501};
  config.param_axis = {SweepParam::EtaRatio, 0.0, 10.0, 101};
  config.initial_state = StateVector3(1, 0, 0);
  config.observables = {Observable::Negativity};
  config.method = SweepMethod::ClosedForm;

  switch (id) {
    case FigurePreset::Fig1:
      config.base.eta = 0.1;
      config.param_axis.name = SweepParam::DeltaRatio;
      config.observables = {Observable::P0, Observable::P1, Observable::P2};
      break;
    case FigurePreset::Fig2:
      config.observables = {Observable::P0, Observable::P1, Observable::P2};
      break;
    case FigurePreset::Fig3a:
      config.base.eta = 0.1;
      config.param_axis.name = SweepParam::DeltaRatio;
      break;
    case FigurePreset::Fig3b:
      break;
    case FigurePreset::Fig4a:
      config.base.gamma = 0.01;
      config.method = SweepMethod::Lindblad;
      break;
    case FigurePreset::Fig4b:
      config.base.gamma = 0.05;
      config.method = SweepMethod::Lindblad;
      break;
  }
  return config;
}

TimeSeries evaluate_time_series(const ModelParams& params,
                                const TimeAxis& time_axis,
                                const InitialState& initial,
                                SweepMethod method,
                                const std::vector<Observable>& observables) {
  params.validate();
  if (!std::isfinite(time_axis.t_max) || time_axis.t_max <= 0.0)
    throw std::invalid_argument("t_max must be > 0");
  if (time_axis.n_steps < 2)
    throw std::invalid_argument("n_steps must be >= 2");
  check_initial(initial);

  TimeSeries series;
  series.times.reserve(time_axis.n_steps);
  for (int k = 0; k < time_axis.n_steps; ++k)
    series.times.push_back(
        axis_value(0.0, time_axis.t_max, time_axis.n_steps, k));
  series.values.reserve(series.times.size() * observables.size());

  if (method == SweepMethod::ClosedForm) {
    if (params.gamma > 0.0)
      throw std::invalid_argument(
          "closed-form method requires gamma = 0; use the lindblad method");
    const SpectralDecomposition decomp = spectral_decompose(build_xi(params));
    if (const auto* b0 = std::get_if<StateVector3>(&initial)) {
      for (double omega_t : series.times) {
        const StateVector3 b =
            evolve_pure(decomp, *b0, omega_t / params.omega);
        append_from_state(b, observables, series.values);
      }
    } else {
      const auto& rho0 = std::get<DensityMatrix3>(initial);
      for (double omega_t : series.times) {
        const DensityMatrix3 rho =
            evolve_density(decomp, rho0, omega_t / params.omega);
        append_from_density(rho, observables, series.values);
      }
    }
    return series;
  }

  // Lindblad route: one propagator for the uniform grid spacing, then
  // repeated application (semigroup property).
  const Superoperator9 liouvillian = build_liouvillian(params);
  const double dt =
      time_axis.t_max / (time_axis.n_steps - 1) / params.omega;
  const Superoperator9 step = superop_exp(liouvillian, dt);

  DensityMatrix3 rho0;
  if (const auto* b0 = std::get_if<StateVector3>(&initial))
    rho0 = (*b0) * b0->adjoint();
  else
    rho0 = std::get<DensityMatrix3>(initial);

  Vector9c v = vectorize(rho0);
  for (int k = 0; k < time_axis.n_steps; ++k) {
    const DensityMatrix3 raw = unvectorize(v);
    const DensityMatrix3 rho = 0.5 * (raw + raw.adjoint());
    append_from_density(rho, observables, series.values);
    v = step * v;
  }
  return series;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();

  SweepResult result;
  result.observables = config.observables;
  result.param_values.reserve(config.param_axis.n_points);
  for (int i = 0; i < config.param_axis.n_points; ++i)
    result.param_values.push_back(axis_value(
        config.param_axis.min, config.param_axis.max,
        config.param_axis.n_points, i));

  const std::size_t n_obs = config.observables.size();
  result.values.reserve(static_cast<std::size_t>(config.param_axis.n_points) *
                        config.time_axis.n_steps * n_obs);

  for (int ip = 0; ip < config.param_axis.n_points; ++ip) {
    const double value = result.param_values[ip];
    TimeSeries series;
    try {
      series = evaluate_time_series(config.params_at(value),
                                    config.time_axis, config.initial_state,
                                    config.method, config.observables);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " [param " +
                           std::string(to_string(config.param_axis.name)) +
                           " = " + std::to_string(value) + "]");
    }
    if (result.times.empty()) result.times = series.times;

    for (std::size_t k = 0; k < series.values.size(); ++k) {
      const double x = series.values[k];
      if (!std::isfinite(x) || x < -1e-9 || x > 1.0 + 1e-9) {
        const std::size_t it = k / n_obs;
        throw NumericalError(
            "observable out of range at param " +
            std::to_string(value) + ", omega_t " +
            std::to_string(series.times[it]));
      }
    }
    result.values.insert(result.values.end(), series.values.begin(),
                         series.values.end());
  }
  return result;
}

}  // namespace qdot
