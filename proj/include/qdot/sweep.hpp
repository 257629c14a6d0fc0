#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qdot/model.hpp"

namespace qdot {

enum class SweepParam { DeltaRatio, EtaRatio, GammaRatio, Phi };
enum class SweepMethod { ClosedForm, Lindblad };
enum class Observable { P0, P1, P2, Negativity, Concurrence };

const char* to_string(SweepParam p);
const char* to_string(SweepMethod m);
const char* to_string(Observable o);

struct TimeAxis {
  double t_max = 25.0;  // in omega*t units
  int n_steps = 501;    // inclusive of both endpoints
};

struct ParamAxis {
  SweepParam name = SweepParam::DeltaRatio;
  double min = 0.0;
  double max = 10.0;
  int n_points = 101;
};

using InitialState = std::variant<StateVector3, DensityMatrix3>;

struct SweepConfig {
  ModelParams base;  // the swept parameter's base value is ignored
  TimeAxis time_axis;
  ParamAxis param_axis;
  InitialState initial_state = StateVector3(1, 0, 0);
  std::vector<Observable> observables;
  SweepMethod method = SweepMethod::ClosedForm;

  // Throws std::invalid_argument on n_steps < 2, n_points < 1,
  // t_max <= 0, or the closed-form method with gamma > 0 anywhere
  // on the grid.
  void validate() const;

  // Base params with the swept parameter set to `value` (ratios are
  // multiplied by base.omega; phi is taken as-is).
  ModelParams params_at(double value) const;
};

// Row-major grid of observable values, param-major then time.
struct SweepResult {
  std::vector<Observable> observables;
  std::vector<double> param_values;  // n_points
  std::vector<double> times;         // n_steps, omega*t units
  std::vector<double> values;        // size n_points * n_steps * n_obs

  double at(int ip, int it, int io) const {
    return values[(static_cast<std::size_t>(ip) * times.size() + it) *
                      observables.size() +
                  io];
  }
};

enum class FigurePreset { Fig1, Fig2, Fig3a, Fig3b, Fig4a, Fig4b };

// Accepts "1", "2", "3a", "3b", "4a", "4b" (optionally prefixed "fig").
// Throws std::invalid_argument for unknown ids.
FigurePreset parse_figure_id(const std::string& id);
const char* to_string(FigurePreset id);

// The published parameter sets with default axes: omega*t in [0, 25]
// (501 steps), swept ratio in [0, 10] (101 points), vacuum initial state.
SweepConfig figure_preset(FigurePreset id);

// One time series at fixed params; used per sweep point and by the CLI
// evolve command. Values row-major [time][observable].
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

TimeSeries evaluate_time_series(const ModelParams& params,
                                const TimeAxis& time_axis,
                                const InitialState& initial,
                                SweepMethod method,
                                const std::vector<Observable>& observables);

// Evaluates the full grid. Deterministic; any solver failure is rethrown
// annotated with the offending grid coordinates.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace qdot
