#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qdot/model.hpp"
#include "qdot/sweep.hpp"

namespace qdot {

// "%.<digits>g" with the platform's correctly-rounded decimal conversion.
std::string format_sig(double x, int digits);

// Shortest decimal string that parses back to exactly x.
std::string format_roundtrip(double x);

// Density-matrix JSON: {"dim": n, "rho": [[re, im], ...]} row-major.
// Accepts dim 3 or 4; throws std::invalid_argument on malformed input.
Eigen::MatrixXcd read_density_json(std::istream& in);
void write_density_json(std::ostream& out, const Eigen::MatrixXcd& rho);

// State-vector JSON: {"dim": 3, "state": [[re, im], ...]}. A file holding
// either a state vector or a density matrix; used for --initial.
InitialState read_initial_state_json(std::istream& in);

// Reproduction header embedded as '#' comment lines in every data file:
// artifact version, the canonical command, and all resolved parameters.
// The output path is deliberately not part of the header so identical runs
// produce identical bytes regardless of destination.
struct RunManifest {
  std::string command;  // e.g. "sweep --figure 1"
  std::vector<std::pair<std::string, std::string>> resolved;

  void write_header(std::ostream& out) const;
};

// Time-series CSV: omega_t, p0, p1, p2, negativity, concurrence at
// 9 significant digits, LF line endings. Throws NumericalError on any
// non-finite value.
void write_evolve_csv(std::ostream& out, const RunManifest& manifest,
                      const TimeSeries& series,
                      const std::vector<Observable>& observables);

// Long-format grid CSV: param_value, omega_t, then one column per
// observable; rows param-major then time.
void write_sweep_csv(std::ostream& out, const RunManifest& manifest,
                     const SweepResult& result);

}  // namespace qdot
