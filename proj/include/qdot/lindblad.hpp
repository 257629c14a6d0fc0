#pragma once

#include <vector>

#include "qdot/model.hpp"

namespace qdot {

// Generator acting on column-stacked 3x3 density matrices.
using Superoperator9 = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

// Column-stacking: vec(rho)(i + 3j) = rho(i, j).
Vector9c vectorize(const DensityMatrix3& rho);
DensityMatrix3 unvectorize(const Vector9c& v);

// Collective pseudo-spin z-component restricted to the symmetric subspace:
// diag(-1, 0, +1), each dot contributing +-1/2.
HermitianMatrix3 jz_matrix();

// L rho = -i[H, rho] - gamma [Jz, [Jz, rho]] with H = build_xi(params).
// Trace-preserving; generates a CPTP semigroup for gamma >= 0.
Superoperator9 build_liouvillian(const ModelParams& params);

// exp(t L) by scaling-and-squaring with a machine-precision truncated
// series core. Throws NumericalError when t * ||L|| > 1e6 (caller should
// subdivide the interval).
Superoperator9 superop_exp(const Superoperator9& liouvillian, double t);

// Applies exp(t L) to rho0 and re-Hermitizes the result.
DensityMatrix3 propagate_expm(const Superoperator9& liouvillian,
                              const DensityMatrix3& rho0, double t);

// Independent propagation route: classic 4th-order steps with adaptive
// step-doubling at local tolerance 1e-12, sampled at the (ascending)
// grid times. Throws NumericalError if the required step falls below 1e-12.
std::vector<DensityMatrix3> integrate_rk(const Superoperator9& liouvillian,
                                         const DensityMatrix3& rho0,
                                         const std::vector<double>& t_grid);

// Phonon-bath spectral inputs for the dephasing-rate quadrature.
struct PhononSpec {
  int n = 1;                 // spectral-dimensionality exponent
  double omega_c = 1.0;      // cutoff frequency
  double temperature = 0.0;  // k_B T in the same frequency units
  double prefactor = 1.0;    // overall coupling constant

  // Throws std::domain_error for negative inputs or the non-integrable
  // n = 0 with temperature > 0 combination.
  void validate() const;
};

// prefactor * integral_0^inf  w^n exp(-w/omega_c) (1 + 2 N(w, T)) dw with
// N the Bose-Einstein occupation, adaptive quadrature split at w = T and
// w = omega_c, relative accuracy 1e-8. Absolute calibration requires a
// material prefactor; none is built in.
double phonon_rate(const PhononSpec& spec);

}  // namespace qdot
