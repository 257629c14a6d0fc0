// Test-side reference integrator for the amplitude equations
// i dB/dt = xi B. Deliberately independent of the closed-form solver it
// cross-checks: plain adaptive step-doubling on the 3-component ODE.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdot_test {

inline Eigen::Vector3cd amplitude_rhs(const Eigen::Matrix3cd& xi,
                                      const Eigen::Vector3cd& b) {
  return std::complex<double>(0.0, -1.0) * (xi * b);
}

inline Eigen::Vector3cd rk4_amplitude_step(const Eigen::Matrix3cd& xi,
                                           const Eigen::Vector3cd& b,
                                           double h) {
  const Eigen::Vector3cd k1 = amplitude_rhs(xi, b);
  const Eigen::Vector3cd k2 = amplitude_rhs(xi, b + 0.5 * h * k1);
  const Eigen::Vector3cd k3 = amplitude_rhs(xi, b + 0.5 * h * k2);
  const Eigen::Vector3cd k4 = amplitude_rhs(xi, b + h * k3);
  return b + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Integrates from t = 0 to t_end with local tolerance `tol` and Richardson
// extrapolation of the doubled step.
inline Eigen::Vector3cd integrate_amplitudes(const Eigen::Matrix3cd& xi,
                                             Eigen::Vector3cd b, double t_end,
                                             double tol = 1e-12) {
  double t = 0.0;
  double h = 0.05 / (1.0 + xi.cwiseAbs().maxCoeff());
  while (t < t_end) {
    const double remaining = t_end - t;
    if (remaining <= 1e-14 * std::max(1.0, t_end)) break;
    const bool clamped = remaining < h;
    const double step = clamped ? remaining : h;

    const Eigen::Vector3cd full = rk4_amplitude_step(xi, b, step);
    const Eigen::Vector3cd half = rk4_amplitude_step(
        xi, rk4_amplitude_step(xi, b, 0.5 * step), 0.5 * step);
    const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;

    if (err <= tol) {
      b = half + (half - full) / 15.0;
      t += step;
      if (!clamped)
        h = step *
            std::min(5.0, std::max(0.2, 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2)));
    } else {
      h = step * std::min(0.9, std::max(0.2, 0.9 * std::pow(tol / err, 0.2)));
      if (h < 1e-13) throw std::runtime_error("oracle step underflow");
    }
  }
  return b;
}

}  // namespace qdot_test
