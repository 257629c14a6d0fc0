#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdot {

using Complex = std::complex<double>;

// 3x3 complex matrices on the {vacuum, symmetric single-exciton, biexciton}
// basis. HermitianMatrix3 is Hermitian by construction where produced here;
// DensityMatrix3 additionally has unit trace and non-negative spectrum.
using HermitianMatrix3 = Eigen::Matrix3cd;
using DensityMatrix3 = Eigen::Matrix3cd;
using StateVector3 = Eigen::Vector3cd;

// Physical inputs. omega is the laser-dot coupling and the global frequency
// scale; delta the detuning, eta the interdot hopping rate, phi the laser
// phase (radians), gamma the pure-dephasing rate. All rates share the same
// angular-frequency units; the CLI normalizes omega to 1 and takes ratios.
struct ModelParams {
  double omega = 1.0;
  double delta = 0.0;
  double eta = 0.0;
  double phi = 0.0;
  double gamma = 0.0;

  // Throws std::invalid_argument unless omega > 0, gamma >= 0 and all
  // fields are finite.
  void validate() const;
};

// Coefficient matrix of the amplitude equations i dB/dt = xi B:
// couplings omega/sqrt(2) * exp(-i phi) on the (0,1) and (1,2) bonds,
// diagonal (0, delta - eta, 2 delta).
HermitianMatrix3 build_xi(const ModelParams& params);

// Diagnostic report for density-matrix inputs. Pure report, never throws.
struct DensityDiagnostics {
  double hermiticity_defect = 0.0;  // max-abs entry of rho - rho^dagger
  double trace_defect = 0.0;        // |tr(rho) - 1|
  double min_eigenvalue = 0.0;      // of the hermitized part

  bool within(double tol) const {
    return hermiticity_defect <= tol && trace_defect <= tol &&
           min_eigenvalue >= -tol;
  }
};

// Works for any square complex matrix (3x3 states and their 4x4 embeddings).
DensityDiagnostics validate_density(const Eigen::MatrixXcd& rho);

}  // namespace qdot
