#include "qdot/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qdot {

void ModelParams::validate() const {
  if (!std::isfinite(omega) || omega <= 0.0)
    throw std::invalid_argument("omega must be finite and > 0");
  if (!std::isfinite(delta) || !std::isfinite(eta) || !std::isfinite(phi))
    throw std::invalid_argument("delta, eta, phi must be finite");
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("gamma must be finite and >= 0");
}

HermitianMatrix3 build_xi(const ModelParams& params) {
  params.validate();
  const Complex coupling =
      params.omega / std::sqrt(2.0) * std::exp(Complex(0.0, -params.phi));

  HermitianMatrix3 xi = HermitianMatrix3::Zero();
  xi(0, 1) = coupling;
  xi(1, 2) = coupling;
  xi(1, 0) = std::conj(coupling);
  xi(2, 1) = std::conj(coupling);
  xi(1, 1) = params.delta - params.eta;
  xi(2, 2) = 2.0 * params.delta;
  return xi;
}

DensityDiagnostics validate_density(const Eigen::MatrixXcd& rho) {
  DensityDiagnostics diag;
  diag.hermiticity_defect =
      (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  diag.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));

  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm,
                                                         Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = solver.eigenvalues().minCoeff();
  return diag;
}

}  // namespace qdot
