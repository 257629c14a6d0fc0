#include "qdot/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qdot {

namespace {

constexpr double kNegativeCut = -1e-12;  // PT eigenvalues above this are noise

// Spin-flip operator Y (x) Y in the product basis; real anti-diagonal.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

Eigen::Matrix4cd matrix_sqrt_psd(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
  Eigen::Vector4d ev = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix4 embed_two_qubit(const DensityMatrix3& rho3) {
  Eigen::Matrix<Complex, 4, 3> v = Eigen::Matrix<Complex, 4, 3>::Zero();
  v(0, 0) = 1.0;
  v(1, 1) = 1.0 / std::sqrt(2.0);
  v(2, 1) = 1.0 / std::sqrt(2.0);
  v(3, 2) = 1.0;
  return v * rho3 * v.adjoint();
}

DensityMatrix4 partial_transpose(const DensityMatrix4& rho4) {
  DensityMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 2; ++j)
        for (int b = 0; b < 2; ++b)
          out(2 * i + a, 2 * j + b) = rho4(2 * i + b, 2 * j + a);
  return out;
}

double negativity(const DensityMatrix4& rho4) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      partial_transpose(rho4), Eigen::EigenvaluesOnly);
  double negative_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev < kNegativeCut) negative_sum += ev;
  }
  return std::clamp(-2.0 * negative_sum, 0.0, 1.0);
}

double concurrence(const DensityMatrix4& rho4) {
  const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::Matrix4cd flipped = yy * rho4.conjugate() * yy;

  // Eigenvalues of rho * rho~ through the Hermitian similarity
  // sqrt(rho) rho~ sqrt(rho): same spectrum, stable eigensolve.
  const Eigen::Matrix4cd root = matrix_sqrt_psd(0.5 * (rho4 + rho4.adjoint()));
  const Eigen::Matrix4cd product = root * flipped * root;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      0.5 * (product + product.adjoint()), Eigen::EigenvaluesOnly);

  Eigen::Vector4d mu = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(mu.data(), mu.data() + 4, std::greater<double>());
  return std::clamp(mu(0) - mu(1) - mu(2) - mu(3), 0.0, 1.0);
}

}  // namespace qdot
