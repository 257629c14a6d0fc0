#pragma once

#include <array>

#include "qdot/model.hpp"

namespace qdot {

// Monic characteristic polynomial z^3 + c2 z^2 + c1 z + c0 of the model's
// tridiagonal coefficient matrix. Coefficients are real (Hermitian input).
struct CubicCoeffs {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double eval(double z) const { return ((z + c2) * z + c1) * z + c0; }
};

CubicCoeffs characteristic_coeffs(const HermitianMatrix3& xi);

struct CubicRoots {
  std::array<double, 3> z{};  // ascending
  // Set when the spread term c2^2 - 3 c1 falls below 1e-24 (triple root);
  // the trigonometric formula is then unreliable and callers should fall
  // back to iterative diagonalization.
  bool degenerate = false;
};

// Trigonometric solution of the real cubic; all three roots are real for
// coefficients coming from a Hermitian matrix.
CubicRoots cubic_eigenvalues(const CubicCoeffs& coeffs);

struct SpectralDecomposition {
  Eigen::Vector3d z;       // eigenvalues, ascending
  Eigen::Matrix3cd v;      // orthonormal eigenvectors as columns

  // Expansion coefficients lambda(j,l) = v(j,l) * <v_l, b0> of the
  // closed-form solution B_j(t) = sum_l lambda(j,l) exp(-i z_l t).
  Eigen::Matrix3cd expansion_coefficients(const StateVector3& b0) const;
};

// Eigenvalues via the characteristic cubic, eigenvectors via null-space
// extraction with a Gram-Schmidt pass; falls back to jacobi_eigensolve when
// the cubic is degenerate, eigenvalues nearly collide, or residuals exceed
// 1e-10 * ||xi||_F. Throws NumericalError if no route meets the residual
// target (unreachable for finite input).
SpectralDecomposition spectral_decompose(const HermitianMatrix3& xi);

// Cyclic Jacobi diagonalization for complex Hermitian 3x3 input. Fallback
// path of spectral_decompose and the independent cross-check for the cubic
// roots; must not share machinery with the closed-form route.
SpectralDecomposition jacobi_eigensolve(const HermitianMatrix3& xi);

// B(t) = sum_l exp(-i z_l t) v_l <v_l, B(0)>. Unitary: any finite t,
// negative included; norm preserved to machine precision.
StateVector3 evolve_pure(const SpectralDecomposition& decomp,
                         const StateVector3& b_init, double t);

// rho(t) = U(t) rho0 U(t)^dagger with U(t) = sum_l exp(-i z_l t) v_l v_l^dagger.
DensityMatrix3 evolve_density(const SpectralDecomposition& decomp,
                              const DensityMatrix3& rho0, double t);

// Occupation probabilities |b_i|^2.
std::array<double, 3> occupations(const StateVector3& b);

}  // namespace qdot
