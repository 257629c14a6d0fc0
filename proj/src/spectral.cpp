#include "qdot/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdot/errors.hpp"

namespace qdot {

namespace {

constexpr double kResidualTol = 1e-10;    // relative to ||xi||_F
constexpr double kDegenerateGap = 1e-9;   // relative eigenvalue spacing
constexpr double kOrthoTol = 1e-12;

double off_diagonal_norm(const Eigen::Matrix3cd& a) {
  return std::sqrt(std::norm(a(0, 1)) + std::norm(a(0, 2)) +
                   std::norm(a(1, 2)));
}

// Bilinear cross product (no conjugation): orthogonal to both rows in the
// complex-bilinear sense, hence a null vector of a rank-2 matrix.
Eigen::Vector3cd bilinear_cross(const Eigen::RowVector3cd& a,
                                const Eigen::RowVector3cd& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
          a(0) * b(1) - a(1) * b(0)};
}

// Null vector of xi - z I via the best-conditioned pair of rows.
Eigen::Vector3cd null_vector(const Eigen::Matrix3cd& m) {
  Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
  double best_norm = 0.0;
  for (int skip = 0; skip < 3; ++skip) {
    const int r0 = (skip + 1) % 3;
    const int r1 = (skip + 2) % 3;
    const Eigen::Vector3cd cand = bilinear_cross(m.row(r0), m.row(r1));
    const double n = cand.norm();
    if (n > best_norm) {
      best_norm = n;
      best = cand;
    }
  }
  return best_norm > 0.0 ? Eigen::Vector3cd(best / best_norm)
                         : Eigen::Vector3cd::Zero();
}

double max_residual(const Eigen::Matrix3cd& xi, const SpectralDecomposition& d) {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j)
    worst = std::max(worst, (xi * d.v.col(j) - d.z(j) * d.v.col(j)).norm());
  return worst;
}

double max_ortho_defect(const Eigen::Matrix3cd& v) {
  const Eigen::Matrix3cd gram = v.adjoint() * v;
  return (gram - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
}

void sort_ascending(SpectralDecomposition& d) {
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d.z(a) < d.z(b); });
  const Eigen::Vector3d z = d.z;
  const Eigen::Matrix3cd v = d.v;
  for (int j = 0; j < 3; ++j) {
    d.z(j) = z(order[j]);
    d.v.col(j) = v.col(order[j]);
  }
}

}  // namespace

CubicCoeffs characteristic_coeffs(const HermitianMatrix3& xi) {
  const double d1 = xi(1, 1).real();
  const double d2 = xi(2, 2).real();
  const double w = std::norm(xi(0, 1));
  // det(xi - zI) = 0 expanded for the tridiagonal model matrix with
  // xi00 = 0 and equal bond strengths.
  return {-(d1 + d2), d1 * d2 - 2.0 * w, w * d2};
}

CubicRoots cubic_eigenvalues(const CubicCoeffs& coeffs) {
  CubicRoots out;
  const double a = coeffs.c2;
  const double spread = a * a - 3.0 * coeffs.c1;
  if (spread < 1e-24) {
    out.degenerate = true;
    out.z = {-a / 3.0, -a / 3.0, -a / 3.0};
    return out;
  }

  const double q = spread / 9.0;
  const double r =
      ((2.0 * a * a - 9.0 * coeffs.c1) * a + 27.0 * coeffs.c0) / 54.0;
  const double q_sqrt = std::sqrt(q);
  const double theta =
      std::acos(std::clamp(r / (q * q_sqrt), -1.0, 1.0));

  for (int j = 0; j < 3; ++j) {
    double z = -2.0 * q_sqrt *
                   std::cos((theta + 2.0 * std::numbers::pi * j) / 3.0) -
               a / 3.0;
    // One Newton step sharpens roots contaminated by cancellation between
    // the -a/3 shift and the cosine term; skipped near multiple roots.
    const double deriv = (3.0 * z + 2.0 * a) * z + coeffs.c1;
    if (std::abs(deriv) > 1e-6 * std::max(1.0, z * z))
      z -= coeffs.eval(z) / deriv;
    out.z[j] = z;
  }
  std::sort(out.z.begin(), out.z.end());
  return out;
}

SpectralDecomposition jacobi_eigensolve(const HermitianMatrix3& xi) {
  Eigen::Matrix3cd a = 0.5 * (xi + xi.adjoint());
  Eigen::Matrix3cd v = Eigen::Matrix3cd::Identity();
  const double scale = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < 50; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq <= 1e-18 * scale) continue;
        const Complex phase = a(p, q) / apq;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
        u(p, p) = c;
        u(p, q) = s;
        u(q, p) = -s * std::conj(phase);
        u(q, q) = c * std::conj(phase);
        a = u.adjoint() * a * u;
        v = v * u;
      }
    }
  }

  SpectralDecomposition out;
  out.z = a.diagonal().real();
  out.v = v;
  sort_ascending(out);
  return out;
}

SpectralDecomposition spectral_decompose(const HermitianMatrix3& xi) {
  if (!xi.array().isFinite().all())
    throw std::invalid_argument("spectral_decompose: non-finite matrix");

  const double scale = xi.norm();
  if (scale == 0.0) {
    SpectralDecomposition out;
    out.z.setZero();
    out.v = Eigen::Matrix3cd::Identity();
    return out;
  }

  const CubicRoots roots = cubic_eigenvalues(characteristic_coeffs(xi));
  bool fallback = roots.degenerate;
  if (!fallback) {
    const double gap = std::min({roots.z[1] - roots.z[0],
                                 roots.z[2] - roots.z[1]});
    fallback = gap < kDegenerateGap * scale;
  }

  if (!fallback) {
    SpectralDecomposition out;
    for (int j = 0; j < 3; ++j) {
      out.z(j) = roots.z[j];
      const Eigen::Matrix3cd shifted =
          xi - roots.z[j] * Eigen::Matrix3cd::Identity();
      out.v.col(j) = null_vector(shifted);
      if (out.v.col(j).isZero()) {
        fallback = true;
        break;
      }
    }
    if (!fallback) {
      // Modified Gram-Schmidt; well-separated eigenvectors are already
      // orthogonal to ~residual/gap, so this barely moves them.
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < j; ++k)
          out.v.col(j) -= out.v.col(k).dot(out.v.col(j)) * out.v.col(k);
        out.v.col(j).normalize();
      }
      if (max_residual(xi, out) <= kResidualTol * scale &&
          max_ortho_defect(out.v) <= kOrthoTol)
        return out;
      fallback = true;
    }
  }

  SpectralDecomposition out = jacobi_eigensolve(xi);
  if (max_residual(xi, out) > kResidualTol * scale ||
      max_ortho_defect(out.v) > kOrthoTol)
    throw NumericalError(
        "spectral_decompose: residual target not reached");
  return out;
}

Eigen::Matrix3cd SpectralDecomposition::expansion_coefficients(
    const StateVector3& b0) const {
  const Eigen::Vector3cd proj = v.adjoint() * b0;
  Eigen::Matrix3cd lambda;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) lambda(j, l) = v(j, l) * proj(l);
  return lambda;
}

StateVector3 evolve_pure(const SpectralDecomposition& decomp,
                         const StateVector3& b_init, double t) {
  const Eigen::Vector3cd proj = decomp.v.adjoint() * b_init;
  Eigen::Vector3cd rotated;
  for (int l = 0; l < 3; ++l)
    rotated(l) = std::polar(1.0, -decomp.z(l) * t) * proj(l);
  return decomp.v * rotated;
}

DensityMatrix3 evolve_density(const SpectralDecomposition& decomp,
                              const DensityMatrix3& rho0, double t) {
  Eigen::Vector3cd phases;
  for (int l = 0; l < 3; ++l) phases(l) = std::polar(1.0, -decomp.z(l) * t);
  const Eigen::Matrix3cd u =
      decomp.v * phases.asDiagonal() * decomp.v.adjoint();
  return u * rho0 * u.adjoint();
}

std::array<double, 3> occupations(const StateVector3& b) {
  return {std::norm(b(0)), std::norm(b(1)), std::norm(b(2))};
}

}  // namespace qdot
