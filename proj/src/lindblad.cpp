#include "qdot/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdot/errors.hpp"

namespace qdot {

namespace {

Superoperator9 kron3(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  Superoperator9 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

// Classic 4th-order step for y' = L y.
Vector9c rk4_step(const Superoperator9& l, const Vector9c& y, double h) {
  const Vector9c k1 = l * y;
  const Vector9c k2 = l * (y + 0.5 * h * k1);
  const Vector9c k3 = l * (y + 0.5 * h * k2);
  const Vector9c k4 = l * (y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double inf_norm(const Vector9c& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

Vector9c vectorize(const DensityMatrix3& rho) {
  return Eigen::Map<const Vector9c>(rho.data());
}

DensityMatrix3 unvectorize(const Vector9c& v) {
  return Eigen::Map<const DensityMatrix3>(v.data());
}

HermitianMatrix3 jz_matrix() {
  HermitianMatrix3 jz = HermitianMatrix3::Zero();
  jz(0, 0) = -1.0;
  jz(2, 2) = 1.0;
  return jz;
}

Superoperator9 build_liouvillian(const ModelParams& params) {
  const HermitianMatrix3 h = build_xi(params);
  const HermitianMatrix3 jz = jz_matrix();
  const HermitianMatrix3 jz2 = jz * jz;
  const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
  const Complex minus_i(0.0, -1.0);

  // Column-stacking: vec(A rho B) = (B^T kron A) vec(rho). Jz is real
  // diagonal, so its transposes are written plainly.
  Superoperator9 l =
      minus_i * (kron3(id, h) - kron3(h.transpose(), id));
  l -= params.gamma *
       (kron3(id, jz2) + kron3(jz2, id) - 2.0 * kron3(jz, jz));
  return l;
}

Superoperator9 superop_exp(const Superoperator9& liouvillian, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("superop_exp: non-finite time");

  Superoperator9 a = t * liouvillian;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm > 1e6)
    throw NumericalError(
        "superop_exp: t * ||L|| exceeds 1e6; subdivide the interval");

  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a *= std::ldexp(1.0, -squarings);
  }

  // Truncated series at machine-precision term ratio; ||a|| <= 0.5 makes
  // this converge in a few dozen terms.
  Superoperator9 sum = Superoperator9::Identity();
  Superoperator9 term = Superoperator9::Identity();
  for (int k = 1; k <= 80; ++k) {
    term = (a * term) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= std::numeric_limits<double>::epsilon() * sum.norm())
      break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

DensityMatrix3 propagate_expm(const Superoperator9& liouvillian,
                              const DensityMatrix3& rho0, double t) {
  const DensityMatrix3 rho =
      unvectorize(superop_exp(liouvillian, t) * vectorize(rho0));
  return 0.5 * (rho + rho.adjoint());
}

std::vector<DensityMatrix3> integrate_rk(const Superoperator9& liouvillian,
                                         const DensityMatrix3& rho0,
                                         const std::vector<double>& t_grid) {
  constexpr double kLocalTol = 1e-12;
  constexpr double kMinStep = 1e-12;

  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (t_grid[i + 1] < t_grid[i])
      throw std::invalid_argument("integrate_rk: t_grid must be ascending");
  if (!t_grid.empty() && t_grid.front() < 0.0)
    throw std::invalid_argument("integrate_rk: t_grid must start at >= 0");

  std::vector<DensityMatrix3> out;
  out.reserve(t_grid.size());

  Vector9c y = vectorize(rho0);
  double t = 0.0;
  const double l_scale = liouvillian.cwiseAbs().rowwise().sum().maxCoeff();
  double h = 0.1 / (1.0 + l_scale);

  for (double target : t_grid) {
    while (t < target) {
      const double remaining = target - t;
      if (remaining <= 1e-14 * std::max(1.0, std::abs(target))) {
        t = target;
        break;
      }
      const bool clamped = remaining < h;
      const double step = clamped ? remaining : h;
      const Vector9c full = rk4_step(liouvillian, y, step);
      const Vector9c half = rk4_step(
          liouvillian, rk4_step(liouvillian, y, 0.5 * step), 0.5 * step);
      const double err = inf_norm(half - full) / 15.0;
      const double tol = kLocalTol * std::max(1.0, inf_norm(y));
      if (err <= tol) {
        y = half + (half - full) / 15.0;  // local extrapolation
        t += step;
        // A step clamped to land on the grid carries no information about
        // the free-running step size.
        if (!clamped)
          h = step * std::clamp(
                         0.9 * std::pow(tol / std::max(err, 1e-300), 0.2),
                         0.2, 5.0);
      } else {
        h = step * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 0.9);
        if (h < kMinStep)
          throw NumericalError("integrate_rk: step underflow (stiff system)");
      }
    }
    out.push_back(unvectorize(y));
  }
  return out;
}

void PhononSpec::validate() const {
  if (n < 0) throw std::domain_error("phonon_rate: n must be >= 0");
  if (!std::isfinite(omega_c) || omega_c <= 0.0)
    throw std::domain_error("phonon_rate: omega_c must be > 0");
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw std::domain_error("phonon_rate: temperature must be >= 0");
  if (!std::isfinite(prefactor))
    throw std::domain_error("phonon_rate: prefactor must be finite");
  if (n == 0 && temperature > 0.0)
    throw std::domain_error(
        "phonon_rate: divergent for n = 0 with temperature > 0 "
        "(integrand ~ 2T/w near 0)");
}

namespace {

struct PhononIntegrand {
  int n;
  double omega_c;
  double temperature;

  double operator()(double w) const {
    if (w <= 0.0) return limit_at_zero();
    double occ = 0.0;
    if (temperature > 0.0) occ = 1.0 / std::expm1(w / temperature);
    return std::pow(w, n) * std::exp(-w / omega_c) * (1.0 + 2.0 * occ);
  }

  double limit_at_zero() const {
    if (temperature > 0.0) {
      // w^n * 2N -> 2T w^(n-1); n = 0 is rejected upstream.
      if (n == 1) return 2.0 * temperature;
      return 0.0;
    }
    return n == 0 ? 1.0 : 0.0;
  }
};

double adaptive_simpson(const PhononIntegrand& f, double a, double b,
                        double fa, double fb, double fm, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0)
    throw NumericalError("phonon_rate: quadrature depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate_segment(const PhononIntegrand& f, double a, double b,
                         double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 60);
}

}  // namespace

double phonon_rate(const PhononSpec& spec) {
  spec.validate();
  const PhononIntegrand f{spec.n, spec.omega_c, spec.temperature};

  // The integrand decays like exp(-w/omega_c) with thermal structure below
  // w ~ T; splitting at both scales keeps the adaptive recursion shallow.
  const double upper =
      (60.0 + 10.0 * spec.n) * std::max(spec.omega_c, spec.temperature);
  std::vector<double> knots = {0.0};
  const double lo = std::min(spec.temperature, spec.omega_c);
  const double hi = std::max(spec.temperature, spec.omega_c);
  if (lo > 0.0 && lo < upper) knots.push_back(lo);
  if (hi > lo && hi < upper) knots.push_back(hi);
  knots.push_back(upper);

  // Coarse pass to set the absolute tolerance for the 1e-10 relative target.
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    coarse += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  const double tol =
      1e-10 * std::max(std::abs(coarse), 1e-300) / (knots.size() - 1);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += integrate_segment(f, knots[i], knots[i + 1], tol);
  return spec.prefactor * total;
}

}  // namespace qdot
