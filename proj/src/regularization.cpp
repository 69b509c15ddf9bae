#include "regularization.hpp"

#include <cmath>
#include <stdexcept>

#include "angles.hpp"
#include "errors.hpp"

namespace logblock {

RegState ManifoldPoint::state() const { return {0.0, phi, psi, 0.5 * std::log(2.0)}; }

double f_ext(double r) { return r > 0.0 ? r * r * std::log(r) : 0.0; }

double f_ext_prime(double r) { return r > 0.0 ? r * (2.0 * std::log(r) + 1.0) : 0.0; }

double g_ext(double r) { return r > 0.0 ? std::exp(-1.0 / (r * r)) : 0.0; }

PhysState reg_to_phys(const RegState& s) {
  if (!(s.r > 0.0))
    throw std::domain_error("blow-down undefined on the collision manifold");
  const double rho = s.r * g_ext(s.r);
  const double pos_angle = s.phi + s.psi;
  const double pmag = std::exp(s.w) / s.r;
  return {{rho * std::cos(pos_angle), rho * std::sin(pos_angle)},
          {pmag * std::cos(s.psi), pmag * std::sin(s.psi)}};
}

RegState phys_to_reg(const PhysState& s) {
  const double rho = norm(s.q);
  const double pmag = norm(s.p);
  if (!(rho > 0.0)) throw std::domain_error("state at the origin singularity");
  if (!(pmag > 0.0))
    throw std::domain_error("log momentum scale undefined at zero momentum");

  // Solve ln r - 1/r^2 = ln rho.  Working in logs keeps the residual
  // well-scaled for every representable rho; the left side is strictly
  // increasing from -inf to +inf.
  const double target = std::log(rho);
  auto shifted = [&](double r) { return std::log(r) - 1.0 / (r * r) - target; };
  auto slope = [](double r) { return 1.0 / r + 2.0 / (r * r * r); };

  double lo = rho;          // rho e^{-1/rho^2} < rho, so the root lies above rho
  double hi = 2.0 * lo;
  while (shifted(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 100; ++i) {
    const double fr = shifted(r);
    if (fr > 0.0)
      hi = r;
    else
      lo = r;
    double step = fr / slope(r);
    double next = r - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::fabs(next - r) <= 1e-15 * r) {
      r = next;
      break;
    }
    r = next;
  }

  const double psi = std::atan2(s.p.y, s.p.x);
  const double pos_angle = std::atan2(s.q.y, s.q.x);
  return {r, wrap_two_pi(pos_angle - psi), wrap_two_pi(psi),
          std::log(r * pmag)};
}

RegState reg_vector_field(const RegState& s) {
  const double r = s.r;
  const double e2w = std::exp(2.0 * s.w);
  const double cp = std::cos(s.phi);
  const double sp = std::sin(s.phi);
  const double r2 = r * r;
  return {-r2 * r / (r2 + 2.0) * e2w * cp,
          (e2w - r2) * sp,
          r2 * sp,
          r2 * (1.0 - e2w / (r2 + 2.0)) * cp};
}

double extended_energy_residual(const RegState& s, double h) {
  return 0.5 * std::exp(2.0 * s.w) - (h * s.r * s.r - f_ext(s.r) + 1.0);
}

double w_from_energy(double r, double h) {
  if (r < 0.0) throw std::domain_error("negative radius");
  const double kinetic = h * r * r - f_ext(r) + 1.0;
  if (!(kinetic > 0.0))
    throw infeasible_error("radius beyond the outer bound of the energy level");
  return 0.5 * std::log(2.0 * kinetic);
}

double time_reparam_rate(const RegState& s) {
  if (!(s.r > 0.0))
    throw std::domain_error("physical time is frozen on the collision manifold");
  const double r2 = s.r * s.r;
  return -std::exp(1.0 / r2 - s.w) / r2;
}

double phys_time_rate(const RegState& s) {
  const double r2 = s.r * s.r;
  return -r2 * std::exp(s.w - 1.0 / r2);
}

double extended_momentum(const RegState& s) {
  return std::exp(s.w) * g_ext(s.r) * std::sin(s.phi);
}

double collision_manifold_solution(double phi0, double tau) {
  if (std::fabs(std::sin(phi0)) < 1e-15)
    throw std::domain_error("equilibrium ring: use the constant solution");
  const double half = 0.5 * phi0;
  // atan2 keeps the half-angle branch stable and absorbs e^{2 tau} overflow
  const double phi = 2.0 * std::atan2(std::exp(2.0 * tau) * std::sin(half),
                                      std::cos(half));
  return wrap_two_pi(phi);
}

RegState reversing_symmetry(const RegState& s) {
  return {s.r, wrap_two_pi(s.phi + std::numbers::pi),
          wrap_two_pi(s.psi + std::numbers::pi), s.w};
}

void reg_field_eval(std::span<const double> y, std::span<double> dy) {
  const double r = y[0];
  const double e2w = std::exp(2.0 * y[3]);
  const double cp = std::cos(y[1]);
  const double sp = std::sin(y[1]);
  const double r2 = r * r;
  dy[0] = -r2 * r / (r2 + 2.0) * e2w * cp;
  dy[1] = (e2w - r2) * sp;
  dy[2] = r2 * sp;
  dy[3] = r2 * (1.0 - e2w / (r2 + 2.0)) * cp;
}

}  // namespace logblock
