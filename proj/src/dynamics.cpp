#include "dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "angles.hpp"
#include "errors.hpp"
#include "rootfind.hpp"

namespace logblock {

namespace {

void require_off_origin(const PhysState& s) {
  if (s.q.x == 0.0 && s.q.y == 0.0)
    throw std::domain_error("state at the origin singularity");
}

}  // namespace

double hamiltonian_cartesian(const PhysState& s) {
  require_off_origin(s);
  return 0.5 * dot(s.p, s.p) + std::log(norm(s.q));
}

PhysState vector_field_cartesian(const PhysState& s) {
  require_off_origin(s);
  const double q2 = dot(s.q, s.q);
  return {s.p, (-1.0 / q2) * s.q};
}

PolarState cartesian_to_polar(const PhysState& s) {
  require_off_origin(s);
  const double r = norm(s.q);
  const double theta = wrap_two_pi(std::atan2(s.q.y, s.q.x));
  return {r, theta, dot(s.q, s.p) / r, cross(s.q, s.p)};
}

PhysState polar_to_cartesian(const PolarState& s) {
  if (!(s.r > 0.0)) throw std::domain_error("polar state requires r > 0");
  const Vec2 er{std::cos(s.theta), std::sin(s.theta)};
  const Vec2 et{-er.y, er.x};
  return {s.r * er, s.p_r * er + (s.p_theta / s.r) * et};
}

Invariants invariants_of(const PhysState& s) {
  return {hamiltonian_cartesian(s), cross(s.q, s.p)};
}

double reduced_potential(double r, double c) {
  if (!(r > 0.0)) throw std::domain_error("reduced chart requires r > 0");
  return 0.5 * c * c / (r * r) + std::log(r);
}

double reduced_hamiltonian(double r, double p_r, double c) {
  return 0.5 * p_r * p_r + reduced_potential(r, c);
}

std::pair<double, double> reduced_vector_field(double r, double p_r, double c) {
  if (!(r > 0.0)) throw std::domain_error("reduced chart requires r > 0");
  return {p_r, c * c / (r * r * r) - 1.0 / r};
}

double h_min(double c) {
  if (c == 0.0)
    throw std::domain_error("no energy floor at zero angular momentum");
  return 0.5 + std::log(std::fabs(c));
}

HillBounds hill_bounds(double h, double c) {
  if (c == 0.0) return {0.0, std::exp(h)};

  const double rc = std::fabs(c);  // V_red has its single minimum at r = |c|
  const double floor = h_min(c);
  if (h < floor) throw infeasible_error("energy below h_min(c)");
  if (h == floor) return {rc, rc};

  auto excess = [&](double r) { return reduced_potential(r, c) - h; };

  double r_min;
  {
    double lo = 1e-15 * rc;
    // V_red -> +inf as r -> 0, so the inner bracket endpoint is positive
    while (!(excess(lo) > 0.0)) lo *= 0.5;
    r_min = find_root(excess, lo, rc, 1e-12).x;
  }
  double r_max;
  {
    double hi = 2.0 * rc;
    while (excess(hi) <= 0.0) hi *= 2.0;
    r_max = find_root(excess, rc, hi, 1e-12).x;
  }
  return {r_min, r_max};
}

PolarState circular_orbit(double c) {
  if (c == 0.0) throw std::domain_error("circular orbit requires c != 0");
  return {std::fabs(c), 0.0, 0.0, c};
}

void cartesian_field_eval(std::span<const double> y, std::span<double> dy) {
  const double q2 = y[0] * y[0] + y[1] * y[1];
  dy[0] = y[2];
  dy[1] = y[3];
  dy[2] = -y[0] / q2;
  dy[3] = -y[1] / q2;
}

}  // namespace logblock
