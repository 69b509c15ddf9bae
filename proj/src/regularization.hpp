#pragma once

#include <span>

#include "dynamics.hpp"

namespace logblock {

// Blown-up chart (r, phi, psi, w).  r >= 0, with r = 0 the collision
// manifold.  psi is the momentum direction, phi the position direction minus
// psi, and w the log momentum scale: e^w = r * |p|.  In this chart the flow
// runs in the rescaled parameter tau and extends smoothly through r = 0.
struct RegState {
  double r = 0.0, phi = 0.0, psi = 0.0, w = 0.0;
};

// Point on the collision manifold torus {r = 0, e^{2w} = 2}.
struct ManifoldPoint {
  double phi = 0.0, psi = 0.0;
  RegState state() const;
};

// C^1 extensions through r = 0 used by the energy and momentum relations.
double f_ext(double r);        // r^2 ln r for r > 0, 0 at r = 0
double f_ext_prime(double r);  // r (2 ln r + 1) for r > 0, 0 at r = 0
double g_ext(double r);        // exp(-1/r^2)  for r > 0, 0 at r = 0

// Blow-down to the physical chart: q = r e^{-1/r^2} (cos(phi+psi), sin(phi+psi)),
// p = (e^w / r)(cos psi, sin psi).  Undefined at r = 0.
PhysState reg_to_phys(const RegState& s);

// Inverse chart change.  The radial variable solves |q| = r e^{-1/r^2}
// (strictly increasing, solved in log form to relative 1e-14).  Requires
// |q| > 0 and |p| > 0.
RegState phys_to_reg(const PhysState& s);

// Vector field in tau.  Smooth at r = 0, where it reduces to
// phi' = e^{2w} sin(phi) with r, psi, w frozen.
RegState reg_vector_field(const RegState& s);

// e^{2w}/2 - (h r^2 - f(r) + 1); zero on the energy level h.
double extended_energy_residual(const RegState& s, double h);

// Solves the energy relation for w at radius r on level h.  Throws
// infeasible_error when h r^2 - f(r) + 1 <= 0 (radius beyond the level's
// outer bound).
double w_from_energy(double r, double h);

// dtau/dt = -(1/r^2) e^{1/r^2 - w}; negative, defined for r > 0 only.
double time_reparam_rate(const RegState& s);

// dt/dtau = -r^2 e^{w - 1/r^2}; vanishes at r = 0 (physical time freezes on
// the collision manifold).  Used as quadrature integrand to accumulate t.
double phys_time_rate(const RegState& s);

// e^w g(r) sin(phi): the angular momentum integral extended through r = 0,
// where it vanishes.  Note g underflows to 0 in double precision for
// r < ~0.038, so near-collision values are numerically indistinguishable
// from zero.
double extended_momentum(const RegState& s);

// Closed form of phi' = 2 sin(phi) on the collision manifold:
// tan(phi/2) = e^{2 tau} tan(phi0/2).  phi0 in {0, pi} (the rings of
// equilibria) is rejected; use the constant solution there.
double collision_manifold_solution(double phi0, double tau);

// M(r, phi, psi, w) = (r, phi+pi, psi+pi, w); conjugates the flow to its
// time reversal: F(M(s)) = -F(s) componentwise.
RegState reversing_symmetry(const RegState& s);

// Flat-array adapter for the integrator, layout (r, phi, psi, w).
void reg_field_eval(std::span<const double> y, std::span<double> dy);

}  // namespace logblock
