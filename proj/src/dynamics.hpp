#pragma once

#include <cmath>
#include <span>
#include <utility>

namespace logblock {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Planar position/momentum pair.  The origin is the force-centre
// singularity; states with q = 0 are rejected by every operation.
struct PhysState {
  Vec2 q, p;
};

// Reduced chart (r, theta, p_r, p_theta) with r > 0.
struct PolarState {
  double r = 0.0, theta = 0.0, p_r = 0.0, p_theta = 0.0;
};

// Conserved pair of a trajectory: energy h and angular momentum c.
struct Invariants {
  double h = 0.0, c = 0.0;
};

struct HillBounds {
  double r_min = 0.0, r_max = 0.0;
};

// H(q, p) = |p|^2 / 2 + ln|q|
double hamiltonian_cartesian(const PhysState& s);

// (q', p') = (p, -q / |q|^2)
PhysState vector_field_cartesian(const PhysState& s);

PolarState cartesian_to_polar(const PhysState& s);
PhysState polar_to_cartesian(const PolarState& s);
Invariants invariants_of(const PhysState& s);

// Reduced one degree of freedom system at fixed angular momentum c.
double reduced_potential(double r, double c);               // c^2/(2r^2) + ln r
double reduced_hamiltonian(double r, double p_r, double c); // p_r^2/2 + V_red
std::pair<double, double> reduced_vector_field(double r, double p_r, double c);

// Energy floor for c != 0: below it no motion exists.
double h_min(double c);

// The allowed radial interval at energy h.  For c = 0 the inner bound is 0
// and collisions are possible; for c != 0 both bounds are roots of
// V_red(r) = h, located by bracketed root finding to relative 1e-12.
// Throws infeasible_error when c != 0 and h < h_min(c).
HillBounds hill_bounds(double h, double c);

// The circular solution at angular momentum c != 0: r = |c|, p_r = 0,
// a fixed point of the reduced field sitting on the energy floor.
PolarState circular_orbit(double c);

// Flat-array adapter for the integrator, layout (qx, qy, px, py).
void cartesian_field_eval(std::span<const double> y, std::span<double> dy);

}  // namespace logblock
