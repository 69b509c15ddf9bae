#pragma once

#include <span>
#include <string>
#include <vector>

#include "integrate.hpp"
#include "regularization.hpp"

namespace logblock {

// Isolating block {r <= delta} on energy level h, with w_delta the value of
// w on the boundary fixed by the energy relation.
struct BlockSpec {
  double h = 0.0;
  double delta = 0.0;
  double w_delta = 0.0;
};

// Validates delta and computes w_delta.  Conditions:
//   - h delta^2 - f(delta) + 1 > 0   (w_delta well defined)
//   - 2 ln(delta) + 1 - 2h < 0       (the radius function has a nonzero
//                                     gradient throughout 0 < r <= delta)
//   - e^{2 w_delta} - delta^2 > 0    (outward curvature at tangency points)
// Throws std::invalid_argument naming the violated condition.
BlockSpec make_block(double h, double delta);

// delta = min(0.1, e^{h-1}/2), kept clear of the radius e^{h-1/2} where the
// gradient condition degenerates.
double default_delta(double h);

enum class BoundaryClass { entry, exit, tangency, asymptotic_in, asymptotic_out };

// Classifies a boundary point (r = delta, w = w_delta) by its phi angle.
// The measure-zero classes use a wrap-aware tolerance of 1e-12.
BoundaryClass classify_boundary(double phi0);
const char* to_string(BoundaryClass c);

enum class ExitStatus { exited, asymptotic, horizon_exceeded };
const char* to_string(ExitStatus s);

// One evaluation of the map across the block.
struct ExitRecord {
  double phi0 = 0.0, psi0 = 0.0;
  double tau_exit = 0.0;  // +infinity for asymptotic entries, NaN past the horizon
  double phi_exit = 0.0, psi_exit = 0.0;
  double drift = 0.0;     // accumulated integral of r^2 sin(phi) in tau
  double momentum = 0.0;  // extended momentum of the orbit
  ExitStatus status = ExitStatus::exited;
};

// Follows the flow from the boundary point (delta, phi0, psi0, w_delta) until
// it crosses r = delta outward, accumulating the drift integral.
//   - entering points integrate with a terminal boundary event;
//   - tangency points graze outward immediately: the record is the identity
//     with tau_exit = 0;
//   - points within 1e-9 of phi0 = 0 take the analytic continuation
//     (delta, pi, psi0, w_delta) with zero drift and infinite exit time.
// Exit-side points are rejected with std::invalid_argument.  If max_span
// elapses first the record is returned with status horizon_exceeded.
ExitRecord block_map(const BlockSpec& block, double phi0, double psi0,
                     const IntegrationConfig& config);

// block_map over a list of entry angles, fanned out over `jobs` workers.
// Results are returned sorted by phi0 regardless of completion order.
std::vector<ExitRecord> g_scan(const BlockSpec& block,
                               std::span<const double> phi0s,
                               const IntegrationConfig& config, int jobs = 1);

// Checks the hypotheses that make {r <= delta} an isolating block:
// at sampled tangency states (cos(phi) = 0, 0 < r <= delta on the energy
// level) the second derivative of r along the flow must be strictly
// positive, and the candidate closed forms
//   (a) r^3 (e^{2w} - r^2) / (r^2 + 2)
//   (b) e^{2w} * (a)
// are compared against a centred finite difference of r along integrated
// arcs; exactly one candidate must match to relative 1e-4 at every sample.
// Also verifies the on-level tangent identity
// e^{2w} w' + (f'(r) - 2 h r) r' = 0 at general sampled states.
struct WilsonYorkeReport {
  int tangency_samples = 0;
  bool second_derivative_positive = true;
  double min_second_derivative = 0.0;   // finite-difference value, minimum
  double max_rel_mismatch_a = 0.0;      // candidate (a) vs finite differences
  double max_rel_mismatch_b = 0.0;      // candidate (b) vs finite differences
  std::string confirmed_formula;        // "a", "b" or "" when unresolved
  double max_tangent_identity_residual = 0.0;
  std::vector<std::string> violations;
};

WilsonYorkeReport wilson_yorke_check(const BlockSpec& block, int samples,
                                     const IntegrationConfig& config);

// Samples entering boundary points, applies the map across the block, then
// integrates backwards from each exit and measures the return error to the
// entry point; also records the smallest exit-state separation between
// distinct entries.
struct BijectionReport {
  int samples = 0;
  double max_return_error = 0.0;
  double min_exit_separation = 0.0;
  bool tangency_fixed = false;  // phi0 = pi/2 maps to itself with tau_exit = 0
  std::vector<std::string> violations;
};

BijectionReport verify_bijection(const BlockSpec& block, int samples,
                                 const IntegrationConfig& config);

enum class ProbeDirection { forward, backward };
enum class ProbeOutcome {
  converged_to_S_plus,
  converged_to_S_minus,
  bounded_nonconvergent
};
const char* to_string(ProbeOutcome o);

// Integrates from `start` on level h up to config.max_span and reports
// whether the orbit reaches the equilibrium rings of the collision manifold:
// convergence is declared when r, |sin(phi)| and |e^{2w} - 2| all drop below
// 1e-6, with the ring chosen by the phi angle.  Running out of span reports
// bounded_nonconvergent together with the smallest radius seen.
struct OmegaProbe {
  ProbeOutcome outcome = ProbeOutcome::bounded_nonconvergent;
  double psi_star = 0.0;  // frozen angle at the limit ring (when converged)
  double tau_end = 0.0;
  RegState final_state;
  double min_r = 0.0;
};

OmegaProbe omega_limit_probe(const RegState& start, double h,
                             const IntegrationConfig& config,
                             ProbeDirection direction = ProbeDirection::forward);

}  // namespace logblock
