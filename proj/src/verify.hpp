#pragma once

#include <string>
#include <vector>

#include "block.hpp"
#include "integrate.hpp"

namespace logblock {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst measured value of the checked quantity
  double tolerance = 0.0;  // threshold it was compared against
  std::string detail;
};

struct VerifyOptions {
  IntegrationConfig config;
  int jobs = 1;
};

// Suites: conservation, transforms, wilson_yorke, block_map, lemmas.
// "all" runs the union.  Throws std::invalid_argument on an unknown name.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyOptions& options);

// ---- measurements shared by the suites and the acceptance tests ----------

struct CartesianConservation {
  double max_energy_drift = 0.0;
  double max_momentum_drift = 0.0;
  double min_radius = 0.0, max_radius = 0.0;  // sampled radial range
  double radial_period = 0.0;
};
CartesianConservation measure_cartesian_conservation(double h, double c,
                                                     int oscillations,
                                                     const IntegrationConfig&);

struct RegConservation {
  double max_energy_residual = 0.0;
  double max_momentum_drift = 0.0;
  double min_r = 0.0;  // smallest blown-up radius along the runs
};
// Integrates the orbit of (h, c) over +/- span in the blown-up chart.
RegConservation measure_reg_conservation(double h, double c, double span,
                                         const IntegrationConfig&);

double measure_circular_radius_drift(double c, int periods,
                                     const IntegrationConfig&);
double measure_circular_speed_error(double c);

struct RoundTripStats {
  double max_polar_error = 0.0;
  double max_reg_error = 0.0;
  double max_invariant_mismatch = 0.0;      // energy/momentum across charts
  double max_sign_convention_residual = 0.0;  // extended momentum vs -p_theta
  double radial_inversion_error = 0.0;        // |q| = 1/e must invert to r = 1
};
RoundTripStats measure_round_trips(int samples);

// Largest distance from the mapped cartesian trajectory of (h, c) to the
// trajectory of the blown-up field through the same initial point, as curves
// in the blown-up chart, over one radial oscillation.
double measure_flow_equivalence(double h, double c, const IntegrationConfig&);

struct ManifoldFlow {
  double max_phi_error = 0.0;  // integrated phi vs the closed-form solution
  bool frozen_exact = true;    // r, w and psi unchanged bit-for-bit
};
ManifoldFlow measure_manifold_flow(double phi0, double psi0, double span,
                                   const IntegrationConfig&);

struct ExitLaw {
  double max_law_error = 0.0;       // phi_exit vs pi - phi0 (mod 2 pi)
  double min_alt_mismatch = 0.0;    // distance of the pi + phi0 alternative,
                                    // minimum over negative-momentum entries
  double max_drift_bound_ratio = 0.0;   // max |G| / (2 delta^2)
  double max_psi_drift_mismatch = 0.0;  // |psi_exit - (psi0 + G)|
  int samples = 0;
};
ExitLaw measure_exit_law(const BlockSpec&, int samples,
                         const IntegrationConfig&, int jobs);

struct DriftSequence {
  std::vector<double> phi0;      // 10^-1 .. 10^-6
  std::vector<double> drift;     // G at each entry angle
  std::vector<double> tau_exit;
  double max_bound_ratio = 0.0;  // max |G| / (2 delta^2)
  double worst_monotonicity_violation = 0.0;  // max growth of |G| along the list
  double extrapolated = 0.0;     // Aitken limit of the last three values
};
DriftSequence measure_drift_sequence(const BlockSpec&, const IntegrationConfig&,
                                     int jobs);

// max |G(2 pi - phi0) + G(phi0)| over sampled entries
double measure_drift_antisymmetry(const BlockSpec&, int samples,
                                  const IntegrationConfig&);

struct AsymptoticApproach {
  bool converged = false;
  double final_r = 0.0;
  double final_e2w_gap = 0.0;  // |e^{2w} - 2| at the end of the run
  double final_sin_phi = 0.0;
  bool psi_frozen_exact = true;
  bool e2w_monotone = true;  // once r < 0.01 the gap shrinks monotonically
  double tau_end = 0.0;
};
// Follows the boundary point (delta, 0, psi0, w_delta) into the block until
// radius, |sin phi| and |e^{2w} - 2| all drop below 1e-6.
AsymptoticApproach measure_asymptotic_approach(const BlockSpec&, double psi0,
                                               const IntegrationConfig&);

struct ConfinementStats {
  int runs = 0;
  double worst_blowdown_margin = 0.0;   // min over runs of (min |q| - r_min)
  double worst_radial_margin = 0.0;     // same for the blown-up radius
};
// Nonzero-momentum orbits sampled across energy levels, integrated over the
// given horizon in the blown-up chart; no orbit may dip below its inner
// radial bound.
ConfinementStats measure_confinement(int runs, double horizon,
                                     const IntegrationConfig&);

struct HillOracle {
  double max_potential_mismatch = 0.0;  // |V_red(root) - h| over sampled pairs
  double degenerate_gap = 0.0;          // both roots vs |c| on the energy floor
  double zero_momentum_error = 0.0;     // (0, e^h) closed form
};
HillOracle measure_hill_oracles();

}  // namespace logblock
