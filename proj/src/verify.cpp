#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "angles.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "sampling.hpp"

namespace logblock {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

Field cart_field() {
  return [](double, std::span<const double> y, std::span<double> dy) {
    cartesian_field_eval(y, dy);
  };
}

Field reg_field() {
  return [](double, std::span<const double> y, std::span<double> dy) {
    reg_field_eval(y, dy);
  };
}

PhysState apoapsis_state(double h, double c) {
  const HillBounds hb = hill_bounds(h, c);
  return polar_to_cartesian({hb.r_max, 0.0, 0.0, c});
}

// Time from one apoapsis to the next: first outbound-to-inbound turning
// point of |q| after the start.
double radial_period(const PhysState& s0, const IntegrationConfig& base) {
  const double y0[4] = {s0.q.x, s0.q.y, s0.p.x, s0.p.y};
  const EventSpec apoapsis{
      [](double, std::span<const double> y) {
        return y[0] * y[2] + y[1] * y[3];
      },
      EventDirection::falling, true, 1e-12};
  IntegrationConfig config = base;
  const auto res = integrate(cart_field(), y0, 0.0, 1000.0, config, {&apoapsis, 1});
  if (res.stop != StopReason::terminal_event)
    throw IntegrationError("radial period not found within the horizon");
  return res.hits.back().tau;
}

double unwrap_near(double angle, double ref) {
  return angle + two_pi * std::round((ref - angle) / two_pi);
}

double seg_dist(const double* p, const double* a, const double* b) {
  double ab[4], ap[4];
  double ab2 = 0.0, apab = 0.0;
  for (int k = 0; k < 4; ++k) {
    ab[k] = b[k] - a[k];
    ap[k] = p[k] - a[k];
    ab2 += ab[k] * ab[k];
    apab += ap[k] * ab[k];
  }
  const double t = ab2 > 0.0 ? std::clamp(apab / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double dk = ap[k] - t * ab[k];
    d2 += dk * dk;
  }
  return std::sqrt(d2);
}

}  // namespace

CartesianConservation measure_cartesian_conservation(
    double h, double c, int oscillations, const IntegrationConfig& config) {
  const PhysState s0 = apoapsis_state(h, c);
  const double T = radial_period(s0, config);
  const double y0[4] = {s0.q.x, s0.q.y, s0.p.x, s0.p.y};
  const double h0 = hamiltonian_cartesian(s0);
  const double c0 = cross(s0.q, s0.p);

  const auto res = integrate(cart_field(), y0, 0.0, oscillations * T, config);
  CartesianConservation out;
  out.radial_period = T;
  out.min_radius = inf;
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    const auto y = res.trajectory.state(i);
    const PhysState s{{y[0], y[1]}, {y[2], y[3]}};
    out.max_energy_drift =
        std::fmax(out.max_energy_drift, std::fabs(hamiltonian_cartesian(s) - h0));
    out.max_momentum_drift =
        std::fmax(out.max_momentum_drift, std::fabs(cross(s.q, s.p) - c0));
    const double r = norm(s.q);
    out.min_radius = std::fmin(out.min_radius, r);
    out.max_radius = std::fmax(out.max_radius, r);
  }
  return out;
}

RegConservation measure_reg_conservation(double h, double c, double span,
                                         const IntegrationConfig& config) {
  const RegState z0 = phys_to_reg(apoapsis_state(h, c));
  const double y0[4] = {z0.r, z0.phi, z0.psi, z0.w};
  const double c0 = extended_momentum(z0);

  RegConservation out;
  out.min_r = inf;
  for (const double dir : {1.0, -1.0}) {
    const auto res = integrate(reg_field(), y0, 0.0, dir * span, config);
    for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
      const auto y = res.trajectory.state(i);
      const RegState s{y[0], y[1], y[2], y[3]};
      out.max_energy_residual = std::fmax(
          out.max_energy_residual, std::fabs(extended_energy_residual(s, h)));
      out.max_momentum_drift =
          std::fmax(out.max_momentum_drift, std::fabs(extended_momentum(s) - c0));
      out.min_r = std::fmin(out.min_r, s.r);
    }
  }
  return out;
}

double measure_circular_radius_drift(double c, int periods,
                                     const IntegrationConfig& config) {
  const PhysState s0 = polar_to_cartesian(circular_orbit(c));
  const double y0[4] = {s0.q.x, s0.q.y, s0.p.x, s0.p.y};
  const double span = periods * two_pi * std::fabs(c);  // angular rate is 1/c
  const auto res = integrate(cart_field(), y0, 0.0, span, config);
  double worst = 0.0;
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    const auto y = res.trajectory.state(i);
    worst = std::fmax(worst, std::fabs(std::hypot(y[0], y[1]) - std::fabs(c)));
  }
  return worst;
}

double measure_circular_speed_error(double c) {
  const PhysState s = polar_to_cartesian(circular_orbit(c));
  return std::fabs(norm(s.p) - 1.0);
}

RoundTripStats measure_round_trips(int samples) {
  RoundTripStats out;
  SplitMix64 rng(0x0c0ffee1u);

  for (int i = 0; i < samples; ++i) {
    const double qmag = std::exp(rng.uniform(std::log(1e-6), std::log(10.0)));
    const double pmag = std::exp(rng.uniform(std::log(1e-3), std::log(10.0)));
    const double qa = rng.uniform(0.0, two_pi);
    const double pa = rng.uniform(0.0, two_pi);
    const PhysState s{{qmag * std::cos(qa), qmag * std::sin(qa)},
                      {pmag * std::cos(pa), pmag * std::sin(pa)}};

    const PolarState pol = cartesian_to_polar(s);
    const PhysState pback = polar_to_cartesian(pol);
    const double scale = std::fmax(1.0, std::fmax(qmag, pmag));
    out.max_polar_error = std::fmax(
        out.max_polar_error,
        std::fmax(norm(pback.q - s.q), norm(pback.p - s.p)) / scale);

    const double h_cart = hamiltonian_cartesian(s);
    const double h_polar = reduced_hamiltonian(pol.r, pol.p_r, pol.p_theta);
    const double escale = std::fmax(1.0, std::fabs(h_cart));
    out.max_invariant_mismatch = std::fmax(
        out.max_invariant_mismatch,
        std::fmax(std::fabs(h_cart - h_polar) / escale,
                  std::fabs(cross(s.q, s.p) - pol.p_theta) / scale));

    const RegState z = phys_to_reg(s);
    const PhysState rback = reg_to_phys(z);
    out.max_reg_error = std::fmax(
        out.max_reg_error,
        std::fmax(norm(rback.q - s.q), norm(rback.p - s.p)) / scale);

    out.max_sign_convention_residual = std::fmax(
        out.max_sign_convention_residual,
        std::fabs(extended_momentum(z) + cross(s.q, s.p)) / scale);

    // chart-side round trip; below r ~ 0.038 the blow-down underflows in
    // double precision, so sampling starts above it
    const RegState zs{std::exp(rng.uniform(std::log(0.05), std::log(10.0))),
                      rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi),
                      rng.uniform(-1.0, 1.5)};
    const RegState zback = phys_to_reg(reg_to_phys(zs));
    const double zscale = std::fmax(1.0, zs.r);
    const double zerr = std::fmax(
        std::fmax(std::fabs(zback.r - zs.r) / zscale, angle_dist(zback.phi, zs.phi)),
        std::fmax(angle_dist(zback.psi, zs.psi), std::fabs(zback.w - zs.w)));
    out.max_reg_error = std::fmax(out.max_reg_error, zerr);
  }

  const RegState zi = phys_to_reg({{std::exp(-1.0), 0.0}, {1.0, 0.0}});
  out.radial_inversion_error = std::fabs(zi.r - 1.0);
  return out;
}

double measure_flow_equivalence(double h, double c,
                                const IntegrationConfig& config) {
  const PhysState s0 = apoapsis_state(h, c);
  const double T = radial_period(s0, config);
  const double y0[4] = {s0.q.x, s0.q.y, s0.p.x, s0.p.y};
  const auto cart = integrate(cart_field(), y0, 0.0, T, config);

  // sample the cartesian run and push it through the chart change,
  // unwrapping the angles into a continuous curve
  const int n_cart = 2000;
  std::vector<std::array<double, 4>> mapped(n_cart);
  std::vector<double> buf(4);
  for (int i = 0; i < n_cart; ++i) {
    const double t = T * i / (n_cart - 1.0);
    cart.trajectory.sample(t, buf);
    const RegState z = phys_to_reg({{buf[0], buf[1]}, {buf[2], buf[3]}});
    mapped[i] = {z.r, z.phi, z.psi, z.w};
    if (i > 0) {
      mapped[i][1] = unwrap_near(mapped[i][1], mapped[i - 1][1]);
      mapped[i][2] = unwrap_near(mapped[i][2], mapped[i - 1][2]);
    }
  }

  // the same curve traced by the blown-up field: physical time runs against
  // tau, so integrate backwards until the accumulated time covers T
  const double z0[4] = {mapped[0][0], mapped[0][1], mapped[0][2], mapped[0][3]};
  const QuadratureSpec phys_time{[](double, std::span<const double> y) {
    return phys_time_rate({y[0], y[1], y[2], y[3]});
  }};
  const EventSpec done{
      [T](double, std::span<const double> y) { return y[4] - T; },
      EventDirection::rising, true, 1e-12};
  IntegrationConfig rc = config;
  rc.max_steps = std::max(rc.max_steps, 20'000'000L);
  const auto reg =
      integrate_with_quadrature(reg_field(), z0, 0.0, -1e5, rc, {&phys_time, 1},
                                {&done, 1});
  if (reg.stop != StopReason::terminal_event)
    throw IntegrationError("regularized run did not cover the period");
  const double tau_hit = reg.hits.back().tau;

  const int n_reg = 100000;
  std::vector<std::array<double, 4>> curve(n_reg);
  std::vector<double> rbuf(5);
  for (int j = 0; j < n_reg; ++j) {
    const double tau = tau_hit * j / (n_reg - 1.0);
    reg.trajectory.sample(tau, rbuf);
    curve[j] = {rbuf[0], rbuf[1], rbuf[2], rbuf[3]};
  }

  // nearest-curve distance with a sliding window (both curves advance
  // monotonically in physical time)
  double worst = 0.0;
  std::size_t hint = 0;
  for (int i = 0; i < n_cart; ++i) {
    std::size_t window = 400;
    double best = inf;
    std::size_t best_j = hint;
    for (;;) {
      const std::size_t lo = hint > window ? hint - window : 0;
      const std::size_t hi = std::min<std::size_t>(hint + window, n_reg - 2);
      for (std::size_t j = lo; j <= hi; ++j) {
        const double d = seg_dist(mapped[i].data(), curve[j].data(),
                                  curve[j + 1].data());
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      const bool at_edge = (best_j == (hint > window ? hint - window : 0) ||
                            best_j == std::min<std::size_t>(hint + window, n_reg - 2));
      if (!at_edge || (lo == 0 && hi == n_reg - 2)) break;
      window *= 4;
    }
    hint = best_j;
    worst = std::fmax(worst, best);
  }
  return worst;
}

ManifoldFlow measure_manifold_flow(double phi0, double psi0, double span,
                                   const IntegrationConfig& config) {
  const double w0 = 0.5 * std::log(2.0);
  const double y0[4] = {0.0, phi0, psi0, w0};
  const auto res = integrate(reg_field(), y0, 0.0, span, config);

  ManifoldFlow out;
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    const auto y = res.trajectory.state(i);
    if (y[0] != 0.0 || y[2] != psi0 || y[3] != w0) out.frozen_exact = false;
    const double expected = collision_manifold_solution(phi0, res.trajectory.tau(i));
    out.max_phi_error =
        std::fmax(out.max_phi_error, angle_dist(wrap_two_pi(y[1]), expected));
  }
  return out;
}

ExitLaw measure_exit_law(const BlockSpec& block, int samples,
                         const IntegrationConfig& config, int jobs) {
  std::vector<double> phis;
  phis.reserve(samples);
  const int half = samples / 2;
  for (int i = 0; i < half; ++i)
    phis.push_back(0.02 + (0.5 * pi - 0.04) * (i + 0.5) / half);
  for (int i = 0; i < samples - half; ++i)
    phis.push_back(1.5 * pi + 0.02 + (0.5 * pi - 0.04) * (i + 0.5) / (samples - half));

  const auto records = g_scan(block, phis, config, jobs);

  ExitLaw out;
  out.samples = static_cast<int>(records.size());
  out.min_alt_mismatch = inf;
  const double bound = 2.0 * block.delta * block.delta;
  for (const auto& rec : records) {
    if (rec.status != ExitStatus::exited)
      throw IntegrationError("entry did not exit within the horizon");
    out.max_law_error =
        std::fmax(out.max_law_error, angle_dist(rec.phi_exit, pi - rec.phi0));
    out.max_drift_bound_ratio =
        std::fmax(out.max_drift_bound_ratio, std::fabs(rec.drift) / bound);
    out.max_psi_drift_mismatch = std::fmax(
        out.max_psi_drift_mismatch, angle_dist(rec.psi_exit, rec.psi0 + rec.drift));
    if (std::sin(rec.phi0) < 0.0)  // negative-momentum entries
      out.min_alt_mismatch =
          std::fmin(out.min_alt_mismatch, angle_dist(rec.phi_exit, pi + rec.phi0));
  }
  return out;
}

DriftSequence measure_drift_sequence(const BlockSpec& block,
                                     const IntegrationConfig& config, int jobs) {
  DriftSequence out;
  for (int k = 1; k <= 6; ++k) out.phi0.push_back(std::pow(10.0, -k));
  const auto records = g_scan(block, out.phi0, config, jobs);

  // g_scan sorts ascending; read back in decreasing-angle order
  out.drift.resize(6);
  out.tau_exit.resize(6);
  const double bound = 2.0 * block.delta * block.delta;
  for (const auto& rec : records) {
    for (int k = 0; k < 6; ++k) {
      if (std::fabs(rec.phi0 - out.phi0[k]) < 1e-15 * out.phi0[k]) {
        out.drift[k] = rec.drift;
        out.tau_exit[k] = rec.tau_exit;
      }
    }
    out.max_bound_ratio =
        std::fmax(out.max_bound_ratio, std::fabs(rec.drift) / bound);
  }

  for (int k = 0; k + 1 < 6; ++k)
    out.worst_monotonicity_violation =
        std::fmax(out.worst_monotonicity_violation,
                  std::fabs(out.drift[k + 1]) - std::fabs(out.drift[k]));

  const double d1 = out.drift[4] - out.drift[3];
  const double d2 = out.drift[5] - out.drift[4];
  const double dd = d2 - d1;
  out.extrapolated = dd != 0.0 ? out.drift[5] - d2 * d2 / dd : out.drift[5];
  return out;
}

double measure_drift_antisymmetry(const BlockSpec& block, int samples,
                                  const IntegrationConfig& config) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double phi0 = 0.05 + (0.5 * pi - 0.1) * (i + 0.5) / samples;
    const ExitRecord a = block_map(block, phi0, 0.0, config);
    const ExitRecord b = block_map(block, two_pi - phi0, 0.0, config);
    worst = std::fmax(worst, std::fabs(a.drift + b.drift));
  }
  return worst;
}

AsymptoticApproach measure_asymptotic_approach(const BlockSpec& block,
                                               double psi0,
                                               const IntegrationConfig& config) {
  const double y0[4] = {block.delta, 0.0, psi0, block.w_delta};
  const EventSpec convergence{
      [](double, std::span<const double> y) {
        return std::fmax(std::fmax(y[0], std::fabs(std::sin(y[1]))),
                         std::fabs(std::exp(2.0 * y[3]) - 2.0)) -
               1e-6;
      },
      EventDirection::falling, true, 1e-12};

  IntegrationConfig rc = config;
  rc.max_span = 1e13;  // the radius decays algebraically, the span is long
  const auto res = integrate(reg_field(), y0, 0.0, rc.max_span, rc,
                             {&convergence, 1});

  AsymptoticApproach out;
  out.converged = res.stop == StopReason::terminal_event;
  double prev_gap = inf;
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    const auto y = res.trajectory.state(i);
    if (y[1] != 0.0 || y[2] != psi0) out.psi_frozen_exact = false;
    if (y[0] < 0.01) {
      const double gap = std::fabs(std::exp(2.0 * y[3]) - 2.0);
      if (gap > prev_gap * (1.0 + 1e-12)) out.e2w_monotone = false;
      prev_gap = gap;
    }
  }
  const auto y = out.converged
                     ? std::span<const double>(res.hits.back().state)
                     : res.trajectory.state(res.trajectory.size() - 1);
  out.final_r = y[0];
  out.final_e2w_gap = std::fabs(std::exp(2.0 * y[3]) - 2.0);
  out.final_sin_phi = std::fabs(std::sin(y[1]));
  out.tau_end = out.converged ? res.hits.back().tau
                              : res.trajectory.tau(res.trajectory.size() - 1);
  return out;
}

ConfinementStats measure_confinement(int runs, double horizon,
                                     const IntegrationConfig& config) {
  ConfinementStats out;
  out.runs = runs;
  out.worst_blowdown_margin = inf;
  out.worst_radial_margin = inf;
  SplitMix64 rng(0xc04f14edu);

  for (int i = 0; i < runs; ++i) {
    const double mag = std::exp(rng.uniform(std::log(0.1), std::log(1.2)));
    const double c = (i % 2 == 0) ? mag : -mag;
    const double h = h_min(c) + 0.1 + rng.uniform(0.0, 2.0);
    const HillBounds hb = hill_bounds(h, c);
    const RegState z0 = phys_to_reg(apoapsis_state(h, c));
    const double y0[4] = {z0.r, z0.phi, z0.psi, z0.w};
    const double dir = (i % 4 < 2) ? 1.0 : -1.0;
    const auto res = integrate(reg_field(), y0, 0.0, dir * horizon, config);
    double min_r = inf, min_rho = inf;
    for (std::size_t j = 0; j < res.trajectory.size(); ++j) {
      const double r = res.trajectory.state(j)[0];
      min_r = std::fmin(min_r, r);
      min_rho = std::fmin(min_rho, r * g_ext(r));
    }
    out.worst_radial_margin = std::fmin(out.worst_radial_margin, min_r - hb.r_min);
    out.worst_blowdown_margin =
        std::fmin(out.worst_blowdown_margin, min_rho - hb.r_min);
  }
  return out;
}

HillOracle measure_hill_oracles() {
  HillOracle out;
  const std::pair<double, double> pairs[] = {
      {1.0, 1.0}, {0.0, 0.3}, {2.0, 0.7}, {-1.0, 0.15}, {0.25, 0.6}};
  for (const auto& [h, c] : pairs) {
    const HillBounds hb = hill_bounds(h, c);
    out.max_potential_mismatch =
        std::fmax(out.max_potential_mismatch,
                  std::fmax(std::fabs(reduced_potential(hb.r_min, c) - h),
                            std::fabs(reduced_potential(hb.r_max, c) - h)));
  }
  const HillBounds degen = hill_bounds(h_min(1.0), 1.0);
  out.degenerate_gap =
      std::fmax(std::fabs(degen.r_min - 1.0), std::fabs(degen.r_max - 1.0));
  const HillBounds zero = hill_bounds(0.7, 0.0);
  out.zero_momentum_error =
      std::fmax(std::fabs(zero.r_min), std::fabs(zero.r_max - std::exp(0.7)));
  return out;
}

// ---- suites ---------------------------------------------------------------

namespace {

IntegrationConfig probe_config(IntegrationConfig c) {
  c.max_span = 1e13;  // asymptotic approaches decay algebraically in tau
  return c;
}

CheckResult check(std::string suite, std::string name, double measured,
                  double tolerance, std::string detail = "") {
  CheckResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.measured = measured;
  r.tolerance = tolerance;
  r.pass = measured <= tolerance;
  r.detail = std::move(detail);
  return r;
}

CheckResult check_flag(std::string suite, std::string name, bool ok,
                       std::string detail = "") {
  CheckResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.measured = ok ? 1.0 : 0.0;
  r.tolerance = 1.0;
  r.pass = ok;
  r.detail = std::move(detail);
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<CheckResult> conservation_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const std::pair<double, double> pairs[] = {{1.0, 0.5}, {0.0, 0.25}, {-1.0, 0.1}};

  double energy = 0.0, momentum = 0.0, confinement = -inf;
  for (const auto& [h, c] : pairs) {
    const auto stats = measure_cartesian_conservation(h, c, 10, opt.config);
    energy = std::fmax(energy, stats.max_energy_drift);
    momentum = std::fmax(momentum, stats.max_momentum_drift);
    const HillBounds hb = hill_bounds(h, c);
    confinement = std::fmax(confinement,
                            std::fmax(hb.r_min - stats.min_radius,
                                      stats.max_radius - hb.r_max));
  }
  out.push_back(check("conservation", "cartesian_energy_drift", energy, 1e-8,
                      "10 radial oscillations on three (h, c) pairs"));
  out.push_back(check("conservation", "cartesian_momentum_drift", momentum, 1e-9));
  out.push_back(check("conservation", "hill_confinement", confinement, 1e-6,
                      "sampled radii stay inside [r_min, r_max]"));

  out.push_back(check("conservation", "circular_orbit_radius",
                      measure_circular_radius_drift(1.0, 100, opt.config), 1e-6,
                      "c = 1 over 100 periods"));

  double residual = 0.0, drift = 0.0, min_r = inf;
  for (const double h : {-1.0, 0.0, 1.0}) {
    const double c = std::exp(h - 0.7);
    const auto stats = measure_reg_conservation(h, c, 50.0, opt.config);
    residual = std::fmax(residual, stats.max_energy_residual);
    drift = std::fmax(drift, stats.max_momentum_drift);
    min_r = std::fmin(min_r, stats.min_r);
  }
  out.push_back(check("conservation", "extended_energy_residual", residual, 1e-9,
                      "levels -1, 0, 1 over tau spans of +/-50"));
  out.push_back(check("conservation", "extended_momentum_drift", drift, 1e-9,
                      "same runs; smallest radius " + fmt(min_r)));
  return out;
}

std::vector<CheckResult> transforms_suite(const VerifyOptions&) {
  std::vector<CheckResult> out;
  const auto stats = measure_round_trips(1000);
  out.push_back(check("transforms", "polar_round_trip", stats.max_polar_error, 1e-12,
                      "1000 random states"));
  out.push_back(check("transforms", "blowup_round_trip", stats.max_reg_error, 1e-10,
                      "1000 random states, both directions"));
  out.push_back(check("transforms", "invariants_across_charts",
                      stats.max_invariant_mismatch, 1e-12));
  out.push_back(check("transforms", "momentum_sign_convention",
                      stats.max_sign_convention_residual, 1e-12,
                      "extended momentum equals -p_theta under the chart's "
                      "angle conventions"));
  out.push_back(check("transforms", "radial_inversion",
                      stats.radial_inversion_error, 1e-12,
                      "|q| = 1/e inverts to r = 1"));
  return out;
}

std::vector<CheckResult> wilson_yorke_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const BlockSpec block = make_block(0.0, 0.1);
  const auto report = wilson_yorke_check(block, 100, opt.config);

  out.push_back(check_flag("wilson_yorke", "second_derivative_positive",
                           report.second_derivative_positive,
                           "minimum measured value " +
                               fmt(report.min_second_derivative)));
  const bool b_confirmed = report.confirmed_formula == "b";
  const double confirmed_err =
      b_confirmed ? report.max_rel_mismatch_b : report.max_rel_mismatch_a;
  out.push_back(check("wilson_yorke", "second_derivative_matches_flow",
                      confirmed_err, 1e-4,
                      "confirmed closed form: r^3 e^{2w} (e^{2w} - r^2) / (r^2 + 2)"));
  out.push_back(check_flag(
      "wilson_yorke", "second_derivative_formula_resolved",
      !report.confirmed_formula.empty(),
      "candidate without the e^{2w} factor misses finite differences by " +
          fmt(report.max_rel_mismatch_a) +
          " relative; the factored form matches to " +
          fmt(report.max_rel_mismatch_b)));
  out.push_back(check("wilson_yorke", "tangent_identity",
                      report.max_tangent_identity_residual, 1e-10,
                      "e^{2w} w' + (f'(r) - 2hr) r' on the energy level"));
  return out;
}

std::vector<CheckResult> block_map_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const BlockSpec block = make_block(0.0, 0.1);
  const double bound = 2.0 * block.delta * block.delta;

  const auto law = measure_exit_law(block, 50, opt.config, opt.jobs);
  out.push_back(check("block_map", "exit_angle_law", law.max_law_error, 1e-6,
                      "phi_exit = pi - phi0 (mod 2 pi) on both entry arcs"));
  out.push_back(check_flag(
      "block_map", "exit_formula_negative_momentum",
      law.max_law_error <= 1e-6 && law.min_alt_mismatch > 1e-3,
      "pi + phi0 alternative rejected: smallest mismatch " +
          fmt(law.min_alt_mismatch) + " vs " + fmt(law.max_law_error) +
          " for pi - phi0"));
  out.push_back(check("block_map", "psi_drift_equals_quadrature",
                      law.max_psi_drift_mismatch, 1e-9));

  const auto seq = measure_drift_sequence(block, opt.config, opt.jobs);
  const double bound_ratio = std::fmax(law.max_drift_bound_ratio, seq.max_bound_ratio);
  out.push_back(check("block_map", "drift_bound", bound_ratio,
                      1.0 + 1e-9 / bound, "|G| <= 2 delta^2 on every scan"));
  std::string seq_detail = "G(10^-k), k=1..6:";
  for (double g : seq.drift) seq_detail += " " + fmt(g);
  out.push_back(check("block_map", "drift_sequence_monotone",
                      seq.worst_monotonicity_violation, 0.0, seq_detail));
  out.push_back(check("block_map", "drift_sequence_extrapolation",
                      std::fabs(seq.extrapolated), 1e-4 * bound, seq_detail));

  out.push_back(check("block_map", "drift_antisymmetry",
                      measure_drift_antisymmetry(block, 8, opt.config), 1e-9,
                      "G(2 pi - phi0) = -G(phi0)"));

  const auto bij = verify_bijection(block, 50, opt.config);
  out.push_back(check("block_map", "bijection_return", bij.max_return_error, 1e-7,
                      "exit states integrate back to their entries"));
  out.push_back(check_flag("block_map", "bijection_injectivity",
                           bij.min_exit_separation > 1e-9,
                           "smallest exit separation " +
                               fmt(bij.min_exit_separation)));
  out.push_back(check_flag("block_map", "tangency_identity", bij.tangency_fixed,
                           "phi0 = pi/2 exits immediately with tau_exit = 0"));

  const ExitRecord ext = block_map(block, 0.0, 0.25, opt.config);
  out.push_back(check_flag(
      "block_map", "asymptotic_extension",
      ext.status == ExitStatus::asymptotic && ext.phi_exit == pi &&
          ext.psi_exit == ext.psi0 && ext.drift == 0.0 &&
          std::isinf(ext.tau_exit),
      "phi0 = 0 maps to (delta, pi, psi0, w_delta) by continuation"));
  return out;
}

std::vector<CheckResult> lemmas_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const BlockSpec block = make_block(0.0, 0.1);

  const auto mf = measure_manifold_flow(0.5 * pi, 1.0, 0.5, opt.config);
  out.push_back(check_flag("lemmas", "collision_manifold_invariant",
                           mf.frozen_exact,
                           "r, w and psi unchanged bit-for-bit at r = 0"));
  out.push_back(check("lemmas", "collision_manifold_closed_form",
                      mf.max_phi_error, 1e-10,
                      "tan(phi/2) = e^{2 tau} tan(phi0/2)"));

  const auto approach = measure_asymptotic_approach(block, 1.0, opt.config);
  out.push_back(check_flag(
      "lemmas", "asymptotic_entry_converges",
      approach.converged && approach.final_r <= 1.0000001e-6 &&
          approach.final_e2w_gap <= 1e-6 && approach.final_sin_phi <= 1e-6,
      "final r " + fmt(approach.final_r) + ", |e^{2w} - 2| " +
          fmt(approach.final_e2w_gap) + ", tau " + fmt(approach.tau_end)));
  out.push_back(check_flag("lemmas", "asymptotic_psi_frozen",
                           approach.psi_frozen_exact));
  out.push_back(check_flag("lemmas", "e2w_monotone_approach",
                           approach.e2w_monotone,
                           "|e^{2w} - 2| shrinks monotonically once r < 0.01"));

  const OmegaProbe back = omega_limit_probe(
      {block.delta, pi, 0.5, block.w_delta}, block.h, probe_config(opt.config),
      ProbeDirection::backward);
  out.push_back(check_flag("lemmas", "exit_ring_alpha_limit",
                           back.outcome == ProbeOutcome::converged_to_S_minus,
                           "backward run from phi0 = pi reaches the phi = pi ring"));

  const auto conf = measure_confinement(20, 1000.0, opt.config);
  out.push_back(check_flag(
      "lemmas", "collision_requires_zero_momentum",
      conf.worst_blowdown_margin > -1e-6 && conf.worst_radial_margin > -1e-6,
      "20 nonzero-momentum orbits keep |q| >= r_min - 1e-6; worst margin " +
          fmt(conf.worst_blowdown_margin)));

  const double c_near = std::fabs(extended_momentum({0.03, 0.5 * pi, 0.0, 0.5 * std::log(2.0)}));
  out.push_back(check("lemmas", "momentum_underflow_near_collision", c_near,
                      1e-300,
                      "extended momentum vanishes to double precision below "
                      "r ~ 0.038"));
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"conservation", "transforms", "wilson_yorke", "block_map", "lemmas"};
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyOptions& options) {
  if (suite == "conservation") return conservation_suite(options);
  if (suite == "transforms") return transforms_suite(options);
  if (suite == "wilson_yorke") return wilson_yorke_suite(options);
  if (suite == "block_map") return block_map_suite(options);
  if (suite == "lemmas") return lemmas_suite(options);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      auto part = run_suite(name, options);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown verification suite: " + suite);
}

}  // namespace logblock
