#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace logblock {

struct IntegrationConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 = choose automatically
  double max_step = 0.0;      // 0 = unlimited
  double max_span = 200.0;    // default horizon used by block-map style callers
  long max_steps = 10'000'000;

  void validate() const;  // throws std::invalid_argument
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepSizeUnderflow : IntegrationError {
  using IntegrationError::IntegrationError;
};
struct MaxStepsExceeded : IntegrationError {
  using IntegrationError::IntegrationError;
};
struct NonFiniteState : IntegrationError {
  using IntegrationError::IntegrationError;
};

// Right-hand side: dy = f(tau, y).
using Field = std::function<void(double, std::span<const double>, std::span<double>)>;

enum class EventDirection { rising, falling, any };

// A scalar event function of the state, assumed continuous along
// trajectories.  A hit is a strict sign change across an accepted step
// (grazing contacts that touch zero without crossing are not hits), located
// on the dense interpolant.
struct EventSpec {
  std::function<double(double, std::span<const double>)> value;
  EventDirection direction = EventDirection::any;
  bool terminal = false;
  double refine_tol = 1e-12;
};

struct EventHit {
  std::size_t event = 0;
  double tau = 0.0;
  std::vector<double> state;
};

// Accepted-step nodes plus the per-step interpolation coefficients of the
// embedded pair, so the solution can be evaluated anywhere in the span.
struct Trajectory {
  std::size_t dim = 0;
  std::vector<double> taus;    // strictly monotone node times
  std::vector<double> states;  // size() * dim, row-major
  std::vector<double> dense;   // 5 * dim interpolation coefficients per step
  std::vector<double> step_h;  // signed full length of each step

  std::size_t size() const { return taus.size(); }
  double tau(std::size_t i) const { return taus[i]; }
  std::span<const double> state(std::size_t i) const {
    return {states.data() + i * dim, dim};
  }
  double tau_begin() const { return taus.front(); }
  double tau_end() const { return taus.back(); }

  // Dense evaluation at any tau inside the integrated span.
  void sample(double tau, std::span<double> out) const;
  std::vector<double> sample(double tau) const;
};

enum class StopReason { span_completed, terminal_event };

struct IntegrationResult {
  Trajectory trajectory;
  std::vector<EventHit> hits;
  StopReason stop = StopReason::span_completed;
  long steps_accepted = 0;
  long steps_rejected = 0;
  long field_evaluations = 0;
};

// Adaptive Dormand-Prince 5(4) with fourth-order dense output.  `span` may
// be negative to integrate backwards.  Terminal events stop the run at the
// refined crossing; the result is deterministic for fixed inputs.
// Throws StepSizeUnderflow, MaxStepsExceeded or NonFiniteState on abnormal
// termination, each reported distinctly.
IntegrationResult integrate(const Field& field, std::span<const double> y0,
                            double tau0, double span,
                            const IntegrationConfig& config,
                            std::span<const EventSpec> events = {});

// Scalar integrands accumulated along the trajectory as extra state
// components with derivative = integrand(tau, state).  The augmented
// components are appended after the state, start at zero and inherit the
// integrator tolerance.  Events and integrands see the full augmented state.
struct QuadratureSpec {
  std::function<double(double, std::span<const double>)> integrand;
};

IntegrationResult integrate_with_quadrature(
    const Field& field, std::span<const double> y0, double tau0, double span,
    const IntegrationConfig& config, std::span<const QuadratureSpec> integrands,
    std::span<const EventSpec> events = {});

}  // namespace logblock
