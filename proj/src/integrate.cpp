#include "integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rootfind.hpp"

namespace logblock {

namespace {

// Dormand-Prince 5(4) tableau (FSAL: the seventh stage is the next first).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Difference of the fifth- and fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

// Step-size controller constants (classical PI control).
constexpr double safe = 0.9, beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;
constexpr double facc1 = 1.0 / 0.2;  // max step growth per step
constexpr double facc2 = 1.0 / 10.0; // max step shrink per step
constexpr double uround = std::numeric_limits<double>::epsilon();

void dense_eval(std::span<const double> cont, std::size_t dim, double theta,
                std::span<double> out) {
  const double theta1 = 1.0 - theta;
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = cont[i] +
             theta * (cont[dim + i] +
                      theta1 * (cont[2 * dim + i] +
                                theta * (cont[3 * dim + i] +
                                         theta1 * cont[4 * dim + i])));
  }
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool crossed(double g0, double g1, EventDirection dir) {
  switch (dir) {
    case EventDirection::rising: return g0 < 0.0 && g1 > 0.0;
    case EventDirection::falling: return g0 > 0.0 && g1 < 0.0;
    case EventDirection::any: return (g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0);
  }
  return false;
}

struct Dopri5 {
  const Field& field;
  const std::size_t n;
  long evals = 0;
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, cont;

  Dopri5(const Field& f, std::size_t dim)
      : field(f), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
        k7(dim), ytmp(dim), ynew(dim), cont(5 * dim) {}

  void eval(double t, std::span<const double> y, std::span<double> dy) {
    field(t, y, dy);
    ++evals;
  }

  // One trial step from (t, y) with k1 = f(t, y) already loaded.
  // Returns the scaled error estimate; ynew holds the fifth-order result and
  // cont the dense coefficients.
  double attempt(double t, std::span<const double> y, double h,
                 double rel_tol, double abs_tol) {
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    eval(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                            a75 * k5[i] + a76 * k6[i]);
    eval(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = abs_tol + rel_tol * std::fmax(std::fabs(y[i]), std::fabs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    return std::sqrt(err / static_cast<double>(n));
  }

  void build_dense(std::span<const double> y, double h) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      cont[i] = y[i];
      cont[n + i] = ydiff;
      cont[2 * n + i] = bspl;
      cont[3 * n + i] = ydiff - h * k7[i] - bspl;
      cont[4 * n + i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
  }

  // Automatic initial step size (Hairer's hinit).
  double initial_step(double t, std::span<const double> y, double dir,
                      double span, double rel_tol, double abs_tol,
                      double hmax) {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = abs_tol + rel_tol * std::fabs(y[i]);
      dnf += (k1[i] / sc) * (k1[i] / sc);
      dny += (y[i] / sc) * (y[i] / sc);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::fmin(h, hmax);

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dir * h * k1[i];
    eval(t + dir * h, ytmp, k2);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = abs_tol + rel_tol * std::fabs(y[i]);
      der2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::fmax(std::fabs(der2), std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15)
                          ? std::fmax(1e-6, h * 1e-3)
                          : std::pow(0.01 / der12, 0.2);
    h = std::fmin(std::fmin(100.0 * h, h1), hmax);
    h = std::fmin(h, std::fabs(span));
    return dir * h;
  }
};

}  // namespace

void IntegrationConfig::validate() const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-3 || !(abs_tol > 0.0) || abs_tol > 1e-3)
    throw std::invalid_argument("tolerances must lie in (0, 1e-3]");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  if (initial_step < 0.0 || max_step < 0.0)
    throw std::invalid_argument("step bounds must be non-negative");
}

void Trajectory::sample(double tau_at, std::span<double> out) const {
  if (size() < 2) {
    if (size() == 1 && tau_at == taus[0]) {
      auto s = state(0);
      std::copy(s.begin(), s.end(), out.begin());
      return;
    }
    throw std::out_of_range("trajectory has no integrated span");
  }
  const bool fwd = taus.back() >= taus.front();
  const double lo = fwd ? taus.front() : taus.back();
  const double hi = fwd ? taus.back() : taus.front();
  const double slack = 4.0 * uround * std::fmax(std::fabs(lo), std::fabs(hi));
  if (tau_at < lo - slack || tau_at > hi + slack)
    throw std::out_of_range("sample time outside the integrated span");

  // locate the step whose node interval contains tau_at
  std::size_t j;
  if (fwd) {
    j = std::upper_bound(taus.begin(), taus.end(), tau_at) - taus.begin();
  } else {
    j = std::upper_bound(taus.begin(), taus.end(), tau_at,
                         [](double a, double b) { return a > b; }) -
        taus.begin();
  }
  j = (j == 0) ? 0 : j - 1;
  j = std::min(j, size() - 2);

  const double theta = (tau_at - taus[j]) / step_h[j];
  dense_eval({dense.data() + j * 5 * dim, 5 * dim}, dim, theta, out);
}

std::vector<double> Trajectory::sample(double tau_at) const {
  std::vector<double> out(dim);
  sample(tau_at, out);
  return out;
}

IntegrationResult integrate(const Field& field, std::span<const double> y0,
                            double tau0, double span,
                            const IntegrationConfig& config,
                            std::span<const EventSpec> events) {
  config.validate();
  const std::size_t n = y0.size();
  if (n == 0) throw std::invalid_argument("empty state");
  if (!all_finite(y0)) throw std::invalid_argument("non-finite initial state");

  IntegrationResult result;
  Trajectory& traj = result.trajectory;
  traj.dim = n;
  traj.taus.push_back(tau0);
  traj.states.insert(traj.states.end(), y0.begin(), y0.end());
  if (span == 0.0) return result;

  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double tau_end = tau0 + span;
  const double hmax = config.max_step > 0.0 ? config.max_step : std::fabs(span);

  Dopri5 st(field, n);
  std::vector<double> y(y0.begin(), y0.end());
  double tau = tau0;

  st.eval(tau, y, st.k1);
  if (!all_finite(st.k1)) throw NonFiniteState("field not finite at initial state");

  double h = config.initial_step > 0.0
                 ? dir * std::fmin(config.initial_step, std::fmin(hmax, std::fabs(span)))
                 : st.initial_step(tau, y, dir, span, config.rel_tol,
                                   config.abs_tol, hmax);

  std::vector<double> g_prev(events.size()), g_new(events.size());
  std::vector<double> hit_state(n);
  for (std::size_t i = 0; i < events.size(); ++i) g_prev[i] = events[i].value(tau, y);

  double facold = 1e-4;
  bool last = false;
  while (true) {
    if (result.steps_accepted + result.steps_rejected >= config.max_steps)
      throw MaxStepsExceeded("step budget exhausted before the requested span");
    if (0.1 * std::fabs(h) <= std::fabs(tau) * uround)
      throw StepSizeUnderflow("step size underflow");

    if ((tau + 1.01 * h - tau_end) * dir > 0.0) {
      h = tau_end - tau;
      last = true;
    }

    const double err = st.attempt(tau, y, h, config.rel_tol, config.abs_tol);

    if (!std::isfinite(err)) {
      ++result.steps_rejected;
      last = false;
      h *= 0.5;
      continue;
    }

    const double fac11 = std::pow(err, expo1);
    if (err > 1.0) {
      ++result.steps_rejected;
      last = false;
      h /= std::fmin(facc1, fac11 / safe);
      continue;
    }

    // accepted; size the next step against the previous accepted error
    ++result.steps_accepted;
    if (!all_finite(st.ynew))
      throw NonFiniteState("non-finite state encountered");
    double fac = fac11 / std::pow(facold, beta);
    fac = std::fmax(facc2, std::fmin(facc1, fac / safe));
    const double h_next = h / fac;
    facold = std::fmax(err, 1e-4);
    st.build_dense(y, h);
    const double tau_next = last ? tau_end : tau + h;

    // event detection on this step
    double theta_stop = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::size_t>> step_hits;  // (theta, event)
    for (std::size_t i = 0; i < events.size(); ++i) {
      g_new[i] = events[i].value(tau_next, st.ynew);
      if (!crossed(g_prev[i], g_new[i], events[i].direction)) continue;
      auto g_of_theta = [&](double theta) {
        dense_eval(st.cont, n, theta, hit_state);
        return events[i].value(tau + theta * h, hit_state);
      };
      const double theta_hit = find_root(g_of_theta, 0.0, 1.0, 4.0 * uround,
                                         4.0 * uround).x;
      step_hits.emplace_back(theta_hit, i);
      if (events[i].terminal && theta_hit < theta_stop) theta_stop = theta_hit;
    }
    std::sort(step_hits.begin(), step_hits.end());
    for (auto [theta_hit, i] : step_hits) {
      if (theta_hit > theta_stop) break;  // past the terminal crossing
      dense_eval(st.cont, n, theta_hit, hit_state);
      result.hits.push_back({i, tau + theta_hit * h, hit_state});
    }

    if (theta_stop < std::numeric_limits<double>::infinity()) {
      // stop at the terminal crossing; keep the full-step dense coefficients
      dense_eval(st.cont, n, theta_stop, hit_state);
      traj.dense.insert(traj.dense.end(), st.cont.begin(), st.cont.end());
      traj.step_h.push_back(h);
      traj.taus.push_back(tau + theta_stop * h);
      traj.states.insert(traj.states.end(), hit_state.begin(), hit_state.end());
      result.stop = StopReason::terminal_event;
      return result;
    }

    traj.dense.insert(traj.dense.end(), st.cont.begin(), st.cont.end());
    traj.step_h.push_back(h);
    traj.taus.push_back(tau_next);
    traj.states.insert(traj.states.end(), st.ynew.begin(), st.ynew.end());

    std::swap(g_prev, g_new);
    std::copy(st.ynew.begin(), st.ynew.end(), y.begin());
    std::swap(st.k1, st.k7);  // FSAL
    tau = tau_next;
    if (last) {
      result.stop = StopReason::span_completed;
      return result;
    }

    h = std::fabs(h_next) > hmax ? dir * hmax : h_next;
  }
}

IntegrationResult integrate_with_quadrature(
    const Field& field, std::span<const double> y0, double tau0, double span,
    const IntegrationConfig& config, std::span<const QuadratureSpec> integrands,
    std::span<const EventSpec> events) {
  const std::size_t n = y0.size();
  const std::size_t m = integrands.size();
  std::vector<double> aug(y0.begin(), y0.end());
  aug.resize(n + m, 0.0);

  Field augmented = [&field, integrands, n, m](double t, std::span<const double> y,
                                               std::span<double> dy) {
    field(t, y.first(n), dy.first(n));
    for (std::size_t j = 0; j < m; ++j) dy[n + j] = integrands[j].integrand(t, y);
  };
  return integrate(augmented, aug, tau0, span, config, events);
}

}  // namespace logblock
