#include "simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "dynamics.hpp"
#include "regularization.hpp"

namespace logblock {

namespace {

constexpr double qnan = std::numeric_limits<double>::quiet_NaN();

SimTable tabulate_plain(const Trajectory& traj,
                        std::vector<std::string> columns, double res0_h,
                        double res0_c,
                        double (*energy)(std::span<const double>),
                        double (*momentum)(std::span<const double>)) {
  SimTable table;
  table.columns = std::move(columns);
  table.rows = traj.size();
  table.values.reserve(table.rows * table.cols());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto y = traj.state(i);
    table.values.push_back(traj.tau(i));
    for (std::size_t j = 0; j < 4; ++j) table.values.push_back(y[j]);
    table.values.push_back(energy(y) - res0_h);
    table.values.push_back(momentum(y) - res0_c);
  }
  return table;
}

double cart_energy(std::span<const double> y) {
  return hamiltonian_cartesian({{y[0], y[1]}, {y[2], y[3]}});
}
double cart_momentum(std::span<const double> y) {
  return y[0] * y[3] - y[1] * y[2];
}
double polar_energy(std::span<const double> y) {
  return reduced_hamiltonian(y[0], y[2], y[3]);
}
double polar_momentum(std::span<const double> y) { return y[3]; }

}  // namespace

SimTable run_simulation(Chart chart, const double state[4], double h,
                        double span, const IntegrationConfig& config) {
  switch (chart) {
    case Chart::cartesian: {
      const Field field = [](double, std::span<const double> y,
                             std::span<double> dy) { cartesian_field_eval(y, dy); };
      const auto res = integrate(field, {state, 4}, 0.0, span, config);
      return tabulate_plain(
          res.trajectory,
          {"t", "qx", "qy", "px", "py", "energy_residual", "momentum_residual"},
          cart_energy({state, 4}), cart_momentum({state, 4}), cart_energy,
          cart_momentum);
    }
    case Chart::polar: {
      if (!(state[0] > 0.0)) throw std::domain_error("polar chart requires r > 0");
      const Field field = [](double, std::span<const double> y,
                             std::span<double> dy) {
        const double r = y[0];
        dy[0] = y[2];
        dy[1] = y[3] / (r * r);
        dy[2] = y[3] * y[3] / (r * r * r) - 1.0 / r;
        dy[3] = 0.0;
      };
      const auto res = integrate(field, {state, 4}, 0.0, span, config);
      return tabulate_plain(res.trajectory,
                            {"t", "r", "theta", "p_r", "p_theta",
                             "energy_residual", "momentum_residual"},
                            polar_energy({state, 4}), state[3], polar_energy,
                            polar_momentum);
    }
    case Chart::regularized: {
      double y0[4] = {state[0], state[1], state[2], state[3]};
      if (y0[0] < 0.0) throw std::domain_error("regularized chart requires r >= 0");
      if (std::isnan(y0[3])) {
        if (std::isnan(h))
          throw std::invalid_argument("regularized runs need h when w is omitted");
        y0[3] = w_from_energy(y0[0], h);
      } else if (std::isnan(h)) {
        // recover the level from the state; on r = 0 every level is
        // consistent, pick 0 for the residual column
        h = y0[0] > 0.0 ? (0.5 * std::exp(2.0 * y0[3]) + f_ext(y0[0]) - 1.0) /
                              (y0[0] * y0[0])
                        : 0.0;
      } else {
        const double res = extended_energy_residual({y0[0], y0[1], y0[2], y0[3]}, h);
        if (std::fabs(res) > 1e-9)
          throw std::invalid_argument(
              "initial state violates the energy relation for the given h");
      }

      const Field field = [](double, std::span<const double> y,
                             std::span<double> dy) { reg_field_eval(y, dy); };
      const QuadratureSpec phys_time{[](double, std::span<const double> y) {
        return phys_time_rate({y[0], y[1], y[2], y[3]});
      }};
      const auto res =
          integrate_with_quadrature(field, y0, 0.0, span, config, {&phys_time, 1});

      const double c0 = extended_momentum({y0[0], y0[1], y0[2], y0[3]});
      SimTable table;
      table.columns = {"tau", "r", "phi", "psi", "w", "energy_residual",
                       "momentum_residual", "t_phys"};
      const Trajectory& traj = res.trajectory;
      table.rows = traj.size();
      table.values.reserve(table.rows * table.cols());
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto y = traj.state(i);
        const RegState s{y[0], y[1], y[2], y[3]};
        table.values.push_back(traj.tau(i));
        for (std::size_t j = 0; j < 4; ++j) table.values.push_back(y[j]);
        table.values.push_back(extended_energy_residual(s, h));
        table.values.push_back(extended_momentum(s) - c0);
        table.values.push_back(y[0] == 0.0 ? qnan : y[4]);
      }
      return table;
    }
  }
  throw std::invalid_argument("unknown chart");
}

}  // namespace logblock
