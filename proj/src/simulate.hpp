#pragma once

#include <string>
#include <vector>

#include "integrate.hpp"

namespace logblock {

enum class Chart { cartesian, polar, regularized };

struct SimTable {
  std::vector<std::string> columns;
  std::vector<double> values;  // rows x columns, row-major
  std::size_t rows = 0;

  std::size_t cols() const { return columns.size(); }
  double value(std::size_t row, std::size_t col) const {
    return values[row * columns.size() + col];
  }
};

// Integrates the chart's flow over `span` and tabulates the accepted steps.
// Columns: the flow parameter, the four state components, the energy and
// momentum residuals relative to the initial values, and for the
// regularized chart the accumulated physical time (NaN on r = 0, where the
// reparametrization is singular).  Regularized runs measure the energy
// residual against the level h; a NaN w is completed from the energy
// relation, and an explicit w must be consistent with h to 1e-9.
SimTable run_simulation(Chart chart, const double state[4], double h,
                        double span, const IntegrationConfig& config);

}  // namespace logblock
