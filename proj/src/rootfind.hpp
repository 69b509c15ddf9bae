#pragma once

#include <functional>

namespace logblock {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Bracketed scalar root finding: bisection interleaved with secant and
// inverse-quadratic steps (Brent's scheme).  Requires f(a) and f(b) of
// opposite sign, or an exact zero at an endpoint.  Converges to
// |interval| <= abs_tol + rel_tol * |x|.  Throws std::invalid_argument on an
// invalid bracket and std::runtime_error if max_iter is exhausted.
RootResult find_root(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 0.0,
                     int max_iter = 200);

}  // namespace logblock
