#pragma once

#include <stdexcept>

namespace logblock {

// Energy level below the admissible floor, or a radius outside the region the
// energy level allows.
struct infeasible_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace logblock
