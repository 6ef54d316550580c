#pragma once

#include <cmath>
#include <stdexcept>

namespace qae {

// Numeric tolerances shared by every operator check. Defaults follow the
// convention herm/psd at 1e-10, ortho/recon at 1e-9; log_floor is far below
// any program weight reachable at desk budgets so clamping never distorts a
// reported complexity.
struct Tolerances {
  double herm_tol = 1e-10;
  double psd_tol = 1e-10;
  double ortho_tol = 1e-9;
  double recon_tol = 1e-9;
  double log_floor = std::ldexp(1.0, -96);  // 2^-96

  void validate() const {
    if (herm_tol <= 0 || psd_tol <= 0 || ortho_tol <= 0 || recon_tol <= 0 ||
        log_floor <= 0 || log_floor >= 1)
      throw std::invalid_argument("Tolerances: all must be positive, log_floor < 1");
  }
};

}  // namespace qae
