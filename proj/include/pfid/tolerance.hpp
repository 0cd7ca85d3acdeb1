#pragma once

namespace pfid {

/// Numerical slack used by validation and decomposition routines.
///
/// One instance is threaded explicitly through every routine that needs a
/// threshold; there is no global tolerance state.
struct Tolerances {
  double herm = 1e-8;  ///< max |M - M^dagger| entry accepted as Hermitian
  double psd = 1e-8;   ///< eigenvalues in [-psd, 0) are clamped to zero
  double rec = 1e-9;   ///< relative Frobenius residual for reconstructions
  double inv = 1e-8;   ///< smallest eigenvalue treated as invertible
  double trace = 1e-9; ///< |tr(rho) - 1| accepted for density matrices

  Tolerances scaled(double factor) const {
    return {herm * factor, psd * factor, rec * factor, inv * factor, trace * factor};
  }
};

}  // namespace pfid
