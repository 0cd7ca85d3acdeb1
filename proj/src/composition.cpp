#include "pfid/composition.hpp"

#include <fmt/format.h>

#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"

namespace pfid {

DensityMatrix tensor_states(const DensityMatrix& rho_a, const DensityMatrix& rho_e) {
  return validate_density(tensor_product(rho_a.matrix(), rho_e.matrix()));
}

double sqrt_factorization_residual(const DensityMatrix& rho, const DensityMatrix& theta, const Tolerances& tol) {
  const ComplexMatrix joint = psd_sqrt(tensor_product(rho.matrix(), theta.matrix()), tol);
  const ComplexMatrix factored = tensor_product(psd_sqrt(rho.matrix(), tol), psd_sqrt(theta.matrix(), tol));
  return max_abs(joint - factored);
}

Comparison multiplicativity_check(const DensityMatrix& rho, const DensityMatrix& omega, const DensityMatrix& theta,
                                  const DensityMatrix& big_omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  require_same_dim(theta, big_omega);
  return {fidelity(tensor_states(rho, theta), tensor_states(omega, big_omega), tol),
          fidelity(rho, omega, tol) * fidelity(theta, big_omega, tol)};
}

Comparison submultiplicativity_check(const DensityMatrix& rho, const DensityMatrix& omega,
                                     const DensityMatrix& theta, const DensityMatrix& big_omega, std::size_t k,
                                     std::size_t l, const Tolerances& tol) {
  require_same_dim(rho, omega);
  require_same_dim(theta, big_omega);
  const std::size_t d = rho.dim();
  const std::size_t n = theta.dim();
  if (k > d || l > n) {
    throw Error(ErrorCode::BadIndex, fmt::format("(k, L) = ({}, {}) outside [0, {}] x [0, {}]", k, l, d, n));
  }
  const double lhs = partial_fidelity(tensor_states(rho, theta), tensor_states(omega, big_omega), d * n - k * l, tol);
  const double rhs = partial_fidelity(rho, omega, d - k, tol) * partial_fidelity(theta, big_omega, n - l, tol);
  return {lhs, rhs};
}

}  // namespace pfid
