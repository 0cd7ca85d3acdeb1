#pragma once

// Tensor-product laws for partial fidelities. The index bookkeeping of the
// sub-multiplicativity bound lives here and nowhere else: for states on
// spaces of dimension d and N,
//
//   F_{dN - kL}(rho (x) theta, omega (x) Omega) <= F_{d-k}(rho, omega) F_{N-L}(theta, Omega)
//
// for 0 <= k <= d and 0 <= L <= N.

#include <cstddef>

#include "pfid/states.hpp"

namespace pfid {

DensityMatrix tensor_states(const DensityMatrix& rho_a, const DensityMatrix& rho_e);

/// max entry of sqrt(rho (x) theta) - sqrt(rho) (x) sqrt(theta)
double sqrt_factorization_residual(const DensityMatrix& rho, const DensityMatrix& theta, const Tolerances& tol = {});

struct Comparison {
  double lhs;
  double rhs;
};

/// lhs = F_0(rho (x) theta, omega (x) Omega), rhs = F_0(rho, omega) F_0(theta, Omega).
Comparison multiplicativity_check(const DensityMatrix& rho, const DensityMatrix& omega, const DensityMatrix& theta,
                                  const DensityMatrix& big_omega, const Tolerances& tol = {});

/// lhs = F_{dN-kL} of the tensor pair, rhs = F_{d-k}(rho, omega) F_{N-L}(theta, Omega).
Comparison submultiplicativity_check(const DensityMatrix& rho, const DensityMatrix& omega,
                                     const DensityMatrix& theta, const DensityMatrix& big_omega, std::size_t k,
                                     std::size_t l, const Tolerances& tol = {});

}  // namespace pfid
