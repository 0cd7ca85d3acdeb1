#pragma once

// Partial fidelities.
//
// F_k(rho, omega) is the sum of the (d - k) smallest singular values of
// sqrt(rho) sqrt(omega), for k = 0..d. F_0 is the usual fidelity and F_d = 0.
// The classical counterpart sums the (r - k) smallest values sqrt(p_i q_i).

#include <cstddef>
#include <vector>

#include "pfid/linalg.hpp"
#include "pfid/states.hpp"

namespace pfid {

struct FidelityProfile {
  std::vector<double> values;        // k = 0..d; values[d] == 0
  SingularSpectrum overlap_spectrum; // singular values of sqrt(rho) sqrt(omega)

  double at(std::size_t k) const { return values.at(k); }
};

struct HeadTailSums {
  double head;  // A_k: the first k entries
  double tail;  // B_k: the remaining r - k entries
  std::size_t k;
  std::size_t r;
};

/// Singular values of sqrt(rho) sqrt(omega), taken as square roots of the
/// eigenvalues of sqrt(rho) omega sqrt(rho).
SingularSpectrum overlap_spectrum(const DensityMatrix& rho, const DensityMatrix& omega,
                                  const Tolerances& tol = {});

double partial_fidelity(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                        const Tolerances& tol = {});

double fidelity(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

FidelityProfile fidelity_profile(const DensityMatrix& rho, const DensityMatrix& omega,
                                 const Tolerances& tol = {});

/// sqrt(p_i q_i), sorted decreasing with ties kept in index order.
RealVector classical_overlaps(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

double classical_partial_fidelity(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                                  std::size_t k);

/// Entries k = 0..r.
std::vector<double> classical_fidelity_profile(const ProbabilityDistribution& p,
                                               const ProbabilityDistribution& q);

/// (1/2)(tr rho P + tr omega P) for a projector P. This bounds F_k from
/// above whenever rank(P) = d - k.
double variational_upper_bound(const DensityMatrix& rho, const DensityMatrix& omega, const ComplexMatrix& p,
                               const Tolerances& tol = {});

/// Head and tail sums of a nonnegative, decreasing sequence. Empty sums are 0.
HeadTailSums head_tail_sums(const std::vector<double>& a, std::size_t k);

}  // namespace pfid
