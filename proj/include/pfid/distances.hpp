#pragma once

// Partitioned trace distances D_k = (1/2) ||rho - omega||_(k), k = 1..d, and
// their classical counterparts. D_d is the trace distance. Profiles carry an
// extra leading entry D_0 := 0 so they line up index-for-index with fidelity
// profiles.

#include <cstddef>
#include <vector>

#include "pfid/measurement.hpp"
#include "pfid/states.hpp"

namespace pfid {

struct DistanceProfile {
  std::vector<double> values;  // k = 0..d, values[0] == 0

  double at(std::size_t k) const { return values.at(k); }
};

double partitioned_trace_distance(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                  const Tolerances& tol = {});

double trace_distance(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

DistanceProfile distance_profile(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

/// Half the sum of the k largest |p_i - q_i|, 1 <= k <= r.
double classical_partitioned_distance(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                                      std::size_t k);

/// Entries k = 0..r with entry 0 fixed at 0.
std::vector<double> classical_distance_profile(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

/// Rank-one PVM on the eigenvectors of rho - omega. It attains the maximum
/// of the classical D_k over POVMs with element traces <= 1, for every k.
Povm jordan_optimal_pvm(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

/// Projector of rank d - k built from the Jordan PVM: the sum of its
/// elements ranked after the k largest |p_m - q_m|.
ComplexMatrix jordan_tail_projector(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                    const Tolerances& tol = {});

}  // namespace pfid
