#include "pfid/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pfid/error.hpp"

namespace pfid {

namespace {

std::vector<double> half_ky_fan_profile(const RealVector& sorted_desc) {
  std::vector<double> values(static_cast<std::size_t>(sorted_desc.size()) + 1, 0.0);
  for (Eigen::Index k = 0; k < sorted_desc.size(); ++k) {
    values[static_cast<std::size_t>(k) + 1] = values[static_cast<std::size_t>(k)] + 0.5 * sorted_desc[k];
  }
  return values;
}

RealVector sorted_abs_differences(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("distributions of length {} and {}", p.size(), q.size()));
  }
  std::vector<double> diffs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) diffs[i] = std::abs(p[i] - q[i]);
  return sorted_decreasing(diffs);
}

}  // namespace

double partitioned_trace_distance(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                  const Tolerances& tol) {
  require_same_dim(rho, omega);
  if (k < 1 || k > rho.dim()) {
    throw Error(ErrorCode::BadIndex, fmt::format("distance index {} outside [1, {}]", k, rho.dim()));
  }
  // rho - omega is Hermitian, so its singular values are |eigenvalues|.
  return 0.5 * head_sum(hermitian_singular_values(rho.matrix() - omega.matrix(), tol).values, k);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  return partitioned_trace_distance(rho, omega, rho.dim(), tol);
}

DistanceProfile distance_profile(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  return {half_ky_fan_profile(hermitian_singular_values(rho.matrix() - omega.matrix(), tol).values)};
}

double classical_partitioned_distance(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                                      std::size_t k) {
  const RealVector diffs = sorted_abs_differences(p, q);
  if (k < 1 || k > p.size()) {
    throw Error(ErrorCode::BadIndex, fmt::format("distance index {} outside [1, {}]", k, p.size()));
  }
  return 0.5 * head_sum(diffs, k);
}

std::vector<double> classical_distance_profile(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  return half_ky_fan_profile(sorted_abs_differences(p, q));
}

Povm jordan_optimal_pvm(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  const HermitianEigenSystem es = hermitian_eig(rho.matrix() - omega.matrix(), tol);
  return pvm_from_unitary(es.eigenvectors, tol);
}

ComplexMatrix jordan_tail_projector(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                    const Tolerances& tol) {
  require_same_dim(rho, omega);
  if (k > rho.dim()) throw Error(ErrorCode::BadIndex, fmt::format("index {} outside [0, {}]", k, rho.dim()));
  const Povm pvm = jordan_optimal_pvm(rho, omega, tol);
  const ProbabilityDistribution p = induced_distribution(pvm, rho);
  const ProbabilityDistribution q = induced_distribution(pvm, omega);
  std::vector<std::size_t> order(pvm.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(p[a] - q[a]) > std::abs(p[b] - q[b]);
  });
  ComplexMatrix projector = ComplexMatrix::Zero(static_cast<Eigen::Index>(rho.dim()), static_cast<Eigen::Index>(rho.dim()));
  for (std::size_t i = k; i < order.size(); ++i) projector += pvm[order[i]];
  return projector;
}

}  // namespace pfid
