#include "pfid/fidelity.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pfid/error.hpp"

namespace pfid {

namespace {

void require_index(std::size_t k, std::size_t upper, const char* what) {
  if (k > upper) throw Error(ErrorCode::BadIndex, fmt::format("{} index {} outside [0, {}]", what, k, upper));
}

void require_same_length(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("distributions of length {} and {}", p.size(), q.size()));
  }
}

std::vector<double> profile_from_sorted(const RealVector& sorted_desc) {
  const auto n = static_cast<std::size_t>(sorted_desc.size());
  std::vector<double> values(n + 1, 0.0);
  // Accumulate from the smallest entry upwards.
  for (std::size_t k = n; k-- > 0;) values[k] = values[k + 1] + sorted_desc[static_cast<Eigen::Index>(k)];
  return values;
}

}  // namespace

SingularSpectrum overlap_spectrum(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  return psd_product_singular_values(psd_sqrt(rho.matrix(), tol), omega.matrix(), tol);
}

double partial_fidelity(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                        const Tolerances& tol) {
  require_same_dim(rho, omega);
  require_index(k, rho.dim(), "partial fidelity");
  return tail_sum(overlap_spectrum(rho, omega, tol).values, k);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  return partial_fidelity(rho, omega, 0, tol);
}

FidelityProfile fidelity_profile(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  SingularSpectrum spectrum = overlap_spectrum(rho, omega, tol);
  std::vector<double> values = profile_from_sorted(spectrum.values);
  return {std::move(values), std::move(spectrum)};
}

RealVector classical_overlaps(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  require_same_length(p, q);
  std::vector<double> roots(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) roots[i] = std::sqrt(p[i] * q[i]);
  return sorted_decreasing(roots);
}

double classical_partial_fidelity(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                                  std::size_t k) {
  require_same_length(p, q);
  require_index(k, p.size(), "classical partial fidelity");
  return tail_sum(classical_overlaps(p, q), k);
}

std::vector<double> classical_fidelity_profile(const ProbabilityDistribution& p,
                                               const ProbabilityDistribution& q) {
  return profile_from_sorted(classical_overlaps(p, q));
}

double variational_upper_bound(const DensityMatrix& rho, const DensityMatrix& omega, const ComplexMatrix& p,
                               const Tolerances& tol) {
  require_same_dim(rho, omega);
  if (p.rows() != static_cast<Eigen::Index>(rho.dim()) || p.cols() != p.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "projector and states differ in dimension");
  }
  const double idempotency = relative_residual(p * p, p);
  const double hermiticity = relative_residual(p.adjoint(), p);
  if (idempotency > tol.rec || hermiticity > tol.rec) {
    throw Error(ErrorCode::NotProjector,
                fmt::format("|P^2 - P| = {:.3e}, |P^dagger - P| = {:.3e}", idempotency, hermiticity));
  }
  return 0.5 * ((rho.matrix() * p).trace().real() + (omega.matrix() * p).trace().real());
}

HeadTailSums head_tail_sums(const std::vector<double>& a, std::size_t k) {
  require_index(k, a.size(), "head/tail split");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0)) throw Error(ErrorCode::NotPositive, fmt::format("entry {} is {}", i, a[i]));
    if (i > 0 && a[i] > a[i - 1]) throw Error(ErrorCode::NotSorted, fmt::format("entry {} exceeds its predecessor", i));
  }
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < k; ++i) head += a[i];
  for (std::size_t i = a.size(); i-- > k;) tail += a[i];
  return {head, tail, k, a.size()};
}

}  // namespace pfid
