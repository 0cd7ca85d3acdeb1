#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pfid/linalg.hpp"

namespace pfid {

/// A validated density matrix: Hermitian, positive semidefinite, unit trace.
///
/// Only constructible through validate_density() and the samplers below, so
/// every instance in circulation satisfies the invariants with the tolerance
/// it was validated against.
class DensityMatrix {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  friend DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol);

  ComplexMatrix matrix_;
};

class ProbabilityDistribution {
 public:
  /// Entries down to -1e-12 are clamped to zero; the sum must be 1 within 1e-9.
  explicit ProbabilityDistribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Re-symmetrises to (M + M^dagger)/2 and clamps eigenvalues in [-tol.psd, 0).
/// Throws NotHermitian, NotPSD or TraceNotOne.
DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol = {});

/// (1/2)(1 + u.sigma)
DensityMatrix qubit_from_bloch(const BlochVector& u);

BlochVector bloch_of(const DensityMatrix& rho);

DensityMatrix maximally_mixed(std::size_t dim);

/// Hilbert-Schmidt ensemble: G G^dagger / tr(G G^dagger), G Ginibre.
DensityMatrix random_density_hs(std::size_t dim, std::uint64_t seed);

/// Haar unitary from the QR decomposition of a Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
ComplexMatrix random_haar_unitary(std::size_t dim, std::uint64_t seed);

/// Uniform (flat Dirichlet) distribution on the probability simplex.
ProbabilityDistribution random_distribution(std::size_t size, std::uint64_t seed);

/// (U diag(p) U^dagger, U diag(q) U^dagger)
std::pair<DensityMatrix, DensityMatrix> commuting_pair(const ProbabilityDistribution& p,
                                                       const ProbabilityDistribution& q,
                                                       const ComplexMatrix& u);

/// t a + (1 - t) b
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t);

/// U rho U^dagger
DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u);

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

}  // namespace pfid
