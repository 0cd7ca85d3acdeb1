#include "pfid/states.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pfid/error.hpp"
#include "pfid/rng.hpp"

namespace pfid {

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::NotDistribution, "empty distribution");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    double& p = probs_[i];
    if (!std::isfinite(p) || p < -1e-12) {
      throw Error(ErrorCode::NotDistribution, fmt::format("entry {} is {}", i, p));
    }
    if (p < 0.0) p = 0.0;
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotDistribution, fmt::format("entries sum to {:.17g}", total));
  }
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "density matrix");
  const double defect = hermiticity_defect(m);
  if (defect > tol.herm) {
    throw Error(ErrorCode::NotHermitian, fmt::format("max |M - M^dagger| = {:.3e}", defect));
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  HermitianEigenSystem es = hermitian_eig(sym, tol);
  const double lowest = es.eigenvalues[es.eigenvalues.size() - 1];
  if (lowest < -tol.psd) {
    throw Error(ErrorCode::NotPSD, fmt::format("smallest eigenvalue {:.3e}", lowest));
  }
  const double trace = sym.trace().real();
  if (std::abs(trace - 1.0) > tol.trace) {
    throw Error(ErrorCode::TraceNotOne, fmt::format("trace {:.17g}", trace));
  }
  if (lowest < 0.0) {
    es.eigenvalues = es.eigenvalues.cwiseMax(0.0);
    return DensityMatrix(es.eigenvectors * es.eigenvalues.asDiagonal() * es.eigenvectors.adjoint());
  }
  return DensityMatrix(sym);
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 0, Complex(0, -1), Complex(0, 1), 0;
    return s;
  }();
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

DensityMatrix qubit_from_bloch(const BlochVector& u) {
  if (!(u.norm() <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::OutsideBlochBall, fmt::format("|u| = {:.17g}", u.norm()));
  }
  const ComplexMatrix m = 0.5 * (identity(2) + u.x * pauli_x() + u.y * pauli_y() + u.z * pauli_z());
  return validate_density(m);
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Bloch vectors describe qubits only");
  const ComplexMatrix& m = rho.matrix();
  return {(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(), (m * pauli_z()).trace().real()};
}

DensityMatrix maximally_mixed(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "dimension must be positive");
  return validate_density(identity(dim) / static_cast<double>(dim));
}

DensityMatrix random_density_hs(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "dimension must be positive");
  CounterRng rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return validate_density(0.5 * (w + w.adjoint()));
}

ComplexMatrix random_haar_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "dimension must be positive");
  CounterRng rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

ProbabilityDistribution random_distribution(std::size_t size, std::uint64_t seed) {
  if (size == 0) throw Error(ErrorCode::BadParameter, "distribution size must be positive");
  CounterRng rng(seed);
  std::vector<double> weights(size);
  for (double& w : weights) w = -std::log(rng.uniform());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return ProbabilityDistribution(std::move(weights));
}

std::pair<DensityMatrix, DensityMatrix> commuting_pair(const ProbabilityDistribution& p,
                                                       const ProbabilityDistribution& q,
                                                       const ComplexMatrix& u) {
  if (p.size() != q.size() || u.rows() != static_cast<Eigen::Index>(p.size()) || u.cols() != u.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("distributions of length {} and {} with a {}x{} unitary", p.size(), q.size(),
                            u.rows(), u.cols()));
  }
  if (unitarity_defect(u) > 1e-8) throw Error(ErrorCode::NotUnitary, "basis change is not unitary");
  const RealVector pv = Eigen::Map<const RealVector>(p.probs().data(), u.rows());
  const RealVector qv = Eigen::Map<const RealVector>(q.probs().data(), u.rows());
  const ComplexMatrix rho = u * pv.cast<Complex>().asDiagonal() * u.adjoint();
  const ComplexMatrix omega = u * qv.cast<Complex>().asDiagonal() * u.adjoint();
  return {validate_density(rho), validate_density(omega)};
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t) {
  require_same_dim(a, b);
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::BadParameter, "mixing weight outside [0, 1]");
  return validate_density(t * a.matrix() + (1.0 - t) * b.matrix());
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(rho.dim()) || u.cols() != u.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary and state differ in dimension");
  }
  return validate_density(u * rho.matrix() * u.adjoint());
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("states of dimension {} and {}", a.dim(), b.dim()));
  }
}

}  // namespace pfid
