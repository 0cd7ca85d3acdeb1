#include "pfid/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"
#include "pfid/rng.hpp"

namespace pfid {

Povm::Povm(std::vector<ComplexMatrix> elements, const Tolerances& tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::NotPovm, "a POVM needs at least one element");
  dim_ = static_cast<std::size_t>(elements_.front().rows());
  ComplexMatrix total = ComplexMatrix::Zero(elements_.front().rows(), elements_.front().rows());
  for (std::size_t m = 0; m < elements_.size(); ++m) {
    ComplexMatrix& e = elements_[m];
    require_square(e, "POVM element");
    if (static_cast<std::size_t>(e.rows()) != dim_) {
      throw Error(ErrorCode::DimensionMismatch, fmt::format("POVM element {} has dimension {}", m, e.rows()));
    }
    const HermitianEigenSystem es = hermitian_eig(e, tol);
    const double lowest = es.eigenvalues[es.eigenvalues.size() - 1];
    if (lowest < -tol.psd) {
      throw Error(ErrorCode::NotPSD, fmt::format("POVM element {} has eigenvalue {:.3e}", m, lowest));
    }
    e = 0.5 * (e + e.adjoint());
    traces_.push_back(e.trace().real());
    total += e;
  }
  const double residual = max_abs(total - identity(dim_));
  if (residual > 1e-8) {
    throw Error(ErrorCode::NotPovm, fmt::format("completeness residual {:.3e}", residual));
  }

  projective_ = true;
  for (std::size_t m = 0; m < elements_.size() && projective_; ++m) {
    const ComplexMatrix& e = elements_[m];
    if (relative_residual(e * e, e) > tol.rec) projective_ = false;
    for (std::size_t n = m + 1; n < elements_.size() && projective_; ++n) {
      if ((e * elements_[n]).norm() > tol.rec) projective_ = false;
    }
  }
}

double Povm::completeness_residual() const {
  ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& e : elements_) total += e;
  return max_abs(total - identity(dim_));
}

ProbabilityDistribution induced_distribution(const Povm& povm, const DensityMatrix& rho) {
  if (povm.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("POVM on dimension {} applied to a state of dimension {}", povm.dim(), rho.dim()));
  }
  std::vector<double> probs(povm.size());
  for (std::size_t m = 0; m < povm.size(); ++m) {
    const double p = (povm[m] * rho.matrix()).trace().real();
    probs[m] = p < 0.0 && p >= -1e-12 ? 0.0 : p;
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (total > 0.0) {
    for (double& p : probs) p /= total;
  }
  return ProbabilityDistribution(std::move(probs));
}

Povm pvm_from_unitary(const ComplexMatrix& u, const Tolerances& tol) {
  require_square(u, "unitary");
  const double defect = unitarity_defect(u);
  if (defect > 1e-8) throw Error(ErrorCode::NotUnitary, fmt::format("max |U^dagger U - 1| = {:.3e}", defect));
  std::vector<ComplexMatrix> elements;
  elements.reserve(static_cast<std::size_t>(u.cols()));
  for (Eigen::Index m = 0; m < u.cols(); ++m) elements.emplace_back(u.col(m) * u.col(m).adjoint());
  return Povm(std::move(elements), tol);
}

Povm random_povm(std::size_t dim, std::size_t n, std::uint64_t seed) {
  if (dim == 0 || n == 0) throw Error(ErrorCode::BadParameter, "POVM dimension and size must be positive");
  CounterRng rng(seed);
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t m = 0; m < n; ++m) {
    const ComplexMatrix g = ginibre(dim, rng);
    raw.emplace_back(g * g.adjoint());
    total += raw.back();
  }
  const ComplexMatrix s = psd_inverse_sqrt(0.5 * (total + total.adjoint()));
  std::vector<ComplexMatrix> elements;
  elements.reserve(n);
  for (const auto& a : raw) {
    const ComplexMatrix e = s * a * s;
    elements.emplace_back(0.5 * (e + e.adjoint()));
  }
  return Povm(std::move(elements));
}

OptimalF0Pvm optimal_f0_pvm(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  const ComplexMatrix rho_inv_sqrt = psd_inverse_sqrt(rho.matrix(), tol);
  const ComplexMatrix rho_sqrt = psd_sqrt(rho.matrix(), tol);
  const ComplexMatrix overlap_abs = psd_sqrt(rho_sqrt * omega.matrix() * rho_sqrt, tol);
  ComplexMatrix r = rho_inv_sqrt * overlap_abs * rho_inv_sqrt;
  r = 0.5 * (r + r.adjoint());
  const HermitianEigenSystem es = hermitian_eig(r, tol);
  std::vector<double> lambdas(es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size());
  return {pvm_from_unitary(es.eigenvectors, tol), std::move(lambdas), std::move(r)};
}

double proportionality_residual(const DensityMatrix& rho, const DensityMatrix& omega, const OptimalF0Pvm& opt,
                                const Tolerances& tol) {
  require_same_dim(rho, omega);
  const ComplexMatrix rho_sqrt = psd_sqrt(rho.matrix(), tol);
  const ComplexMatrix omega_sqrt = psd_sqrt(omega.matrix(), tol);
  const ComplexMatrix v = polar_unitary(rho_sqrt * omega_sqrt);
  const ComplexMatrix rhs_base = omega_sqrt * v;
  double worst = 0.0;
  for (std::size_t m = 0; m < opt.pvm.size(); ++m) {
    const ComplexMatrix& p = opt.pvm[m];
    worst = std::max(worst, max_abs(opt.r_eigenvalues[m] * p * rho_sqrt - p * rhs_base));
  }
  return worst;
}

double classical_quantum_gap(const DensityMatrix& rho, const DensityMatrix& omega, const Povm& povm,
                             std::size_t k, const Tolerances& tol) {
  require_same_dim(rho, omega);
  const std::size_t upper = std::min(rho.dim(), povm.size());
  if (k > upper) throw Error(ErrorCode::BadIndex, fmt::format("index {} outside [0, {}]", k, upper));
  const ProbabilityDistribution p = induced_distribution(povm, rho);
  const ProbabilityDistribution q = induced_distribution(povm, omega);
  return classical_partial_fidelity(p, q, k) - partial_fidelity(rho, omega, k, tol);
}

double theorem4_gap(const DensityMatrix& rho, const DensityMatrix& omega, const Povm& povm, std::size_t k,
                    const Tolerances& tol) {
  const auto& traces = povm.element_traces();
  for (std::size_t m = 0; m < traces.size(); ++m) {
    if (traces[m] < 1.0 - 1e-9) {
      throw Error(ErrorCode::PreconditionViolated, fmt::format("element {} has trace {:.17g} < 1", m, traces[m]));
    }
  }
  return classical_quantum_gap(rho, omega, povm, k, tol);
}

SmallTraceResult small_trace_counterexample(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                            double eps, const Tolerances& tol) {
  require_same_dim(rho, omega);
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::BadParameter, "eps must lie in (0, 1]");
  if (k < 1 || k > rho.dim()) throw Error(ErrorCode::BadIndex, fmt::format("index {} outside [1, {}]", k, rho.dim()));
  const std::size_t d = rho.dim();
  std::vector<ComplexMatrix> elements;
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = eps;
    elements.push_back(std::move(e));
  }
  if (eps < 1.0) elements.push_back((1.0 - eps) * identity(d));
  Povm povm(std::move(elements), tol);
  const ProbabilityDistribution p = induced_distribution(povm, rho);
  const ProbabilityDistribution q = induced_distribution(povm, omega);
  return {classical_partial_fidelity(p, q, k), partial_fidelity(rho, omega, k, tol), std::move(povm)};
}

double saturation_commutator(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol) {
  require_same_dim(rho, omega);
  const ComplexMatrix rho_sqrt = psd_sqrt(rho.matrix(), tol);
  const ComplexMatrix overlap_abs = psd_sqrt(rho_sqrt * omega.matrix() * rho_sqrt, tol);
  const ComplexMatrix prod = rho.matrix() * omega.matrix();
  return (prod * overlap_abs - overlap_abs * prod).norm();
}

}  // namespace pfid
