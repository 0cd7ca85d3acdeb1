#include "pfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "pfid/error.hpp"

namespace pfid {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Eigen returns ascending eigenvalues; flip to the library's decreasing order.
HermitianEigenSystem eig_unchecked(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConsistencyFailure, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = sym.rows();
  HermitianEigenSystem out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues[j] = solver.eigenvalues()[n - 1 - j];
    out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  return out;
}

ComplexMatrix spectral_function(const HermitianEigenSystem& es, const RealVector& f) {
  return es.eigenvectors * f.asDiagonal() * es.eigenvectors.adjoint();
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotPovm: return "NotPovm";
    case ErrorCode::NotDistribution: return "NotDistribution";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::OutsideBlochBall: return "OutsideBlochBall";
    case ErrorCode::SingularRho: return "SingularRho";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

ComplexMatrix identity(std::size_t dim) { return ComplexMatrix::Identity(idx(dim), idx(dim)); }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} must be a non-empty square matrix, got {}x{}", what, m.rows(), m.cols()));
  }
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_defect(const ComplexMatrix& u) {
  require_square(u, "unitary");
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HermitianEigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "matrix");
  const double defect = hermiticity_defect(m);
  if (defect > tol.herm) {
    throw Error(ErrorCode::NotHermitian, fmt::format("max |M - M^dagger| = {:.3e}", defect));
  }
  return eig_unchecked(m);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const HermitianEigenSystem es = hermitian_eig(m, tol);
  const double lowest = es.eigenvalues[es.eigenvalues.size() - 1];
  if (lowest < -tol.psd) {
    throw Error(ErrorCode::NotPSD, fmt::format("smallest eigenvalue {:.3e}", lowest));
  }
  return spectral_function(es, es.eigenvalues.cwiseMax(0.0).cwiseSqrt());
}

ComplexMatrix psd_inverse_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const HermitianEigenSystem es = hermitian_eig(m, tol);
  const double lowest = es.eigenvalues[es.eigenvalues.size() - 1];
  if (lowest <= tol.inv) {
    throw Error(ErrorCode::SingularRho, fmt::format("smallest eigenvalue {:.3e} <= {:.1e}", lowest, tol.inv));
  }
  return spectral_function(es, es.eigenvalues.cwiseSqrt().cwiseInverse());
}

ComplexMatrix abs_operator(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "operator");
  return psd_sqrt(x.adjoint() * x, tol);
}

ComplexMatrix polar_unitary(const ComplexMatrix& x) {
  require_square(x, "operator");
  const Eigen::Index n = x.rows();
  const HermitianEigenSystem es = eig_unchecked(x.adjoint() * x);
  const RealVector sigma = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const double cutoff = std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(sigma[0], 1e-300);

  // Left singular vectors w_j = X y_j / sigma_j for the numerical range,
  // re-orthonormalised in decreasing-sigma order; null directions start from
  // y_j itself and are orthogonalised against everything before them.
  ComplexMatrix w(n, n);
  std::vector<Eigen::Index> pending;
  Eigen::Index filled = 0;
  auto orthonormalise_into = [&](ComplexVector v) -> bool {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < filled; ++i) v -= w.col(i) * w.col(i).dot(v);
    }
    const double len = v.norm();
    if (len < 1e-6) return false;
    w.col(filled++) = v / len;
    return true;
  };

  ComplexMatrix y_ordered(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sigma[j] > cutoff) {
      y_ordered.col(filled) = es.eigenvectors.col(j);
      if (!orthonormalise_into(x * es.eigenvectors.col(j) / sigma[j])) pending.push_back(j);
    } else {
      pending.push_back(j);
    }
  }
  for (Eigen::Index j : pending) {
    const Eigen::Index slot = filled;
    y_ordered.col(slot) = es.eigenvectors.col(j);
    if (orthonormalise_into(es.eigenvectors.col(j))) continue;
    for (Eigen::Index e = 0; e < n; ++e) {
      if (orthonormalise_into(ComplexVector::Unit(n, e))) break;
    }
  }
  // X = U |X| with U = W Y^dagger, and V = U^dagger.
  return y_ordered * w.adjoint();
}

SingularSpectrum singular_values(const ComplexMatrix& x) {
  require_square(x, "operator");
  const HermitianEigenSystem es = eig_unchecked(x.adjoint() * x);
  return {es.eigenvalues.cwiseMax(0.0).cwiseSqrt()};
}

SingularSpectrum psd_product_singular_values(const ComplexMatrix& a, const ComplexMatrix& b_squared,
                                             const Tolerances& tol) {
  require_square(a, "left factor");
  if (a.rows() != b_squared.rows() || b_squared.rows() != b_squared.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "product factors differ in dimension");
  }
  const HermitianEigenSystem es = eig_unchecked(a * b_squared * a.adjoint());
  const double lowest = es.eigenvalues[es.eigenvalues.size() - 1];
  if (lowest < -tol.psd) {
    throw Error(ErrorCode::NotPSD, fmt::format("A B^2 A has eigenvalue {:.3e}", lowest));
  }
  return {es.eigenvalues.cwiseMax(0.0).cwiseSqrt()};
}

SingularSpectrum hermitian_singular_values(const ComplexMatrix& h, const Tolerances& tol) {
  const HermitianEigenSystem es = hermitian_eig(h, tol);
  std::vector<double> mags(static_cast<std::size_t>(es.eigenvalues.size()));
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues[i]);
  return {sorted_decreasing(mags)};
}

double ky_fan_norm(const ComplexMatrix& x, std::size_t k) {
  require_square(x, "operator");
  const auto dim = static_cast<std::size_t>(x.rows());
  if (k < 1 || k > dim) {
    throw Error(ErrorCode::BadIndex, fmt::format("Ky Fan index {} outside [1, {}]", k, dim));
  }
  return head_sum(singular_values(x).values, k);
}

TailTrace min_tail_trace(const ComplexMatrix& x, std::size_t k, const Tolerances& tol) {
  const HermitianEigenSystem es = hermitian_eig(x, tol);
  const auto dim = static_cast<std::size_t>(x.rows());
  if (k > dim) {
    throw Error(ErrorCode::BadIndex, fmt::format("tail index {} outside [0, {}]", k, dim));
  }
  const Eigen::Index tail = idx(dim - k);
  const auto basis = es.eigenvectors.rightCols(tail);
  return {tail_sum(es.eigenvalues, k), basis * basis.adjoint()};
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_env(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_e) {
  const Eigen::Index da = idx(dim_a);
  const Eigen::Index de = idx(dim_e);
  if (dim_a == 0 || dim_e == 0 || m.rows() != da * de || m.cols() != da * de) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("cannot trace a {}x{} matrix as {} x {}", m.rows(), m.cols(), dim_a, dim_e));
  }
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out(i, j) = m.block(i * de, j * de, de, de).trace();
    }
  }
  return out;
}

double tail_sum(const RealVector& sorted_desc, std::size_t k) {
  double acc = 0.0;
  for (Eigen::Index i = sorted_desc.size() - 1; i >= idx(k); --i) acc += sorted_desc[i];
  return acc;
}

double head_sum(const RealVector& sorted_desc, std::size_t k) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < idx(k) && i < sorted_desc.size(); ++i) acc += sorted_desc[i];
  return acc;
}

RealVector sorted_decreasing(const std::vector<double>& values) {
  std::vector<double> copy = values;
  std::stable_sort(copy.begin(), copy.end(), std::greater<>());
  return Eigen::Map<const RealVector>(copy.data(), idx(copy.size()));
}

}  // namespace pfid
