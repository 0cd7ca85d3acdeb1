#pragma once

// Dense complex linear-algebra kernel.
//
// Conventions used throughout the library:
//  * eigenvalues and singular values are sorted in decreasing order;
//  * tensor products use row-major (A-index major) indexing, i.e. the basis
//    vector |i_A, i_B> sits at position i_A * dim_B + i_B.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pfid/tolerance.hpp"

namespace pfid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct HermitianEigenSystem {
  RealVector eigenvalues;      // non-increasing
  ComplexMatrix eigenvectors;  // column j pairs with eigenvalues[j]
};

struct SingularSpectrum {
  RealVector values;  // non-increasing, nonnegative

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
};

struct TailTrace {
  double value;
  ComplexMatrix projector;
};

ComplexMatrix identity(std::size_t dim);

void require_square(const ComplexMatrix& m, const char* what);

/// Largest entrywise modulus of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// max_ij |(U^dagger U - 1)_ij|
double unitarity_defect(const ComplexMatrix& u);

/// ||A - B||_F / max(1, ||B||_F)
double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);

HermitianEigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = {});

/// Positive square root of a PSD matrix; eigenvalues in [-tol.psd, 0) are
/// clamped to zero first.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});

/// Inverse square root, restricted to positive definite input.
ComplexMatrix psd_inverse_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});

/// |X| = sqrt(X^dagger X).
ComplexMatrix abs_operator(const ComplexMatrix& x, const Tolerances& tol = {});

/// Unitary V of the polar decomposition X = V^dagger |X|.
///
/// The same V satisfies both V X = |X| and X V = |X^dagger| = sqrt(X X^dagger).
/// For X = sqrt(rho) sqrt(omega) the latter is the operator whose square is
/// sqrt(rho) omega sqrt(rho), which is what fidelity computations use.
/// Null-space directions are completed deterministically: starting from the
/// corresponding eigenvectors of |X| and orthogonalising against the range.
ComplexMatrix polar_unitary(const ComplexMatrix& x);

/// Singular values via the eigenvalues of X^dagger X.
SingularSpectrum singular_values(const ComplexMatrix& x);

/// Singular values of A * B for PSD A and B, from the Hermitian matrix
/// A B^2 A. The square B^2 is passed directly.
SingularSpectrum psd_product_singular_values(const ComplexMatrix& a, const ComplexMatrix& b_squared,
                                             const Tolerances& tol = {});

/// Absolute eigenvalues of a Hermitian matrix, sorted decreasing. These are
/// its singular values.
SingularSpectrum hermitian_singular_values(const ComplexMatrix& h, const Tolerances& tol = {});

/// Sum of the k largest singular values, 1 <= k <= dim.
double ky_fan_norm(const ComplexMatrix& x, std::size_t k);

/// Ky Fan minimum principle: the sum of the (d - k) smallest eigenvalues of a
/// Hermitian X, together with the projector onto their eigenvectors.
TailTrace min_tail_trace(const ComplexMatrix& x, std::size_t k, const Tolerances& tol = {});

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr_E over the second (environment) factor of a dim_a * dim_e matrix.
ComplexMatrix partial_trace_env(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_e);

/// Sum of the trailing entries [k, n) of a decreasing vector.
double tail_sum(const RealVector& sorted_desc, std::size_t k);

/// Sum of the leading entries [0, k) of a decreasing vector.
double head_sum(const RealVector& sorted_desc, std::size_t k);

/// Stable decreasing sort.
RealVector sorted_decreasing(const std::vector<double>& values);

}  // namespace pfid
