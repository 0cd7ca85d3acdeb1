#pragma once

#include <cstdint>
#include <vector>

#include "pfid/linalg.hpp"
#include "pfid/states.hpp"

namespace pfid {

/// A positive operator-valued measure: PSD elements summing to the identity.
class Povm {
 public:
  /// Validates positivity and completeness (max entry of sum - 1 within 1e-8).
  /// The projective flag is set when every element is a projector and the
  /// elements are mutually orthogonal.
  explicit Povm(std::vector<ComplexMatrix> elements, const Tolerances& tol = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t m) const { return elements_[m]; }
  const std::vector<double>& element_traces() const { return traces_; }
  bool projective() const { return projective_; }
  double completeness_residual() const;

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<double> traces_;
  std::size_t dim_ = 0;
  bool projective_ = false;
};

/// p_m = tr(M_m rho); entries are clamped at -1e-12 and the vector is
/// renormalised to absorb the completeness residual of the POVM.
ProbabilityDistribution induced_distribution(const Povm& povm, const DensityMatrix& rho);

/// Rank-one PVM {|u_m><u_m|} from the columns of a unitary.
Povm pvm_from_unitary(const ComplexMatrix& u, const Tolerances& tol = {});

/// M_m = S^{-1/2} A_m S^{-1/2} with A_m = G_m G_m^dagger Ginibre and S = sum A_m.
Povm random_povm(std::size_t dim, std::size_t n, std::uint64_t seed);

struct OptimalF0Pvm {
  Povm pvm;
  /// lambda_m(R) paired with pvm element m.
  std::vector<double> r_eigenvalues;
  /// R = rho^{-1/2} |sqrt(rho)sqrt(omega)| rho^{-1/2}
  ComplexMatrix r;
};

/// Measurement attaining the classical fidelity minimum: the eigenbasis of R.
/// Requires lambda_min(rho) > tol.inv, otherwise SingularRho.
OptimalF0Pvm optimal_f0_pvm(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

/// max_m || lambda_m(R) P_m sqrt(rho) - P_m sqrt(omega) V ||_max for the
/// optimal PVM, V being the polar unitary of sqrt(rho) sqrt(omega).
double proportionality_residual(const DensityMatrix& rho, const DensityMatrix& omega, const OptimalF0Pvm& opt,
                                const Tolerances& tol = {});

/// F_k(p, q) - F_k(rho, omega) for the distributions induced by the POVM.
/// Throws PreconditionViolated unless every element trace is >= 1 - 1e-9.
double theorem4_gap(const DensityMatrix& rho, const DensityMatrix& omega, const Povm& povm, std::size_t k,
                    const Tolerances& tol = {});

/// Same difference without the trace precondition.
double classical_quantum_gap(const DensityMatrix& rho, const DensityMatrix& omega, const Povm& povm,
                             std::size_t k, const Tolerances& tol = {});

struct SmallTraceResult {
  double classical_fk;
  double quantum_fk;
  Povm povm;
};

/// POVM made of the d elements eps|m><m| plus the single remainder (1 - eps) 1
/// (omitted when eps == 1). Its small-trace elements break the trace >= 1
/// precondition, and the classical F_k scales like eps.
SmallTraceResult small_trace_counterexample(const DensityMatrix& rho, const DensityMatrix& omega, std::size_t k,
                                            double eps, const Tolerances& tol = {});

/// || rho omega A - A rho omega ||_F with A = sqrt(sqrt(rho) omega sqrt(rho)).
double saturation_commutator(const DensityMatrix& rho, const DensityMatrix& omega, const Tolerances& tol = {});

}  // namespace pfid
