#pragma once

// Quantum channels on a principal system A.
//
// EnvRepChannel realises rho -> tr_E(U (rho (x) Theta) U^dagger) with the
// environment as the second tensor factor. KrausChannel realises
// rho -> sum_i K_i rho K_i^dagger.

#include <cstdint>
#include <variant>
#include <vector>

#include "pfid/linalg.hpp"
#include "pfid/states.hpp"

namespace pfid {

class EnvRepChannel {
 public:
  EnvRepChannel(std::size_t dim_a, std::size_t dim_e, ComplexMatrix unitary, DensityMatrix env_state);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_e() const { return dim_e_; }
  const ComplexMatrix& unitary() const { return unitary_; }
  const DensityMatrix& env_state() const { return env_state_; }

 private:
  std::size_t dim_a_;
  std::size_t dim_e_;
  ComplexMatrix unitary_;
  DensityMatrix env_state_;
};

class KrausChannel {
 public:
  /// Requires max |sum K^dagger K - 1| < 1e-8.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& operators() const { return kraus_; }
  double completeness_residual() const;

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_ = 0;
};

using Channel = std::variant<EnvRepChannel, KrausChannel>;

DensityMatrix apply_env(const EnvRepChannel& ch, const DensityMatrix& rho);

/// With Theta = sum_j theta_j |t_j><t_j| and {|e_i>} the computational basis
/// of E, K_ij = sqrt(theta_j) (1 (x) <e_i|) U (1 (x) |t_j>). Terms with
/// theta_j == 0 are dropped.
KrausChannel env_to_kraus(const EnvRepChannel& ch);

DensityMatrix apply_kraus(const KrausChannel& ch, const DensityMatrix& rho);

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

std::size_t input_dim(const Channel& ch);

/// Haar-random dilation with a maximally mixed environment of dimension N.
EnvRepChannel unistochastic(std::size_t dim, std::size_t env_dim, std::uint64_t seed);

/// K0 = diag(1, sqrt(1-gamma)), K1 = sqrt(gamma) |0><1|.
KrausChannel amplitude_damping(double gamma);

/// rho -> (1 - p) rho + p 1/2.
KrausChannel depolarizing(double p);

/// K0 = diag(1, sqrt(1-lambda)), K1 = diag(0, sqrt(lambda)).
KrausChannel phase_damping(double lambda);

struct MonotonicityResult {
  double before;  // F_k(rho, omega)
  double after;   // F_k(E(rho), E(omega))
};

MonotonicityResult monotonicity_check(const Channel& ch, const DensityMatrix& rho, const DensityMatrix& omega,
                                      std::size_t k, const Tolerances& tol = {});

struct AmplitudeDampingCurve {
  double f1_before;
  double f1_after;
  double closed_form_before;
  double closed_form_after;
};

/// Bloch-z pair (0,0,v), (0,0,w) through amplitude damping. Closed forms are
/// sqrt((1-v)(1-w))/2 before and the same with v' = gamma + v(1-gamma),
/// w' = gamma + w(1-gamma) after. gamma, v, w in [0, 1].
/// Throws ConsistencyFailure if numeric and closed forms differ by > 1e-10.
AmplitudeDampingCurve ad_counterexample_decrease(double gamma, double v, double w);

/// rho_* = 1/2 and omega_* = (1/2)(1 - alpha sigma_z), alpha = gamma/(1-gamma),
/// for gamma in [0, 1/2]. omega_* is mapped to 1/2 and F_1 rises from
/// sqrt(1-alpha)/2 to sqrt(1-gamma)/2.
AmplitudeDampingCurve ad_counterexample_increase(double gamma);

struct PartialTraceResult {
  double joint;    // F_{kN}(rho~, omega~)
  double reduced;  // F_k(tr_E rho~, tr_E omega~)
};

PartialTraceResult partial_trace_monotonicity(const DensityMatrix& rho_joint, const DensityMatrix& omega_joint,
                                              std::size_t dim_a, std::size_t dim_e, std::size_t k,
                                              const Tolerances& tol = {});

}  // namespace pfid
