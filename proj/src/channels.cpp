#include "pfid/channels.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"

namespace pfid {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::BadParameter, fmt::format("{} = {} outside [0, 1]", name, x));
}

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

EnvRepChannel::EnvRepChannel(std::size_t dim_a, std::size_t dim_e, ComplexMatrix unitary, DensityMatrix env_state)
    : dim_a_(dim_a), dim_e_(dim_e), unitary_(std::move(unitary)), env_state_(std::move(env_state)) {
  if (dim_a_ == 0 || dim_e_ == 0 || unitary_.rows() != idx(dim_a_ * dim_e_) || unitary_.cols() != unitary_.rows() ||
      env_state_.dim() != dim_e_) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("dilation {}x{} / environment {} incompatible with {} x {}", unitary_.rows(),
                            unitary_.cols(), env_state_.dim(), dim_a_, dim_e_));
  }
  const double defect = unitarity_defect(unitary_);
  if (defect > 1e-8) throw Error(ErrorCode::NotUnitary, fmt::format("max |U^dagger U - 1| = {:.3e}", defect));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::BadParameter, "a Kraus channel needs at least one operator");
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  for (const auto& k : kraus_) {
    require_square(k, "Kraus operator");
    if (static_cast<std::size_t>(k.rows()) != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in dimension");
    }
  }
  const double residual = completeness_residual();
  if (residual > 1e-8) {
    throw Error(ErrorCode::BadParameter, fmt::format("Kraus completeness residual {:.3e}", residual));
  }
}

double KrausChannel::completeness_residual() const {
  ComplexMatrix total = ComplexMatrix::Zero(idx(dim_), idx(dim_));
  for (const auto& k : kraus_) total += k.adjoint() * k;
  return max_abs(total - identity(dim_));
}

DensityMatrix apply_env(const EnvRepChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_a()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("channel on dimension {} applied to dimension {}", ch.dim_a(), rho.dim()));
  }
  const ComplexMatrix joint = tensor_product(rho.matrix(), ch.env_state().matrix());
  const ComplexMatrix evolved = ch.unitary() * joint * ch.unitary().adjoint();
  return validate_density(partial_trace_env(evolved, ch.dim_a(), ch.dim_e()));
}

KrausChannel env_to_kraus(const EnvRepChannel& ch) {
  const HermitianEigenSystem env = hermitian_eig(ch.env_state().matrix());
  const Eigen::Index da = idx(ch.dim_a());
  const Eigen::Index de = idx(ch.dim_e());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index j = 0; j < de; ++j) {
    const double theta = env.eigenvalues[j];
    if (theta <= 0.0) continue;
    // U (1 (x) |t_j>) as a (da*de) x da matrix.
    const ComplexMatrix lifted = ch.unitary() * tensor_product(identity(ch.dim_a()), env.eigenvectors.col(j));
    for (Eigen::Index i = 0; i < de; ++i) {
      ComplexMatrix k(da, da);
      for (Eigen::Index a = 0; a < da; ++a) k.row(a) = lifted.row(a * de + i);
      ops.push_back(std::sqrt(theta) * k);
    }
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_kraus(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("channel on dimension {} applied to dimension {}", ch.dim(), rho.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(idx(ch.dim()), idx(ch.dim()));
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return validate_density(out);
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  return std::visit(
      [&](const auto& c) -> DensityMatrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, EnvRepChannel>) {
          return apply_env(c, rho);
        } else {
          return apply_kraus(c, rho);
        }
      },
      ch);
}

std::size_t input_dim(const Channel& ch) {
  if (const auto* env = std::get_if<EnvRepChannel>(&ch)) return env->dim_a();
  return std::get<KrausChannel>(ch).dim();
}

EnvRepChannel unistochastic(std::size_t dim, std::size_t env_dim, std::uint64_t seed) {
  if (dim == 0 || env_dim == 0) throw Error(ErrorCode::BadParameter, "dimensions must be positive");
  return EnvRepChannel(dim, env_dim, random_haar_unitary(dim * env_dim, seed), maximally_mixed(env_dim));
}

KrausChannel amplitude_damping(double gamma) {
  require_unit_interval(gamma, "gamma");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel({diag2(1.0, std::sqrt(1.0 - gamma)), k1});
}

KrausChannel depolarizing(double p) {
  require_unit_interval(p, "p");
  const double pauli_weight = std::sqrt(p / 4.0);
  return KrausChannel({std::sqrt(1.0 - 0.75 * p) * identity(2), pauli_weight * pauli_x(), pauli_weight * pauli_y(),
                       pauli_weight * pauli_z()});
}

KrausChannel phase_damping(double lambda) {
  require_unit_interval(lambda, "lambda");
  return KrausChannel({diag2(1.0, std::sqrt(1.0 - lambda)), diag2(0.0, std::sqrt(lambda))});
}

MonotonicityResult monotonicity_check(const Channel& ch, const DensityMatrix& rho, const DensityMatrix& omega,
                                      std::size_t k, const Tolerances& tol) {
  return {partial_fidelity(rho, omega, k, tol), partial_fidelity(pfid::apply(ch, rho), pfid::apply(ch, omega), k, tol)};
}

AmplitudeDampingCurve ad_counterexample_decrease(double gamma, double v, double w) {
  require_unit_interval(gamma, "gamma");
  require_unit_interval(v, "v");
  require_unit_interval(w, "w");
  const KrausChannel channel = amplitude_damping(gamma);
  const DensityMatrix rho = qubit_from_bloch({0.0, 0.0, v});
  const DensityMatrix omega = qubit_from_bloch({0.0, 0.0, w});
  const double v_out = gamma + v * (1.0 - gamma);
  const double w_out = gamma + w * (1.0 - gamma);

  AmplitudeDampingCurve out{};
  out.f1_before = partial_fidelity(rho, omega, 1);
  out.f1_after = partial_fidelity(apply_kraus(channel, rho), apply_kraus(channel, omega), 1);
  out.closed_form_before = std::sqrt((1.0 - v) * (1.0 - w)) / 2.0;
  out.closed_form_after = std::sqrt((1.0 - v_out) * (1.0 - w_out)) / 2.0;
  if (std::abs(out.f1_before - out.closed_form_before) > 1e-10 ||
      std::abs(out.f1_after - out.closed_form_after) > 1e-10) {
    throw Error(ErrorCode::ConsistencyFailure,
                fmt::format("numeric F_1 ({:.17g}, {:.17g}) disagrees with closed form ({:.17g}, {:.17g})",
                            out.f1_before, out.f1_after, out.closed_form_before, out.closed_form_after));
  }
  return out;
}

AmplitudeDampingCurve ad_counterexample_increase(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    throw Error(ErrorCode::BadParameter, fmt::format("gamma = {} outside [0, 1/2]; alpha would exceed 1", gamma));
  }
  const double alpha = gamma / (1.0 - gamma);
  const KrausChannel channel = amplitude_damping(gamma);
  const DensityMatrix rho_star = maximally_mixed(2);
  const DensityMatrix omega_star = qubit_from_bloch({0.0, 0.0, -alpha});
  const DensityMatrix rho_out = apply_kraus(channel, rho_star);
  const DensityMatrix omega_out = apply_kraus(channel, omega_star);

  const double to_mixed = max_abs(omega_out.matrix() - maximally_mixed(2).matrix());
  if (to_mixed > 1e-10) {
    throw Error(ErrorCode::ConsistencyFailure, fmt::format("omega_* maps {:.3e} away from 1/2", to_mixed));
  }
  AmplitudeDampingCurve out{};
  out.f1_before = partial_fidelity(rho_star, omega_star, 1);
  out.f1_after = partial_fidelity(rho_out, omega_out, 1);
  out.closed_form_before = std::sqrt(1.0 - alpha) / 2.0;
  out.closed_form_after = std::sqrt(1.0 - gamma) / 2.0;
  if (std::abs(out.f1_before - out.closed_form_before) > 1e-10 ||
      std::abs(out.f1_after - out.closed_form_after) > 1e-10) {
    throw Error(ErrorCode::ConsistencyFailure,
                fmt::format("numeric F_1 ({:.17g}, {:.17g}) disagrees with closed form ({:.17g}, {:.17g})",
                            out.f1_before, out.f1_after, out.closed_form_before, out.closed_form_after));
  }
  return out;
}

PartialTraceResult partial_trace_monotonicity(const DensityMatrix& rho_joint, const DensityMatrix& omega_joint,
                                              std::size_t dim_a, std::size_t dim_e, std::size_t k,
                                              const Tolerances& tol) {
  require_same_dim(rho_joint, omega_joint);
  if (rho_joint.dim() != dim_a * dim_e) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("joint dimension {} is not {} x {}", rho_joint.dim(), dim_a, dim_e));
  }
  if (k > dim_a) throw Error(ErrorCode::BadIndex, fmt::format("index {} outside [0, {}]", k, dim_a));
  const DensityMatrix rho_a = validate_density(partial_trace_env(rho_joint.matrix(), dim_a, dim_e), tol);
  const DensityMatrix omega_a = validate_density(partial_trace_env(omega_joint.matrix(), dim_a, dim_e), tol);
  return {partial_fidelity(rho_joint, omega_joint, k * dim_e, tol), partial_fidelity(rho_a, omega_a, k, tol)};
}

}  // namespace pfid
