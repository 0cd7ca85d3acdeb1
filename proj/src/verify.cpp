#include "pfid/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "pfid/channels.hpp"
#include "pfid/composition.hpp"
#include "pfid/distances.hpp"
#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"
#include "pfid/measurement.hpp"
#include "pfid/rng.hpp"

namespace pfid {

namespace {

class Trial {
 public:
  Trial(std::size_t index, std::size_t dim, std::size_t env_dim, std::uint64_t seed, double suite_tol, double scale,
        SuiteReport& report)
      : index_(index), dim_(dim), env_dim_(env_dim), seed_(seed), suite_tol_(suite_tol), scale_(scale),
        report_(report), tol_(Tolerances{}.scaled(scale)) {}

  std::size_t index() const { return index_; }
  std::size_t dim() const { return dim_; }
  std::size_t env_dim() const { return env_dim_; }
  const Tolerances& tol() const { return tol_; }

  /// Independent sub-seed for the n-th random object of this trial.
  std::uint64_t seed(std::uint64_t n) const { return derive_seed(seed_, n, 0x5eed); }

  DensityMatrix state(std::uint64_t n, std::size_t dim) const { return random_density_hs(dim, seed(n)); }
  DensityMatrix state(std::uint64_t n) const { return state(n, dim_); }

  void check(const std::string& name, std::optional<std::size_t> k, double slack, double check_tol,
             std::vector<double> values) {
    const double margin = slack * (suite_tol_ / check_tol);
    ++report_.checks;
    report_.worst_margin = std::min(report_.worst_margin, margin);
    if (!(margin >= -suite_tol_ * scale_)) {
      report_.failures.push_back({index_, dim_, k, name, std::move(values), margin});
    }
  }

  void check(const std::string& name, std::optional<std::size_t> k, double slack, std::vector<double> values) {
    check(name, k, slack, suite_tol_, std::move(values));
  }

 private:
  std::size_t index_;
  std::size_t dim_;
  std::size_t env_dim_;
  std::uint64_t seed_;
  double suite_tol_;
  double scale_;
  SuiteReport& report_;
  Tolerances tol_;
};

using SuiteBody = std::function<void(Trial&)>;

struct SuiteSpec {
  double tolerance;
  SuiteBody body;
};

// Positive decreasing vector with entries spread over several decades.
std::vector<double> random_decreasing(std::size_t r, CounterRng& rng) {
  std::vector<double> a(r);
  for (double& x : a) x = std::exp(rng.uniform(-6.0, 2.0));
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

void lemma3(Trial& t) {
  CounterRng rng(t.seed(0));
  const std::size_t r = t.dim();
  const std::vector<double> a = random_decreasing(r, rng);
  for (std::size_t k = 0; k < r; ++k) {
    const HeadTailSums cur = head_tail_sums(a, k);
    const HeadTailSums next = head_tail_sums(a, k + 1);
    const double kd = static_cast<double>(k);
    const double rd = static_cast<double>(r);
    t.check("head", k, (kd + 1.0) * cur.head - kd * next.head, {cur.head, next.head});
    t.check("tail", k, (rd - kd - 1.0) * cur.tail - (rd - kd) * next.tail, {cur.tail, next.tail});
  }
}

void fkinq(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const FidelityProfile prof = fidelity_profile(rho, omega, t.tol());
  const double d = static_cast<double>(t.dim());
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    const double bound = (d - static_cast<double>(k)) / d;
    t.check("quantum", k, bound * prof.at(0) - prof.at(k), {prof.at(k), prof.at(0)});
    t.check("quantum-absolute", k, bound - prof.at(k), {prof.at(k)});
  }
  const ProbabilityDistribution p = random_distribution(t.dim(), t.seed(3));
  const ProbabilityDistribution q = random_distribution(t.dim(), t.seed(4));
  const std::vector<double> cl = classical_fidelity_profile(p, q);
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    const double bound = (d - static_cast<double>(k)) / d;
    t.check("classical", k, bound * cl[0] - cl[k], 1e-12, {cl[k], cl[0]});
  }
}

// Noisy PVM: (1 - s) P_m + s sum_j S_mj Q_j with S doubly stochastic, so every
// element has trace exactly 1 while generally not commuting with anything.
Povm mixed_pvm(std::size_t d, const Trial& t) {
  const ComplexMatrix u1 = random_haar_unitary(d, t.seed(20));
  const ComplexMatrix u2 = random_haar_unitary(d, t.seed(21));
  CounterRng rng(t.seed(22));
  const double s = rng.uniform();
  // Doubly stochastic S as a random convex combination of cyclic shifts.
  std::vector<double> w(d);
  double total = 0.0;
  for (double& x : w) total += (x = rng.uniform());
  std::vector<ComplexMatrix> elements;
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix e = (1.0 - s) * u1.col(static_cast<Eigen::Index>(m)) * u1.col(static_cast<Eigen::Index>(m)).adjoint();
    for (std::size_t shift = 0; shift < d; ++shift) {
      const auto j = static_cast<Eigen::Index>((m + shift) % d);
      e += s * (w[shift] / total) * u2.col(j) * u2.col(j).adjoint();
    }
    elements.push_back(std::move(e));
  }
  return Povm(std::move(elements));
}

void thm4(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const std::size_t d = t.dim();
  // Traces >= 1 summing to d leave only n = d unit-trace elements; fewer
  // outcomes admit counterexamples such as the trivial POVM {1}.
  const std::size_t family = t.index() % 2;
  const Povm povm = family == 0 ? pvm_from_unitary(random_haar_unitary(d, t.seed(10))) : mixed_pvm(d, t);
  for (std::size_t k = 0; k <= std::min(d, povm.size()); ++k) {
    const double gap = theorem4_gap(rho, omega, povm, k, t.tol());
    t.check(family == 0 ? "pvm" : "unit-trace", k, gap, {gap});
  }
}

void relfid0(Trial& t) {
  const std::size_t d = t.dim();
  DensityMatrix rho = t.state(1);
  for (std::uint64_t retry = 0; hermitian_eig(rho.matrix()).eigenvalues[static_cast<Eigen::Index>(d) - 1] <= 1e-6; ++retry) {
    rho = t.state(100 + retry);
  }
  const DensityMatrix omega = t.state(2);
  const double f0 = fidelity(rho, omega, t.tol());
  const OptimalF0Pvm opt = optimal_f0_pvm(rho, omega, t.tol());
  const double attained = classical_partial_fidelity(induced_distribution(opt.pvm, rho),
                                                     induced_distribution(opt.pvm, omega), 0);
  t.check("attainment", 0, -std::abs(attained - f0), 1e-8, {attained, f0});
  const double propor = proportionality_residual(rho, omega, opt, t.tol());
  t.check("proportionality", std::nullopt, -propor, 1e-7, {propor});
  for (std::uint64_t j = 0; j < 20; ++j) {
    const Povm pvm = pvm_from_unitary(random_haar_unitary(d, t.seed(200 + j)));
    const double cl = classical_partial_fidelity(induced_distribution(pvm, rho), induced_distribution(pvm, omega), 0);
    t.check("minimum", 0, cl - f0, {cl, f0});
  }
}

Povm small_trace_povm(std::size_t d, const Trial& t) {
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    Povm povm = random_povm(d, 2 * d, t.seed(40 + attempt));
    const auto& tr = povm.element_traces();
    if (std::all_of(tr.begin(), tr.end(), [](double x) { return x <= 1.0; })) return povm;
  }
  // Split a random PVM into pairs s P_m, (1 - s) P_m.
  const ComplexMatrix u = random_haar_unitary(d, t.seed(60));
  CounterRng rng(t.seed(61));
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index m = 0; m < u.cols(); ++m) {
    const ComplexMatrix p = u.col(m) * u.col(m).adjoint();
    const double s = rng.uniform();
    elements.push_back(s * p);
    elements.push_back((1.0 - s) * p);
  }
  return Povm(std::move(elements));
}

void relt0(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const std::size_t d = t.dim();
  const DistanceProfile quantum = distance_profile(rho, omega, t.tol());

  const Povm povm = small_trace_povm(d, t);
  const std::vector<double> cl =
      classical_distance_profile(induced_distribution(povm, rho), induced_distribution(povm, omega));
  for (std::size_t k = 1; k <= std::min(d, povm.size()); ++k) {
    t.check("bound", k, quantum.at(k) - cl[k], {cl[k], quantum.at(k)});
  }

  const Povm jordan = jordan_optimal_pvm(rho, omega, t.tol());
  const std::vector<double> best =
      classical_distance_profile(induced_distribution(jordan, rho), induced_distribution(jordan, omega));
  for (std::size_t k = 1; k <= d; ++k) {
    t.check("jordan-attainment", k, -std::abs(best[k] - quantum.at(k)), {best[k], quantum.at(k)});
  }
}

void fkled(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const FidelityProfile f = fidelity_profile(rho, omega, t.tol());
  const DistanceProfile dist = distance_profile(rho, omega, t.tol());
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    t.check("sum", k, 1.0 - f.at(k) - dist.at(k), {f.at(k), dist.at(k)});
    const ComplexMatrix tail = jordan_tail_projector(rho, omega, k, t.tol());
    const double upper = variational_upper_bound(rho, omega, tail, t.tol());
    t.check("variational", k, upper - f.at(k), {upper, f.at(k)});
    t.check("chain", k, (1.0 - dist.at(k)) - upper, {upper, dist.at(k)});
  }
}

void dkinq(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const DistanceProfile dist = distance_profile(rho, omega, t.tol());
  const std::size_t d = t.dim();
  for (std::size_t k = 1; k <= d; ++k) {
    const double lower = static_cast<double>(k) / static_cast<double>(d) * dist.at(d);
    t.check("quantum", k, dist.at(k) - lower, {dist.at(k), dist.at(d)});
  }
  const ProbabilityDistribution p = random_distribution(d, t.seed(3));
  const ProbabilityDistribution q = random_distribution(d, t.seed(4));
  const std::vector<double> cl = classical_distance_profile(p, q);
  for (std::size_t k = 1; k <= d; ++k) {
    const double lower = static_cast<double>(k) / static_cast<double>(d) * cl[d];
    t.check("classical", k, cl[k] - lower, 1e-12, {cl[k], cl[d]});
  }
}

void fidtr(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const double f0 = fidelity(rho, omega, t.tol());
  const double dist = trace_distance(rho, omega, t.tol());
  t.check("lower", std::nullopt, dist - (1.0 - f0), {f0, dist});
  t.check("upper", std::nullopt, std::sqrt(std::max(0.0, 1.0 - f0 * f0)) - dist, {f0, dist});
}

void mult(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const DensityMatrix theta = t.state(3, t.env_dim());
  const DensityMatrix big_omega = t.state(4, t.env_dim());
  const Comparison c = multiplicativity_check(rho, omega, theta, big_omega, t.tol());
  t.check("multiplicativity", 0, -std::abs(c.lhs - c.rhs), {c.lhs, c.rhs});

  const double sq = std::max(sqrt_factorization_residual(rho, theta, t.tol()),
                             sqrt_factorization_residual(omega, big_omega, t.tol()));
  t.check("sqrt-factorization", std::nullopt, -sq, {sq});

  const SingularSpectrum a = overlap_spectrum(rho, omega, t.tol());
  const SingularSpectrum b = overlap_spectrum(theta, big_omega, t.tol());
  std::vector<double> products;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) products.push_back(a[i] * b[j]);
  }
  const RealVector expected = sorted_decreasing(products);
  const SingularSpectrum joint = overlap_spectrum(tensor_states(rho, theta), tensor_states(omega, big_omega), t.tol());
  const double worst = (joint.values - expected).cwiseAbs().maxCoeff();
  t.check("product-law", std::nullopt, -worst, 1e-10, {worst});
}

void submult(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const DensityMatrix theta = t.state(3, t.env_dim());
  const DensityMatrix big_omega = t.state(4, t.env_dim());
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    for (std::size_t l = 0; l <= t.env_dim(); ++l) {
      const Comparison c = submultiplicativity_check(rho, omega, theta, big_omega, k, l, t.tol());
      t.check(fmt::format("L={}", l), k, c.rhs - c.lhs, {c.lhs, c.rhs});
    }
  }
}

void thm5(Trial& t) {
  const Channel ch = unistochastic(t.dim(), t.env_dim(), t.seed(5));
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const DensityMatrix rho_out = pfid::apply(ch, rho);
  const DensityMatrix omega_out = pfid::apply(ch, omega);
  const FidelityProfile before = fidelity_profile(rho, omega, t.tol());
  const FidelityProfile after = fidelity_profile(rho_out, omega_out, t.tol());
  for (std::size_t k = 0; k < t.dim(); ++k) {
    t.check("fidelity", k, after.at(k) - before.at(k), {before.at(k), after.at(k)});
  }
  const DistanceProfile d_before = distance_profile(rho, omega, t.tol());
  const DistanceProfile d_after = distance_profile(rho_out, omega_out, t.tol());
  for (std::size_t k = 1; k <= t.dim(); ++k) {
    t.check("distance", k, d_before.at(k) - d_after.at(k), {d_before.at(k), d_after.at(k)});
  }
  const double unital = max_abs(pfid::apply(ch, maximally_mixed(t.dim())).matrix() - maximally_mixed(t.dim()).matrix());
  t.check("unital", std::nullopt, -unital, {unital});
}

void geqpart(Trial& t) {
  const std::size_t da = t.dim();
  const std::size_t de = t.env_dim();
  const DensityMatrix rho = t.state(1, da * de);
  const DensityMatrix omega = t.state(2, da * de);
  for (std::size_t k = 0; k <= da; ++k) {
    const PartialTraceResult r = partial_trace_monotonicity(rho, omega, da, de, k, t.tol());
    t.check("partial-trace", k, r.reduced - r.joint, {r.joint, r.reduced});
  }
}

void comm(Trial& t) {
  const ProbabilityDistribution p = random_distribution(t.dim(), t.seed(3));
  const ProbabilityDistribution q = random_distribution(t.dim(), t.seed(4));
  const auto [rho, omega] = commuting_pair(p, q, random_haar_unitary(t.dim(), t.seed(5)));
  const FidelityProfile quantum = fidelity_profile(rho, omega, t.tol());
  const std::vector<double> classical = classical_fidelity_profile(p, q);
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    t.check("profile", k, -std::abs(quantum.at(k) - classical[k]), {quantum.at(k), classical[k]});
  }
}

void concavity(Trial& t) {
  const DensityMatrix rho1 = t.state(1);
  const DensityMatrix rho2 = t.state(2);
  const DensityMatrix omega1 = t.state(3);
  const DensityMatrix omega2 = t.state(4);
  const FidelityProfile f1 = fidelity_profile(rho1, omega1, t.tol());
  const FidelityProfile f2 = fidelity_profile(rho2, omega2, t.tol());
  for (const double w : {0.25, 0.5, 0.75}) {
    const FidelityProfile mixed = fidelity_profile(mix(rho1, rho2, w), mix(omega1, omega2, w), t.tol());
    for (std::size_t k = 0; k <= t.dim(); ++k) {
      const double chord = w * f1.at(k) + (1.0 - w) * f2.at(k);
      t.check(fmt::format("t={}", w), k, mixed.at(k) - chord, {mixed.at(k), chord});
    }
  }
}

void fkfkn(Trial& t) {
  const std::size_t n = t.env_dim();
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const DensityMatrix env = maximally_mixed(n);
  const DensityMatrix rho_joint = tensor_states(rho, env);
  const DensityMatrix omega_joint = tensor_states(omega, env);
  const ComplexMatrix u = random_haar_unitary(t.dim() * n, t.seed(5));
  const DensityMatrix rho_rot = conjugate(rho_joint, u);
  const DensityMatrix omega_rot = conjugate(omega_joint, u);
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    const double joint = partial_fidelity(rho_joint, omega_joint, k * n, t.tol());
    const double single = partial_fidelity(rho, omega, k, t.tol());
    t.check("identity", k, -std::abs(joint - single), {joint, single});
    const double rotated = partial_fidelity(rho_rot, omega_rot, k * n, t.tol());
    t.check("unitary-invariance", k, -std::abs(rotated - joint), {rotated, joint});
  }
}

void invariance(Trial& t) {
  const DensityMatrix rho = t.state(1);
  const DensityMatrix omega = t.state(2);
  const ComplexMatrix u = random_haar_unitary(t.dim(), t.seed(5));
  const FidelityProfile f = fidelity_profile(rho, omega, t.tol());
  const FidelityProfile f_swap = fidelity_profile(omega, rho, t.tol());
  const FidelityProfile f_rot = fidelity_profile(conjugate(rho, u), conjugate(omega, u), t.tol());
  const DistanceProfile d = distance_profile(rho, omega, t.tol());
  const DistanceProfile d_swap = distance_profile(omega, rho, t.tol());
  const DistanceProfile d_rot = distance_profile(conjugate(rho, u), conjugate(omega, u), t.tol());
  for (std::size_t k = 0; k <= t.dim(); ++k) {
    t.check("fidelity-symmetry", k, -std::abs(f.at(k) - f_swap.at(k)), 1e-10, {f.at(k), f_swap.at(k)});
    t.check("fidelity-unitary", k, -std::abs(f.at(k) - f_rot.at(k)), {f.at(k), f_rot.at(k)});
    t.check("distance-symmetry", k, -std::abs(d.at(k) - d_swap.at(k)), 1e-10, {d.at(k), d_swap.at(k)});
    t.check("distance-unitary", k, -std::abs(d.at(k) - d_rot.at(k)), {d.at(k), d_rot.at(k)});
  }
}

const std::map<std::string, SuiteSpec>& registry() {
  static const std::map<std::string, SuiteSpec> suites = {
      {"lemma3", {1e-12, lemma3}},   {"fkinq", {1e-9, fkinq}},     {"thm4", {1e-9, thm4}},
      {"relfid0", {1e-9, relfid0}},  {"relt0", {1e-9, relt0}},     {"fkled", {1e-9, fkled}},
      {"dkinq", {1e-9, dkinq}},      {"fidtr", {1e-9, fidtr}},     {"mult", {1e-9, mult}},
      {"submult", {1e-9, submult}},  {"thm5", {1e-9, thm5}},       {"geqpart", {1e-9, geqpart}},
      {"comm", {1e-9, comm}},        {"concavity", {1e-9, concavity}}, {"fkfkn", {1e-9, fkfkn}},
      {"invariance", {1e-9, invariance}},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma3", "fkinq", "thm4",    "relfid0", "relt0",     "fkled",
                                                 "dkinq",  "fidtr", "mult",    "submult", "thm5",      "geqpart",
                                                 "comm",   "concavity", "fkfkn", "invariance"};
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) != 0; }

SuiteReport run_suite(const SuiteConfig& config) {
  const auto it = registry().find(config.suite);
  if (it == registry().end()) throw Error(ErrorCode::BadParameter, fmt::format("unknown suite \"{}\"", config.suite));
  if (config.dims.empty()) throw Error(ErrorCode::BadParameter, "no dimensions requested");
  for (std::size_t d : config.dims) {
    if (d == 0) throw Error(ErrorCode::BadParameter, "dimensions must be positive");
  }
  if (config.env_dim == 0) throw Error(ErrorCode::BadParameter, "environment dimension must be positive");
  if (!(config.tolerance_scale > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance scale must be positive");

  const SuiteSpec& spec = it->second;
  SuiteReport report;
  report.suite = config.suite;
  report.trials = config.trials;
  report.master_seed = config.master_seed;
  report.dims = config.dims;
  report.env_dim = config.env_dim;
  report.tolerance = spec.tolerance * config.tolerance_scale;
  report.worst_margin = std::numeric_limits<double>::infinity();

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t d : config.dims) {
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      Trial t(trial, d, config.env_dim, derive_seed(config.master_seed, trial, d), spec.tolerance,
              config.tolerance_scale, report);
      spec.body(t);
    }
  }
  if (report.checks == 0) report.worst_margin = 0.0;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const SuiteFailure& a, const SuiteFailure& b) {
                     return std::tie(a.dim, a.trial) < std::tie(b.dim, b.trial);
                   });
  return report;
}

Json report_to_json(const SuiteReport& report, bool include_timing) {
  Json out;
  out["suite"] = report.suite;
  out["trials"] = report.trials;
  out["master_seed"] = report.master_seed;
  out["rng"] = CounterRng::kName;
  out["dims"] = report.dims;
  out["env_dim"] = report.env_dim;
  out["tolerance"] = report.tolerance;
  out["checks"] = report.checks;
  out["worst_margin"] = report.worst_margin;
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json entry;
    entry["trial"] = f.trial;
    entry["dim"] = f.dim;
    entry["k"] = f.k ? Json(*f.k) : Json(nullptr);
    entry["check"] = f.check;
    entry["margin"] = f.margin;
    entry["values"] = f.values;
    failures.push_back(std::move(entry));
  }
  out["failures"] = std::move(failures);
  out["passed"] = report.passed();
  if (include_timing) out["wall_time"] = report.wall_time;
  return out;
}

}  // namespace pfid
