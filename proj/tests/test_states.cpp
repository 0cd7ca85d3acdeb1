#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"
#include "pfid/rng.hpp"
#include "pfid/states.hpp"

using namespace pfid;

namespace {

}  // namespace

TEST_CASE("counter rng is deterministic and seed sensitive") {
  CounterRng a(42);
  CounterRng b(42);
  CounterRng c(43);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CHECK(a.counter() == 100);
  CHECK(std::string(CounterRng::kName) == "splitmix64/v1");
}

TEST_CASE("counter rng uniform and normal moments") {
  CounterRng rng(2024);
  const int n = 200000;
  double sum = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(std::abs(sum / n - 0.5) < 5e-3);
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);

  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    m1 += z;
    m2 += z * z;
  }
  CHECK(std::abs(m1 / n) < 1e-2);
  CHECK(std::abs(m2 / n - 1.0) < 2e-2);

  double c2 = 0.0;
  for (int i = 0; i < n; ++i) c2 += std::norm(rng.complex_normal());
  CHECK(std::abs(c2 / n - 1.0) < 2e-2);
}

TEST_CASE("uniform_int covers its closed range") {
  CounterRng rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(3, 7);
    CHECK(v >= 3);
    CHECK(v <= 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("derive_seed separates indices and streams") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 50; ++i) {
    for (std::uint64_t s = 0; s < 4; ++s) seeds.insert(derive_seed(1, i, s));
  }
  CHECK(seeds.size() == 200);
  CHECK(derive_seed(9, 3, 1) == derive_seed(9, 3, 1));
}

TEST_CASE("validate_density") {
  const DensityMatrix half = validate_density(identity(2) / 2.0);
  CHECK(half.dim() == 2);
  CHECK(code_of([] { validate_density(oracle::diag({0.7, 0.4})); }) == ErrorCode::TraceNotOne);
  CHECK(code_of([] { validate_density(oracle::diag({1.2, -0.2})); }) == ErrorCode::NotPSD);
  ComplexMatrix skew = identity(2) / 2.0;
  skew(0, 1) = Complex(0.0, 0.1);
  CHECK(code_of([&] { validate_density(skew); }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { validate_density(ComplexMatrix::Zero(2, 3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("validate_density symmetrises and clamps small defects") {
  ComplexMatrix m = oracle::diag({1.0 + 5e-11, -5e-11});
  m(0, 1) = Complex(1e-10, 0.0);
  const DensityMatrix rho = validate_density(m);
  CHECK(hermiticity_defect(rho.matrix()) == 0.0);
  CHECK(hermitian_eig(rho.matrix()).eigenvalues.minCoeff() >= 0.0);
}

TEST_CASE("validate_density honours scaled tolerances") {
  const ComplexMatrix m = oracle::diag({1.0 + 1e-8, 0.0});
  CHECK(code_of([&] { validate_density(m); }) == ErrorCode::TraceNotOne);
  CHECK(validate_density(m, Tolerances{}.scaled(100.0)).dim() == 2);
}

TEST_CASE("qubit_from_bloch") {
  CHECK(max_abs(qubit_from_bloch({0, 0, 0}).matrix() - identity(2) / 2.0) < 1e-15);
  CHECK(max_abs(qubit_from_bloch({0, 0, 1}).matrix() - oracle::diag({1, 0})) < 1e-15);
  const DensityMatrix rho = qubit_from_bloch({0, 0, 0.5});
  CHECK(max_abs(rho.matrix() - oracle::diag({0.75, 0.25})) < 1e-15);
  const HermitianEigenSystem es = hermitian_eig(rho.matrix());
  CHECK(es.eigenvalues[0] == doctest::Approx(0.75));
  CHECK(es.eigenvalues[1] == doctest::Approx(0.25));
  CHECK(code_of([] { qubit_from_bloch({0.8, 0.8, 0}); }) == ErrorCode::OutsideBlochBall);
}

TEST_CASE("bloch_of inverts qubit_from_bloch") {
  const BlochVector u{0.3, -0.4, 0.5};
  const BlochVector back = bloch_of(qubit_from_bloch(u));
  CHECK(std::abs(back.x - u.x) < 1e-15);
  CHECK(std::abs(back.y - u.y) < 1e-15);
  CHECK(std::abs(back.z - u.z) < 1e-15);
  CHECK(code_of([] { bloch_of(maximally_mixed(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("maximally_mixed") {
  CHECK(max_abs(maximally_mixed(2).matrix() - oracle::diag({0.5, 0.5})) == 0.0);
  CHECK(max_abs(maximally_mixed(3).matrix() - identity(3) / 3.0) < 1e-16);
  for (std::size_t d = 1; d <= 6; ++d) {
    CHECK(std::abs(fidelity(maximally_mixed(d), maximally_mixed(d)) - 1.0) < 1e-12);
  }
}

TEST_CASE("random_density_hs") {
  CHECK(max_abs(random_density_hs(2, 1).matrix() - random_density_hs(2, 1).matrix()) == 0.0);
  CHECK(max_abs(random_density_hs(2, 1).matrix() - random_density_hs(2, 2).matrix()) > 0.0);
  const DensityMatrix rho = random_density_hs(4, 9);
  CHECK(validate_density(rho.matrix()).dim() == 4);
  CHECK(hermitian_eig(random_density_hs(3, 5).matrix()).eigenvalues.minCoeff() > 0.0);
}

TEST_CASE("random_haar_unitary") {
  const ComplexMatrix u1 = random_haar_unitary(1, 0);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-14);
  CHECK(unitarity_defect(random_haar_unitary(3, 2)) < 1e-10);

  const ComplexMatrix u = random_haar_unitary(2, 7);
  const DensityMatrix rho = random_density_hs(2, 70);
  const RealVector before = hermitian_eig(rho.matrix()).eigenvalues;
  const RealVector after = hermitian_eig(conjugate(rho, u).matrix()).eigenvalues;
  CHECK((before - after).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("haar unitaries have the expected first-entry weight") {
  // |U_00|^2 is Beta(1, d-1) under Haar measure: mean 1/d.
  const std::size_t d = 3;
  double mean = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) mean += std::norm(random_haar_unitary(d, 10000 + i)(0, 0));
  CHECK(std::abs(mean / n - 1.0 / d) < 0.02);
}

TEST_CASE("ProbabilityDistribution") {
  CHECK(ProbabilityDistribution({0.25, 0.75}).size() == 2);
  CHECK(code_of([] { ProbabilityDistribution({}); }) == ErrorCode::NotDistribution);
  CHECK(code_of([] { ProbabilityDistribution({0.5, 0.6}); }) == ErrorCode::NotDistribution);
  CHECK(code_of([] { ProbabilityDistribution({1.1, -0.1}); }) == ErrorCode::NotDistribution);
  const ProbabilityDistribution p = random_distribution(5, 3);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i] >= 0.0);
    total += p[i];
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("commuting_pair") {
  const ProbabilityDistribution half({0.5, 0.5});
  const auto [a, b] = commuting_pair(half, half, identity(2));
  CHECK(max_abs(a.matrix() - identity(2) / 2.0) < 1e-15);
  CHECK(max_abs(b.matrix() - identity(2) / 2.0) < 1e-15);

  const auto [c, d] = commuting_pair(ProbabilityDistribution({0.75, 0.25}), half, identity(2));
  CHECK(max_abs(c.matrix() - oracle::diag({0.75, 0.25})) < 1e-15);
  CHECK(max_abs(d.matrix() - oracle::diag({0.5, 0.5})) < 1e-15);

  const auto [r, w] = commuting_pair(random_distribution(4, 1), random_distribution(4, 2), random_haar_unitary(4, 3));
  CHECK(max_abs(r.matrix() * w.matrix() - w.matrix() * r.matrix()) < 1e-10);

  CHECK(code_of([&] { commuting_pair(half, ProbabilityDistribution({1.0}), identity(2)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { commuting_pair(half, half, 2.0 * identity(2)); }) == ErrorCode::NotUnitary);
}

TEST_CASE("mix and conjugate") {
  const DensityMatrix a = oracle::diag_state({1, 0});
  const DensityMatrix b = oracle::diag_state({0, 1});
  CHECK(max_abs(mix(a, b, 0.25).matrix() - oracle::diag({0.25, 0.75})) < 1e-15);
  CHECK(max_abs(conjugate(a, pauli_x()).matrix() - b.matrix()) < 1e-15);
}
