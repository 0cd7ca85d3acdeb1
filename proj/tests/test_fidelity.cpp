#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "support.hpp"
#include "pfid/distances.hpp"
#include "pfid/fidelity.hpp"

using namespace pfid;

namespace {

// sqrt(0.375), sqrt(0.125): singular values of sqrt(diag(.75,.25)) sqrt(1/2).
constexpr double kS0 = 0.6123724356957945;
constexpr double kS1 = 0.3535533905932738;
constexpr double kF0Reference = kS0 + kS1;  // 0.9659258262890682

DensityMatrix reference_rho() { return oracle::diag_state({0.75, 0.25}); }
DensityMatrix half() { return maximally_mixed(2); }

}  // namespace

TEST_CASE("overlap_spectrum") {
  const SingularSpectrum self = overlap_spectrum(half(), half());
  CHECK(std::abs(self[0] - 0.5) < 1e-15);
  CHECK(std::abs(self[1] - 0.5) < 1e-15);

  const SingularSpectrum ref = overlap_spectrum(reference_rho(), half());
  CHECK(std::abs(ref[0] - kS0) < 1e-14);
  CHECK(std::abs(ref[1] - kS1) < 1e-14);

  const SingularSpectrum orth = overlap_spectrum(oracle::diag_state({1, 0}), oracle::diag_state({0, 1}));
  CHECK(orth.values.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("overlap_spectrum agrees with an independent SVD on random pairs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t d = 2 + seed % 5;
    const DensityMatrix rho = random_density_hs(d, 2 * seed + 100);
    const DensityMatrix omega = random_density_hs(d, 2 * seed + 101);
    for (std::size_t k = 0; k <= d; ++k) {
      CHECK(std::abs(partial_fidelity(rho, omega, k) - oracle::fk_by_svd(rho.matrix(), omega.matrix(), k)) < 1e-9);
    }
  }
}

TEST_CASE("partial_fidelity reference values") {
  CHECK(std::abs(partial_fidelity(half(), half(), 1) - 0.5) < 1e-15);
  for (std::size_t d = 1; d <= 5; ++d) {
    for (std::size_t k = 0; k <= d; ++k) {
      const double expected = static_cast<double>(d - k) / static_cast<double>(d);
      CHECK(std::abs(partial_fidelity(maximally_mixed(d), maximally_mixed(d), k) - expected) < 1e-12);
    }
  }
  CHECK(std::abs(fidelity(reference_rho(), half()) - kF0Reference) < 1e-14);
  CHECK(std::abs(partial_fidelity(reference_rho(), half(), 1) - kS1) < 1e-14);
  CHECK(partial_fidelity(reference_rho(), half(), 2) == 0.0);

  const DensityMatrix v = qubit_from_bloch({0, 0, 0.5});
  CHECK(std::abs(partial_fidelity(v, v, 1) - 0.25) < 1e-14);

  CHECK(code_of([&] { partial_fidelity(half(), half(), 3); }) == ErrorCode::BadIndex);
  CHECK(code_of([&] { partial_fidelity(half(), maximally_mixed(3), 0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("fidelity_profile") {
  const FidelityProfile p = fidelity_profile(half(), half());
  REQUIRE(p.values.size() == 3);
  CHECK(std::abs(p.at(0) - 1.0) < 1e-15);
  CHECK(std::abs(p.at(1) - 0.5) < 1e-15);
  CHECK(p.at(2) == 0.0);

  const FidelityProfile orth = fidelity_profile(oracle::diag_state({1, 0}), oracle::diag_state({0, 1}));
  for (double x : orth.values) CHECK(std::abs(x) < 1e-15);

  const FidelityProfile ref = fidelity_profile(reference_rho(), half());
  const std::vector<double> cl = classical_fidelity_profile(ProbabilityDistribution({0.75, 0.25}),
                                                            ProbabilityDistribution({0.5, 0.5}));
  CHECK(oracle::max_abs_diff(ref.values, cl) < 1e-14);
}

TEST_CASE("fidelity_profile is non-increasing and consistent with partial_fidelity") {
  const DensityMatrix rho = random_density_hs(5, 71);
  const DensityMatrix omega = random_density_hs(5, 72);
  const FidelityProfile p = fidelity_profile(rho, omega);
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(std::abs(p.at(k) - partial_fidelity(rho, omega, k)) < 1e-14);
    if (k > 0) CHECK(p.at(k) <= p.at(k - 1));
  }
}

TEST_CASE("classical partial fidelity") {
  const ProbabilityDistribution u({0.5, 0.5});
  CHECK(std::abs(classical_partial_fidelity(u, u, 0) - 1.0) < 1e-15);
  CHECK(std::abs(classical_partial_fidelity(u, u, 1) - 0.5) < 1e-15);

  const ProbabilityDistribution a({1, 0});
  const ProbabilityDistribution b({0, 1});
  for (std::size_t k = 0; k <= 2; ++k) CHECK(classical_partial_fidelity(a, b, k) == 0.0);

  const ProbabilityDistribution p({0.75, 0.25});
  CHECK(std::abs(classical_partial_fidelity(p, u, 1) - kS1) < 1e-15);
  CHECK(std::abs(classical_partial_fidelity(p, u, 1) - partial_fidelity(reference_rho(), half(), 1)) < 1e-14);

  CHECK(code_of([&] { classical_partial_fidelity(p, ProbabilityDistribution({1.0}), 0); }) ==
        ErrorCode::LengthMismatch);
  CHECK(code_of([&] { classical_partial_fidelity(p, u, 3); }) == ErrorCode::BadIndex);
}

TEST_CASE("classical partial fidelity matches the sort oracle") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t r = 1 + seed % 7;
    const ProbabilityDistribution p = random_distribution(r, seed + 300);
    const ProbabilityDistribution q = random_distribution(r, seed + 400);
    for (std::size_t k = 0; k <= r; ++k) {
      CHECK(std::abs(classical_partial_fidelity(p, q, k) - oracle::classical_fk(p.probs(), q.probs(), k)) < 1e-14);
    }
  }
}

TEST_CASE("classical overlaps keep ties in index order") {
  const ProbabilityDistribution p({0.25, 0.25, 0.5});
  const RealVector s = classical_overlaps(p, p);
  CHECK(s[0] == 0.5);
  CHECK(s[1] == 0.25);
  CHECK(s[2] == 0.25);
}

TEST_CASE("variational_upper_bound") {
  const DensityMatrix rho = random_density_hs(3, 81);
  const DensityMatrix omega = random_density_hs(3, 82);
  CHECK(std::abs(variational_upper_bound(rho, omega, identity(3)) - 1.0) < 1e-14);
  CHECK(variational_upper_bound(rho, omega, identity(3)) >= fidelity(rho, omega));
  CHECK(variational_upper_bound(rho, omega, ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(code_of([&] { variational_upper_bound(rho, omega, 0.5 * identity(3)); }) == ErrorCode::NotProjector);

  for (std::uint64_t j = 0; j < 50; ++j) {
    const std::size_t k = j % 4;
    const ComplexMatrix p = oracle::random_projector(3, 3 - k, 700 + j);
    CHECK(variational_upper_bound(rho, omega, p) >= partial_fidelity(rho, omega, k) - 1e-12);
  }
}

TEST_CASE("jordan tail projector reproduces the fidelity-distance chain") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 4;
    const DensityMatrix rho = random_density_hs(d, 900 + seed);
    const DensityMatrix omega = random_density_hs(d, 950 + seed);
    for (std::size_t k = 0; k <= d; ++k) {
      const double upper = variational_upper_bound(rho, omega, jordan_tail_projector(rho, omega, k));
      const double dk = k == 0 ? 0.0 : partitioned_trace_distance(rho, omega, k);
      CHECK(partial_fidelity(rho, omega, k) <= upper + 1e-12);
      CHECK(upper <= 1.0 - dk + 1e-12);
    }
  }
}

TEST_CASE("head_tail_sums") {
  const std::vector<double> a = {3, 2, 1};
  const HeadTailSums s0 = head_tail_sums(a, 0);
  CHECK(s0.head == 0.0);
  CHECK(s0.tail == 6.0);
  const HeadTailSums s3 = head_tail_sums(a, 3);
  CHECK(s3.head == 6.0);
  CHECK(s3.tail == 0.0);
  const HeadTailSums s1 = head_tail_sums(a, 1);
  CHECK(s1.head == 3.0);
  CHECK(s1.tail == 3.0);
  CHECK(s1.r == 3);

  CHECK(code_of([] { head_tail_sums({1, 2}, 0); }) == ErrorCode::NotSorted);
  CHECK(code_of([] { head_tail_sums({1, -1}, 0); }) == ErrorCode::NotPositive);
  CHECK(code_of([] { head_tail_sums({1}, 2); }) == ErrorCode::BadIndex);
}

TEST_CASE("head_tail_sums satisfy the averaging inequalities") {
  CounterRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 8;
    std::vector<double> a(r);
    for (double& x : a) x = rng.uniform();
    std::sort(a.begin(), a.end(), std::greater<>());
    for (std::size_t k = 0; k < r; ++k) {
      const HeadTailSums cur = head_tail_sums(a, k);
      const HeadTailSums next = head_tail_sums(a, k + 1);
      const double kd = static_cast<double>(k);
      const double rd = static_cast<double>(r);
      CHECK((kd + 1) * cur.head >= kd * next.head - 1e-12);
      CHECK((rd - kd - 1) * cur.tail >= (rd - kd) * next.tail - 1e-12);
    }
  }
}
