#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kitaev/fourier.hpp"
#include "kitaev/quadratic.hpp"

using namespace kitaev;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("k_values enumerates 2*pi*l/N with K=0 first") {
  CHECK(k_values(1) == std::vector<double>{0.0});
  const auto four = k_values(4);
  REQUIRE(four.size() == 4);
  CHECK(four[0] == 0.0);
  CHECK(four[1] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(four[2] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(four[3] == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
  const auto three = k_values(3);
  CHECK(three[1] == doctest::Approx(2 * kPi / 3).epsilon(1e-15));
  CHECK(three[2] == doctest::Approx(4 * kPi / 3).epsilon(1e-15));
  CHECK_THROWS_AS(k_values(0), DomainError);
}

TEST_CASE("build_block rejects off-grid wave numbers") {
  const LatticeSpec spec(2, 4);
  CHECK_THROWS_AS(build_block(spec, 1.0, 0.3), DomainError);
  CHECK_THROWS_AS(build_block(spec, 1.0, -kPi / 2), DomainError);
  CHECK_NOTHROW(build_block(spec, 1.0, kPi));
}

TEST_CASE("K=0 block is the open Majorana chain with the onsite term cancelled") {
  // M=2: a_1 couples to b_2 only; two indices stay free. Quasiparticle
  // energies {0, 2t}, matching the diagonal form 2t(d^dag d - 1/2).
  const FourierBlock block = build_block(LatticeSpec(2, 5), 1.0, 0.0);
  CHECK(block.self_conjugate);
  for (int m = 0; m < 2; ++m) CHECK(std::abs(block.matrix(m, 2 + m)) == 0.0);
  const auto quasi = block.quasiparticle_energies();
  REQUIRE(quasi.size() == 2);
  CHECK(quasi[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(quasi[1] == doctest::Approx(2.0).epsilon(1e-12));

  // M = 3: one zero mode plus M-1 copies of the common value 2t.
  const auto quasi3 = build_block(LatticeSpec(3, 4), 2.0, 0.0).quasiparticle_energies();
  REQUIRE(quasi3.size() == 3);
  CHECK(quasi3[0] <= 1e-12);
  CHECK(quasi3[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(quasi3[2] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("single-row K=pi block carries the doubled coefficient") {
  // (1 - e^{iK}) doubles at K=pi; block eigenvalues are +-4t, confirmed by
  // the full M=1, N=2 spectrum {0, 0, +-4t}.
  const FourierBlock block = build_block(LatticeSpec(1, 2), 1.0, kPi);
  const auto energies = block.energies();
  REQUIRE(energies.size() == 2);
  CHECK(energies[0] == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(energies[1] == doctest::Approx(4.0).epsilon(1e-12));

  const SpectrumResult full =
      single_particle_spectrum(build_majorana(LatticeSpec(1, 2), {1, 1, 1}));
  CHECK(full.eps[0] <= 1e-12);
  CHECK(full.eps[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("zero coupling gives zero blocks") {
  for (double k : k_values(3)) {
    const FourierBlock block = build_block(LatticeSpec(4, 3), 0.0, k);
    CHECK(block.matrix.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("blocks at K and 2pi-K share singular values") {
  const LatticeSpec spec(3, 5);
  const auto ks = k_values(spec.cols);
  for (std::size_t l = 1; l < ks.size(); ++l) {
    const std::size_t partner = ks.size() - l;
    Eigen::VectorXd sv_a = build_block(spec, 1.3, ks[l]).matrix.jacobiSvd().singularValues();
    Eigen::VectorXd sv_b =
        build_block(spec, 1.3, ks[partner]).matrix.jacobiSvd().singularValues();
    CHECK((sv_a - sv_b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("fourier unitary is unitary") {
  for (const LatticeSpec spec : {LatticeSpec(2, 3), LatticeSpec(3, 4), LatticeSpec(1, 5)}) {
    const Eigen::MatrixXcd u = fourier_unitary(spec);
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <=
          1e-13);
  }
}

TEST_CASE("block decomposition verifies on standard cases") {
  const BlockDecompositionReport report = verify_block_decomposition(LatticeSpec(3, 4), 1.0);
  CHECK(report.max_off_block <= report.tolerance);
  CHECK(report.max_block_mismatch <= report.tolerance);
  CHECK(report.spectrum_union_dev <= report.tolerance);
  CHECK(report.max_commutator <= 1e-12);

  // N = 1: the identity transform; the single K=0 block equals the full form
  const BlockDecompositionReport trivial = verify_block_decomposition(LatticeSpec(1, 1), 1.0);
  CHECK(trivial.max_off_block == 0.0);
  CHECK(trivial.max_block_mismatch <= 1e-15);

  // all-zero couplings pass trivially
  const BlockDecompositionReport zero = verify_block_decomposition(LatticeSpec(2, 2), 0.0);
  CHECK(zero.max_off_block == 0.0);
}

TEST_CASE("spectrum union property holds for all M, N <= 6") {
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n)
      for (double t : {0.5, 1.0, 2.0})
        CHECK_NOTHROW(verify_block_decomposition(LatticeSpec(m, n), t));
}

TEST_CASE("self-conjugacy flag marks K in {0, pi} only") {
  const LatticeSpec spec(2, 4);
  const auto ks = k_values(spec.cols);
  CHECK(build_block(spec, 1.0, ks[0]).self_conjugate);        // K = 0
  CHECK_FALSE(build_block(spec, 1.0, ks[1]).self_conjugate);  // K = pi/2
  CHECK(build_block(spec, 1.0, ks[2]).self_conjugate);        // K = pi
  CHECK_FALSE(build_block(spec, 1.0, ks[3]).self_conjugate);  // K = 3pi/2
  CHECK_FALSE(build_block(LatticeSpec(2, 3), 1.0, k_values(3)[1]).self_conjugate);
}
