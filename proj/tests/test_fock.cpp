#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "kitaev/fock.hpp"
#include "kitaev/pseudospin.hpp"

using namespace kitaev;

namespace {

double max_abs(const SparseOp& m) {
  double norm = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseOp::InnerIterator it(m, k); it; ++it) norm = std::max(norm, std::abs(it.value()));
  return norm;
}

SparseOp anticommutator(const SparseOp& x, const SparseOp& y) {
  return SparseOp(SparseOp(x * y) + SparseOp(y * x));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("single-site operators have the textbook form") {
  const FockSpace space(LatticeSpec(1, 1));
  const Eigen::MatrixXcd c = Eigen::MatrixXcd(space.annihilation(0));
  CHECK(c(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(c(0, 0)) + std::abs(c(1, 0)) + std::abs(c(1, 1)) == 0.0);

  // a^2 = b^2 = 1
  const SparseOp a = space.majorana_a(0);
  const SparseOp b = space.majorana_b(0);
  CHECK(max_abs(SparseOp(SparseOp(a * a) - space.identity())) == 0.0);
  CHECK(max_abs(SparseOp(SparseOp(b * b) - space.identity())) == 0.0);
}

TEST_CASE("canonical anticommutation relations hold exhaustively at (2,2)") {
  const FockSpace space(LatticeSpec(2, 2));
  std::vector<SparseOp> c;
  std::vector<SparseOp> cdag;
  for (int p = 0; p < 4; ++p) {
    c.push_back(space.annihilation(p));
    cdag.push_back(space.creation(p));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      CHECK(max_abs(SparseOp(anticommutator(c[static_cast<std::size_t>(i)],
                                            cdag[static_cast<std::size_t>(j)]) -
                             SparseOp(delta * space.identity()))) <= 1e-14);
      CHECK(max_abs(anticommutator(c[static_cast<std::size_t>(i)],
                                   c[static_cast<std::size_t>(j)])) <= 1e-14);
    }
}

TEST_CASE("jordan-wigner signs appear across sites") {
  const FockSpace space(LatticeSpec(1, 2));
  // {c_0, c_1^dag} = 0 requires the string sign
  CHECK(max_abs(anticommutator(space.annihilation(0), space.creation(1))) == 0.0);
  // c_1 acting on |11> = c_0^dag c_1^dag |00> picks up a minus sign
  Eigen::VectorXcd full = space.creation(0) * (space.creation(1) * space.vacuum());
  Eigen::VectorXcd lowered = space.annihilation(1) * full;
  CHECK(std::real(lowered(1)) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("size cap is enforced") {
  CHECK_THROWS_AS(FockSpace(LatticeSpec(4, 4)), ResourceError);
  CHECK_NOTHROW(FockSpace(LatticeSpec(2, 7)));
}

TEST_CASE("single-site hamiltonian has levels -mu and +mu") {
  const FockSpace space(LatticeSpec(1, 1));
  const auto energies = dense_spectrum(build_manybody_h(space, {0.0, 0.0, 1.0}));
  REQUIRE(energies.size() == 2);
  CHECK(energies[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(energies[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("many-body hamiltonian equals the majorana-form reconstruction") {
  std::mt19937_64 rng(99);
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(1, 3), LatticeSpec(3, 1)}) {
    const FockSpace space(spec);
    const CouplingParams p{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
    const SparseOp direct = build_manybody_h(space, p);
    const SparseOp reconstructed = manybody_from_majorana(space, build_majorana(spec, p));
    CHECK(max_abs(SparseOp(direct - reconstructed)) <= 1e-12);
    CHECK(max_abs(SparseOp(direct - SparseOp(direct.adjoint()))) <= 1e-13);
  }
}

TEST_CASE("ground energy matches the quadratic prediction at (2,2)") {
  const LatticeSpec spec(2, 2);
  const CouplingParams p{1, 1, 1};
  const auto energies = dense_spectrum(build_manybody_h(FockSpace(spec), p));
  const SpectrumResult quadratic = single_particle_spectrum(build_majorana(spec, p));
  CHECK(energies.front() == doctest::Approx(quadratic.ground_energy).epsilon(1e-9));
  // closed form: ground = -(1 + sqrt(17))
  CHECK(energies.front() == doctest::Approx(-1.0 - std::sqrt(17.0)).epsilon(1e-10));
}

TEST_CASE("double-bond ring has the frozen four-level spectrum") {
  // (M=1, N=2): pairing cancels on the doubled bond; levels are
  // {-2mu, -2t, +2t, +2mu} shifted to {-2, -0.6, 0.6, 2} at t=1, mu=0.3.
  const FockSpace space(LatticeSpec(1, 2));
  const auto energies = dense_spectrum(build_manybody_h(space, {1.0, 0.5, 0.3}));
  REQUIRE(energies.size() == 4);
  CHECK(energies[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(energies[1] == doctest::Approx(-0.6).epsilon(1e-12));
  CHECK(energies[2] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(energies[3] == doctest::Approx(2.0).epsilon(1e-12));
  // particle-hole symmetric about the offset (= 0 here)
  for (std::size_t i = 0; i < energies.size(); ++i)
    CHECK(energies[i] == doctest::Approx(-energies[energies.size() - 1 - i]).epsilon(1e-12));
}

TEST_CASE("sweet-spot clusters all have even multiplicity") {
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 2)}) {
    const auto clusters = degeneracy_multiplicities(spec, {1, 1, 1});
    long total = 0;
    for (const EnergyCluster& cluster : clusters) {
      CHECK(cluster.multiplicity % 2 == 0);
      total += cluster.multiplicity;
    }
    CHECK(total == (1l << spec.sites()));
  }
}

TEST_CASE("off-condition multiplicities are reported without assertions") {
  const auto clusters = degeneracy_multiplicities(LatticeSpec(1, 2), {1.0, 0.2, 0.9});
  long total = 0;
  for (const EnergyCluster& cluster : clusters) total += cluster.multiplicity;
  CHECK(total == 4);
}

TEST_CASE("commutator_norm basics") {
  const FockSpace space(LatticeSpec(1, 2));
  const SparseOp h = build_manybody_h(space, {1, 1, 1});
  CHECK(commutator_norm(h, h) == 0.0);
  const FockSpace other(LatticeSpec(1, 1));
  CHECK_THROWS_AS(commutator_norm(h, other.identity()), DomainError);
}

TEST_CASE("edge operator commutes with the sweet-spot hamiltonian") {
  for (const LatticeSpec spec :
       {LatticeSpec(2, 2), LatticeSpec(3, 2), LatticeSpec(2, 3), LatticeSpec(2, 1)}) {
    const FockSpace space(spec);
    const SparseOp h = build_manybody_h(space, {1, 1, 1});
    const SparseOp d = mode_operator_fock(space, analytic_edge_operator(spec));
    CHECK(commutator_norm(d, h) <= 1e-12);
    // {d, d^dag} = 1 pins the normalization convention
    CHECK(max_abs(SparseOp(anticommutator(d, SparseOp(d.adjoint())) - space.identity())) <= 1e-12);
  }
}

TEST_CASE("collective edge modes satisfy CAR") {
  SUBCASE("N=1 collective equals the site operator") {
    const FockSpace space(LatticeSpec(2, 1));
    CHECK(max_abs(SparseOp(space.collective_annihilation(1) - space.annihilation(0))) == 0.0);
  }
  SUBCASE("(2,2) normalization") {
    const FockSpace space(LatticeSpec(2, 2));
    const SparseOp c1 = space.collective_annihilation(1);
    CHECK(max_abs(SparseOp(anticommutator(c1, SparseOp(c1.adjoint())) - space.identity())) <=
          1e-14);
  }
  SUBCASE("(3,2) cross anticommutators vanish") {
    const FockSpace space(LatticeSpec(3, 2));
    const SparseOp c1 = space.collective_annihilation(1);
    const SparseOp cm = space.collective_annihilation(3);
    CHECK(max_abs(anticommutator(c1, cm)) <= 1e-14);
    CHECK(max_abs(anticommutator(c1, SparseOp(cm.adjoint()))) <= 1e-14);
  }
}

TEST_CASE("edge pair states need two distinct edges") {
  CHECK_THROWS_AS(edge_pair_states(FockSpace(LatticeSpec(1, 3))), DomainError);
}

TEST_CASE("edge pair states are maximally entangled between the edges") {
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 2)}) {
    const FockSpace space(spec);
    const EdgePairStates states = edge_pair_states(space);
    CHECK(states.annihilation_residual <= 1e-12);
    CHECK(states.entropy_m_vac == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(states.entropy_particle == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(states.m_vac.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(states.particle.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("d-vacuum is annihilated by every bulk mode") {
  for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 2)}) {
    const FockSpace space(spec);
    const Eigen::VectorXcd dvac = d_vacuum_state(space);
    CHECK(dvac.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m < spec.rows; ++m) {
      const SparseOp dm = mode_operator_fock(space, bulk_mode_operator(spec, m));
      CHECK((dm * dvac).norm() <= 1e-12);
    }
  }
}

TEST_CASE("d_M^dag pairs eigenstates of equal energy") {
  const LatticeSpec spec(2, 2);
  const FockSpace space(spec);
  const SparseOp h = build_manybody_h(space, {1, 1, 1});
  const SparseOp d_dag = SparseOp(mode_operator_fock(space, analytic_edge_operator(spec)).adjoint());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(h)};
  const Eigen::MatrixXcd h_dense = Eigen::MatrixXcd(h);
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const Eigen::VectorXcd partner = d_dag * solver.eigenvectors().col(i);
    if (partner.norm() < 1e-6) continue;
    const Eigen::VectorXcd normalized = partner / partner.norm();
    CHECK((h_dense * normalized - solver.eigenvalues()(i) * normalized).norm() <= 1e-10);
  }
}

TEST_CASE("many-body spectrum equals the occupation-sum reconstruction") {
  std::mt19937_64 rng(321);
  for (const LatticeSpec spec :
       {LatticeSpec(2, 3), LatticeSpec(3, 3), LatticeSpec(1, 5), LatticeSpec(2, 5)}) {
    const FockSpace space(spec);
    const CouplingParams p{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
    const auto energies = dense_spectrum(build_manybody_h(space, p));
    const SpectrumResult quadratic = single_particle_spectrum(build_majorana(spec, p));

    std::vector<double> reconstructed;
    reconstructed.reserve(energies.size());
    for (long mask = 0; mask < space.dim(); ++mask) {
      double e = quadratic.ground_energy;
      for (int k = 0; k < spec.sites(); ++k)
        if (mask & (1l << k)) e += quadratic.eps[static_cast<std::size_t>(k)];
      reconstructed.push_back(e);
    }
    std::sort(reconstructed.begin(), reconstructed.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i)
      dev = std::max(dev, std::abs(energies[i] - reconstructed[i]));
    CHECK(dev <= 1e-8);
  }
}

TEST_CASE("lanczos agrees with the dense solver on the distinct low end") {
  const FockSpace space(LatticeSpec(2, 4));
  const SparseOp h = build_manybody_h(space, {1.0, 0.7, 0.4});
  const auto dense = dense_spectrum(h);
  std::vector<double> distinct;
  for (double e : dense)
    if (distinct.empty() || e - distinct.back() > 1e-10) distinct.push_back(e);
  const auto low = lanczos_lowest(h, 4);
  REQUIRE(low.size() == 4);
  for (std::size_t i = 0; i < low.size(); ++i)
    CHECK(low[i] == doctest::Approx(distinct[i]).epsilon(1e-8));
}
