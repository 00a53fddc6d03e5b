#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "kitaev/fock.hpp"

namespace kitaev {

constexpr int levi_civita(int a, int b, int c) {
  return (a - b) * (b - c) * (c - a) / 2;  // indices 0, 1, 2
}

/// Ordered frame {|1> = |Vac>, |2> = c_{1,0}^dag|Vac>, |3> = c_{M,0}^dag|Vac>,
/// |4> = c_{1,0}^dag c_{M,0}^dag|Vac>} of the collective-edge subspace.
struct TwoModeBasis {
  Eigen::MatrixXcd frame;  // dim x 4, orthonormal columns
};

TwoModeBasis two_mode_basis(const FockSpace& space);

/// The two su(2) triples on the two-mode space plus J = s + tau, as 4x4
/// matrices on TwoModeBasis. s acts within span{|2>,|3>}, tau within
/// span{|1>,|4>}; the tau pair orientation is fixed so that J^x commutes
/// with the sweet-spot Hamiltonian.
struct PseudospinMatrices {
  std::array<Eigen::Matrix4cd, 3> s;
  std::array<Eigen::Matrix4cd, 3> tau;
  std::array<Eigen::Matrix4cd, 3> j;

  Eigen::Matrix4cd s_squared() const;
  Eigen::Matrix4cd tau_squared() const;
};

PseudospinMatrices pseudospin_matrices();

/// Fock-space embeddings built from the collective edge modes.
struct PseudospinSet {
  PseudospinMatrices local;
  TwoModeBasis basis;
  std::array<SparseOp, 3> s_fock;
  std::array<SparseOp, 3> tau_fock;
  std::array<SparseOp, 3> j_fock;

  SparseOp s_squared_fock() const;
  SparseOp tau_squared_fock() const;
};

/// Requires M >= 2 (two distinct edge rows) and the oracle size cap.
PseudospinSet build_pseudospin(const FockSpace& space);

struct AlgebraReport {
  double max_su2_dev = 0.0;       // [s^a, s^b] = i eps_abc s^c, same for tau and J
  double max_cross_dev = 0.0;     // [s^a, tau^b] = 0
  double max_casimir_dev = 0.0;   // s^2 + tau^2 = (3/4) I
  double max_fock_dev = 0.0;      // the same identities in the Fock embedding
};

/// Verifies every algebraic identity; throws InvariantError naming the
/// failing relation. 4x4 tolerance 1e-12, Fock tolerance 1e-10.
AlgebraReport algebra_check(const PseudospinSet& set);

/// The unitary on TwoModeBasis exchanging the s-carrying and tau-carrying
/// sectors, fixed (up to phase) by P^-1 s^2 P = tau^2 and [P, J^x] = 0.
Eigen::Matrix4cd particle_hole_map(const PseudospinMatrices& ps);

struct StateExpectation {
  double energy = 0.0;
  double jx = 0.0;
  double s2 = 0.0;
  double tau2 = 0.0;
  bool phi_flag = false;  // |jx| = 1/2 and s2 = tau2 = 3/8
};

/// Simultaneously resolves H and J^x (then balances s-content inside
/// degenerate (E, jx) subspaces) and reports per-state expectations.
/// Requires sweet-spot couplings; InvariantError if [H, J^x] != 0.
std::vector<StateExpectation> eigenstate_expectations(const LatticeSpec& spec,
                                                      const CouplingParams& p);

/// Model states (1/sqrt 2)(|0>_s |->>_tau +- |->>_s |0>_tau) on the
/// two-mode space; J^x eigenvalue +-1/2 and <s^2> = <tau^2> = 3/8.
std::pair<Eigen::Vector4cd, Eigen::Vector4cd> phi_tilde_states(const PseudospinMatrices& ps);

/// Entanglement entropy between the s-carrying and tau-carrying factors of
/// a two-mode state (each factor spanned by {0, up, down}).
double stau_entanglement_entropy(const Eigen::Vector4cd& state);

}  // namespace kitaev
