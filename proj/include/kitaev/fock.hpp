#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "kitaev/edge_modes.hpp"
#include "kitaev/quadratic.hpp"

namespace kitaev {

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;

/// Hard cap on exact-diagonalization problem sizes.
inline constexpr int kMaxOracleSites = 14;
/// Dense diagonalization threshold; larger problems use the Lanczos path.
inline constexpr long kDenseDim = 1024;

/// Occupation-number basis over 2^(MN) states. Basis ordering: bit p of the
/// state index is the occupation of site p = flat site index, with the
/// Jordan-Wigner string running over lower bits.
class FockSpace {
 public:
  explicit FockSpace(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  long dim() const { return dim_; }

  SparseOp annihilation(int site) const;  // c_p
  SparseOp creation(int site) const;      // c_p^dag
  SparseOp majorana_a(int site) const;    // c^dag + c
  SparseOp majorana_b(int site) const;    // -i (c^dag - c)
  SparseOp identity() const;

  /// Collective edge operator c_{row,0} = N^{-1/2} sum_n c_{row,n}.
  SparseOp collective_annihilation(int row) const;

  Eigen::VectorXcd vacuum() const;

 private:
  LatticeSpec spec_;
  long dim_;
};

/// Many-body H assembled from the fermionic Hamiltonian (hopping, pairing,
/// chemical potential, constant).
SparseOp build_manybody_h(const FockSpace& space, const CouplingParams& p);

/// Many-body reconstruction (i/4) gamma^T A gamma + offset of a quadratic
/// form; equals build_manybody_h for matching parameters.
SparseOp manybody_from_majorana(const FockSpace& space, const MajoranaForm& form);

/// Fock matrix of a mode operator d = sum_j w_j gamma_j.
SparseOp mode_operator_fock(const FockSpace& space, const ModeOperator& mode);

/// max |XY - YX|.
double commutator_norm(const SparseOp& x, const SparseOp& y);

/// Full spectrum of a Hermitian Fock operator, ascending (dense path;
/// ComputationalError above kDenseDim).
std::vector<double> dense_spectrum(const SparseOp& h);

/// Lowest `count` eigenvalues via Lanczos with full reorthogonalization.
/// Single-vector iteration: exactly degenerate levels appear once, so the
/// result lists distinct extremal eigenvalues.
std::vector<double> lanczos_lowest(const SparseOp& h, int count, int max_iter = 300,
                                   double tol = 1e-10);

struct EnergyCluster {
  double energy = 0.0;
  int multiplicity = 0;
};

/// Single-linkage clustering with tolerance rel * (1 + |E|).
std::vector<EnergyCluster> cluster_energies(const std::vector<double>& energies,
                                            double rel = 1e-8);

std::vector<EnergyCluster> degeneracy_multiplicities(const LatticeSpec& spec,
                                                     const CouplingParams& p);

/// Normalized vacuum of the bulk modes d_1..d_{M-1}: Lambda prod_j d_j |Vac>.
Eigen::VectorXcd d_vacuum_state(const FockSpace& space);

struct EdgePairStates {
  Eigen::VectorXcd m_vac;          // 2^{-1/2} (c_{1,0}^dag - c_{M,0}^dag) |Vac>
  Eigen::VectorXcd particle;       // d_M^dag |M-Vac>, normalized
  double entropy_m_vac = 0.0;      // two-mode entanglement entropy
  double entropy_particle = 0.0;
  double annihilation_residual = 0.0;  // || d_M |M-Vac> ||
};

EdgePairStates edge_pair_states(const FockSpace& space);

/// Mode-entanglement entropy between the two collective edge modes for a
/// state inside their 4-dim subspace (InvariantError if the state leaks out).
double two_mode_entropy(const FockSpace& space, const Eigen::VectorXcd& state);

}  // namespace kitaev
