#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kitaev/lattice.hpp"

namespace kitaev {

/// Wave numbers K = 2*pi*l/N for l = 0..N-1, ascending. K = 0 first.
std::vector<double> k_values(int cols);

/// One momentum block of the sweet-spot Majorana matrix: the 2M x 2M
/// Hermitian matrix coupling the (a_{m,K}, b_{m,K}) mode columns, basis
/// ordered a_{1..M} then b_{1..M}.
struct FourierBlock {
  double k = 0.0;
  int rows = 0;
  Eigen::MatrixXcd matrix;
  bool self_conjugate = false;  // true iff K in {0, pi}

  /// All 2M block eigenvalues, ascending.
  std::vector<double> energies() const;
  /// Nonnegative quasiparticle branch (M values, ascending).
  std::vector<double> quasiparticle_energies() const;
};

/// Builds h^K for the sweet spot t = delta = mu. K must lie on the grid
/// k_values(spec.cols) (DomainError otherwise).
FourierBlock build_block(const LatticeSpec& spec, double t, double k);

/// Unitary Fourier change of basis on the 2MN Majorana indices; columns
/// ordered (l, a_{1..M}, b_{1..M}) with phase e^{iKn}/sqrt(N).
Eigen::MatrixXcd fourier_unitary(const LatticeSpec& spec);

struct BlockDecompositionReport {
  double max_off_block = 0.0;
  double max_block_mismatch = 0.0;
  double spectrum_union_dev = 0.0;
  double max_commutator = 0.0;
  double tolerance = 0.0;
};

/// Checks that U^H (iA) U is block diagonal with blocks equal to
/// build_block, that the union of block spectra reproduces the full
/// spectrum, and that embedded blocks commute pairwise.
BlockDecompositionReport verify_block_decomposition(const LatticeSpec& spec, double t);

}  // namespace kitaev
