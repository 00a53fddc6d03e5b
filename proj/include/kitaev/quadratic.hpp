#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kitaev/lattice.hpp"

namespace kitaev {

/// Hopping t, pairing delta, chemical potential mu. No sign restriction.
struct CouplingParams {
  double t = 1.0;
  double delta = 1.0;
  double mu = 1.0;

  bool sweet_spot(double tol = 0.0) const {
    return std::abs(t - delta) <= tol && std::abs(t - mu) <= tol;
  }
};

/// Bogoliubov-de Gennes matrix over (particle block, hole block), plus the
/// additive constant such that the many-body H equals
/// (1/2) Psi^dag matrix Psi + offset.
struct NambuForm {
  LatticeSpec spec;
  CouplingParams params;
  Eigen::MatrixXcd matrix;  // 2MN x 2MN Hermitian
  double offset = 0.0;
};

/// Real antisymmetric coefficient matrix with the convention
/// H = (i/4) gamma^T coeff gamma + offset, gamma ordered per majorana_index.
struct MajoranaForm {
  LatticeSpec spec;
  CouplingParams params;
  Eigen::MatrixXd coeff;  // 2MN x 2MN, coeff^T = -coeff exactly
  double offset = 0.0;
};

/// Single-particle energies. `eps` is the nonnegative branch (MN values,
/// ascending); `full` the complete +- spectrum (2MN values, ascending).
/// Ground energy = offset - (1/2) sum eps.
struct SpectrumResult {
  std::vector<double> eps;
  std::vector<double> full;
  double ground_energy = 0.0;
  double offset = 0.0;
};

NambuForm build_nambu(const LatticeSpec& spec, const CouplingParams& p);
MajoranaForm build_majorana(const LatticeSpec& spec, const CouplingParams& p);

SpectrumResult single_particle_spectrum(const MajoranaForm& form);
SpectrumResult single_particle_spectrum(const NambuForm& form);

/// Scale-aware zero threshold: rel * (1 + ||A||_2).
double zero_tolerance(const MajoranaForm& form, double rel = 1e-10);

struct EquivalenceReport {
  double max_spectrum_dev = 0.0;
  double ground_dev = 0.0;
  double tolerance = 0.0;
};

/// Diagonalizes both representations independently and checks that the
/// sorted spectra and ground energies agree. Throws InvariantError on
/// mismatch beyond 1e-10 * (1 + max eps).
EquivalenceReport representation_equivalence(const LatticeSpec& spec, const CouplingParams& p);

}  // namespace kitaev
