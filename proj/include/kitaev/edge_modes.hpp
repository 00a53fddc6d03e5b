#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kitaev/quadratic.hpp"

namespace kitaev {

/// Coefficient vector of a fermionic mode operator d = sum_j w_j gamma_j
/// over the 2MN Majorana basis, normalized so that {d, d^dag} = 1
/// (sum |w_j|^2 = 1/2).
struct ModeOperator {
  LatticeSpec spec;
  Eigen::VectorXcd weights;

  /// True iff both Majorana component vectors lie in the kernel of A.
  bool is_zero_mode(const MajoranaForm& form, double tol) const;
};

/// Zero-energy edge operator built from the unpaired K = 0 directions of
/// the sweet-spot block (uniform 1/sqrt(N) sums over one edge row's A
/// flavor and the opposite edge row's B flavor).
ModeOperator analytic_edge_operator(const LatticeSpec& spec);

/// Bulk operator d_m pairing a_{m,0} with b_{m+1,0}, 1 <= m < M.
ModeOperator bulk_mode_operator(const LatticeSpec& spec, int m);

struct ZeroModeReport {
  int count = 0;
  std::vector<Eigen::VectorXd> kernel;            // flavor-pure representatives
  std::vector<std::vector<double>> profiles;      // per-mode row weights
  std::vector<double> participation;              // 1 / sum |v_i|^4
  double gap = 0.0;                               // min eps above tol
  double splitting = 0.0;                         // smallest eps
  double tolerance = 0.0;
};

/// Singular directions of A with sigma <= tol; tol < 0 selects the
/// scale-aware default 1e-10 * (1 + ||A||_2). Kernel representatives are
/// rotated to flavor-pure vectors and sign-fixed.
ZeroModeReport detect_zero_modes(const MajoranaForm& form, double tol = -1.0);

/// Row weight w(m) of a mode, normalized to sum 1.
std::vector<double> localization_profile(const ModeOperator& mode);
std::vector<double> localization_profile(const Eigen::VectorXd& majorana_vec,
                                         const LatticeSpec& spec);

struct SweepPoint {
  CouplingParams params;
  double splitting = 0.0;
  double gap = 0.0;
};

/// Smallest quasiparticle energy and gap for each grid point; evaluated in
/// parallel over at most `jobs` threads, output in grid order.
std::vector<SweepPoint> splitting_sweep(const LatticeSpec& spec,
                                        const std::vector<CouplingParams>& grid, int jobs = 1);

}  // namespace kitaev
