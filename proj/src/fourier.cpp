#include "kitaev/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kitaev/quadratic.hpp"

namespace kitaev {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int k_grid_label(int cols, double k) {
  const double l = k * cols / kTwoPi;
  const double rounded = std::round(l);
  if (std::abs(l - rounded) > 1e-9 || rounded < 0 || rounded >= cols)
    throw DomainError("wave number K=" + std::to_string(k) + " is not on the grid 2*pi*l/" +
                      std::to_string(cols));
  return static_cast<int>(rounded);
}

}  // namespace

std::vector<double> k_values(int cols) {
  if (cols < 1) throw DomainError("k_values: N must be >= 1, got " + std::to_string(cols));
  std::vector<double> ks(static_cast<std::size_t>(cols));
  for (int l = 0; l < cols; ++l) ks[static_cast<std::size_t>(l)] = kTwoPi * l / cols;
  return ks;
}

std::vector<double> FourierBlock::energies() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success)
    throw ComputationalError("block eigensolver failed at K=" + std::to_string(k));
  const Eigen::VectorXd vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

std::vector<double> FourierBlock::quasiparticle_energies() const {
  std::vector<double> mags = energies();
  for (double& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end());
  std::vector<double> eps;
  eps.reserve(mags.size() / 2);
  for (std::size_t i = 0; i + 1 < mags.size(); i += 2) eps.push_back(0.5 * (mags[i] + mags[i + 1]));
  return eps;
}

FourierBlock build_block(const LatticeSpec& spec, double t, double k) {
  const int label = k_grid_label(spec.cols, k);
  const int m_rows = spec.rows;

  FourierBlock block;
  block.k = k;
  block.rows = m_rows;
  block.self_conjugate = (label == 0) || (2 * label == spec.cols);
  block.matrix = Eigen::MatrixXcd::Zero(2 * m_rows, 2 * m_rows);

  // Coefficients of the sweet-spot Majorana matrix: onsite -2t, bonds +2t.
  // The horizontal family contributes 2t e^{iK}; at K = 0 it cancels the
  // onsite term exactly (this also covers the N = 1 self-wrap merge).
  const std::complex<double> phase = std::exp(kI * k);
  const std::complex<double> onsite = -2.0 * t + 2.0 * t * phase;
  for (int m = 0; m < m_rows; ++m) {
    std::complex<double> ab = kI * onsite;  // (m, A) -> (m, B)
    block.matrix(m, m_rows + m) = ab;
    block.matrix(m_rows + m, m) = std::conj(ab);
    if (m + 1 < m_rows) {
      ab = kI * 2.0 * t;  // (m, A) -> (m+1, B)
      block.matrix(m, m_rows + m + 1) = ab;
      block.matrix(m_rows + m + 1, m) = std::conj(ab);
    }
  }
  return block;
}

Eigen::MatrixXcd fourier_unitary(const LatticeSpec& spec) {
  const int m_rows = spec.rows;
  const int n_cols = spec.cols;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_cols));
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(spec.majorana_count(), spec.majorana_count());
  const std::vector<double> ks = k_values(n_cols);
  for (int l = 0; l < n_cols; ++l) {
    for (int m = 1; m <= m_rows; ++m) {
      for (int n = 1; n <= n_cols; ++n) {
        const std::complex<double> w = norm * std::exp(kI * (ks[static_cast<std::size_t>(l)] * n));
        const int col_a = l * 2 * m_rows + (m - 1);
        const int col_b = l * 2 * m_rows + m_rows + (m - 1);
        u(majorana_index(spec, m, n, Flavor::A), col_a) = w;
        u(majorana_index(spec, m, n, Flavor::B), col_b) = w;
      }
    }
  }
  return u;
}

BlockDecompositionReport verify_block_decomposition(const LatticeSpec& spec, double t) {
  const CouplingParams sweet{t, t, t};
  const MajoranaForm form = build_majorana(spec, sweet);
  const Eigen::MatrixXcd h_full = kI * form.coeff.cast<std::complex<double>>();
  const Eigen::MatrixXcd u = fourier_unitary(spec);
  const Eigen::MatrixXcd rotated = u.adjoint() * h_full * u;

  const int m_rows = spec.rows;
  const int n_cols = spec.cols;
  const int block_dim = 2 * m_rows;
  const std::vector<double> ks = k_values(n_cols);

  BlockDecompositionReport report;

  // (i) block diagonality and agreement with the closed-form blocks
  Eigen::MatrixXcd off = rotated;
  std::vector<FourierBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(n_cols));
  for (int l = 0; l < n_cols; ++l) {
    const Eigen::MatrixXcd sub = rotated.block(l * block_dim, l * block_dim, block_dim, block_dim);
    off.block(l * block_dim, l * block_dim, block_dim, block_dim).setZero();
    FourierBlock block = build_block(spec, t, ks[static_cast<std::size_t>(l)]);
    report.max_block_mismatch =
        std::max(report.max_block_mismatch, (sub - block.matrix).cwiseAbs().maxCoeff());
    blocks.push_back(std::move(block));
  }
  report.max_off_block = off.cwiseAbs().maxCoeff();

  // (ii) union of block spectra vs full spectrum
  std::vector<double> merged;
  merged.reserve(static_cast<std::size_t>(spec.majorana_count()));
  for (const FourierBlock& block : blocks) {
    const std::vector<double> vals = block.energies();
    merged.insert(merged.end(), vals.begin(), vals.end());
  }
  std::sort(merged.begin(), merged.end());
  const SpectrumResult full = single_particle_spectrum(form);
  double max_eps = full.eps.empty() ? 0.0 : full.eps.back();
  for (std::size_t i = 0; i < merged.size(); ++i)
    report.spectrum_union_dev =
        std::max(report.spectrum_union_dev, std::abs(merged[i] - full.full[i]));

  // (iii) embedded block commutators
  for (int l = 0; l < n_cols; ++l) {
    Eigen::MatrixXcd embedded_l = Eigen::MatrixXcd::Zero(rotated.rows(), rotated.cols());
    embedded_l.block(l * block_dim, l * block_dim, block_dim, block_dim) =
        blocks[static_cast<std::size_t>(l)].matrix;
    for (int l2 = l + 1; l2 < n_cols; ++l2) {
      Eigen::MatrixXcd embedded_l2 = Eigen::MatrixXcd::Zero(rotated.rows(), rotated.cols());
      embedded_l2.block(l2 * block_dim, l2 * block_dim, block_dim, block_dim) =
          blocks[static_cast<std::size_t>(l2)].matrix;
      const double comm =
          (embedded_l * embedded_l2 - embedded_l2 * embedded_l).cwiseAbs().maxCoeff();
      report.max_commutator = std::max(report.max_commutator, comm);
    }
  }

  report.tolerance = 1e-10 * (1.0 + max_eps);
  if (report.max_off_block > report.tolerance)
    throw InvariantError("block_decomposition.off_block", report.max_off_block);
  if (report.max_block_mismatch > report.tolerance)
    throw InvariantError("block_decomposition.block_mismatch", report.max_block_mismatch);
  if (report.spectrum_union_dev > report.tolerance)
    throw InvariantError("block_decomposition.spectrum_union", report.spectrum_union_dev);
  if (report.max_commutator > 1e-12)
    throw InvariantError("block_decomposition.commutator", report.max_commutator);
  return report;
}

}  // namespace kitaev
