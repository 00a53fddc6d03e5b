#include "kitaev/edge_modes.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "kitaev/fourier.hpp"

namespace kitaev {

namespace {

// Uniform K = 0 Majorana combination of one row and flavor, as a real unit
// vector over the 2MN basis.
Eigen::VectorXd collective_row_vector(const LatticeSpec& spec, int m, Flavor f) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(spec.majorana_count());
  const double w = 1.0 / std::sqrt(static_cast<double>(spec.cols));
  for (int n = 1; n <= spec.cols; ++n) v(majorana_index(spec, m, n, f)) = w;
  return v;
}

ModeOperator make_mode(const LatticeSpec& spec, const Eigen::VectorXd& a_part,
                       const Eigen::VectorXd& b_part) {
  ModeOperator mode;
  mode.spec = spec;
  mode.weights = 0.5 * (a_part.cast<std::complex<double>>() -
                        std::complex<double>{0.0, 1.0} * b_part.cast<std::complex<double>>());
  return mode;
}

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

}  // namespace

bool ModeOperator::is_zero_mode(const MajoranaForm& form, double tol) const {
  const Eigen::VectorXd re = weights.real();
  const Eigen::VectorXd im = weights.imag();
  const double scale = std::max(1.0, form.coeff.cwiseAbs().maxCoeff());
  return (form.coeff * re).cwiseAbs().maxCoeff() <= tol * scale &&
         (form.coeff * im).cwiseAbs().maxCoeff() <= tol * scale;
}

ModeOperator analytic_edge_operator(const LatticeSpec& spec) {
  // The unpaired K = 0 directions are read off the sweet-spot block: its
  // structurally zero columns mark the edge Majoranas.
  const FourierBlock block = build_block(spec, 1.0, 0.0);
  const int m_rows = spec.rows;
  int a_row = -1;
  int b_row = -1;
  for (int m = 0; m < m_rows; ++m) {
    if (block.matrix.col(m).cwiseAbs().maxCoeff() == 0.0) a_row = m + 1;
    if (block.matrix.col(m_rows + m).cwiseAbs().maxCoeff() == 0.0) b_row = m + 1;
  }
  if (a_row < 0 || b_row < 0)
    throw InvariantError("analytic_edge_operator.unpaired_directions", 0.0,
                         "no structurally null K=0 column found");
  return make_mode(spec, collective_row_vector(spec, a_row, Flavor::A),
                   collective_row_vector(spec, b_row, Flavor::B));
}

ModeOperator bulk_mode_operator(const LatticeSpec& spec, int m) {
  if (m < 1 || m >= spec.rows)
    throw DomainError("bulk_mode_operator: m=" + std::to_string(m) + " must be in [1, M-1]");
  return make_mode(spec, collective_row_vector(spec, m, Flavor::A),
                   collective_row_vector(spec, m + 1, Flavor::B));
}

ZeroModeReport detect_zero_modes(const MajoranaForm& form, double tol) {
  ZeroModeReport report;
  const SpectrumResult spectrum = single_particle_spectrum(form);
  const double norm2 = spectrum.eps.empty() ? 0.0 : spectrum.eps.back();
  report.tolerance = tol < 0.0 ? 1e-10 * (1.0 + norm2) : tol;

  report.splitting = spectrum.eps.empty() ? 0.0 : spectrum.eps.front();
  report.gap = 0.0;
  for (double e : spectrum.eps) {
    if (e > report.tolerance) {
      report.gap = e;
      break;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(form.coeff, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  std::vector<int> null_cols;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) <= report.tolerance) null_cols.push_back(i);
  report.count = static_cast<int>(null_cols.size());
  if (report.count == 0) return report;

  Eigen::MatrixXd kernel(form.coeff.rows(), report.count);
  for (int i = 0; i < report.count; ++i)
    kernel.col(i) = svd.matrixV().col(null_cols[static_cast<std::size_t>(i)]);

  // Rotate the kernel basis to flavor-pure representatives: diagonalize the
  // A-flavor projector restricted to the kernel.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(report.count, report.count);
  for (int i = 0; i < report.count; ++i)
    for (int j = 0; j < report.count; ++j) {
      double sum = 0.0;
      for (int q = 0; q < kernel.rows(); q += 2) sum += kernel(q, i) * kernel(q, j);
      gram(i, j) = sum;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rotation(gram);
  const Eigen::MatrixXd rotated = kernel * rotation.eigenvectors();

  for (int i = 0; i < report.count; ++i) {
    Eigen::VectorXd v = rotated.col(i);
    fix_sign(v);
    report.profiles.push_back(localization_profile(v, form.spec));
    report.participation.push_back(1.0 / v.array().pow(4).sum());
    report.kernel.push_back(std::move(v));
  }
  return report;
}

std::vector<double> localization_profile(const ModeOperator& mode) {
  return localization_profile(mode.weights.cwiseAbs(), mode.spec);
}

std::vector<double> localization_profile(const Eigen::VectorXd& majorana_vec,
                                         const LatticeSpec& spec) {
  std::vector<double> weights(static_cast<std::size_t>(spec.rows), 0.0);
  double total = 0.0;
  for (int m = 1; m <= spec.rows; ++m) {
    double row = 0.0;
    for (int n = 1; n <= spec.cols; ++n) {
      row += majorana_vec(majorana_index(spec, m, n, Flavor::A)) *
             majorana_vec(majorana_index(spec, m, n, Flavor::A));
      row += majorana_vec(majorana_index(spec, m, n, Flavor::B)) *
             majorana_vec(majorana_index(spec, m, n, Flavor::B));
    }
    weights[static_cast<std::size_t>(m - 1)] = row;
    total += row;
  }
  if (total > 0.0)
    for (double& w : weights) w /= total;
  return weights;
}

std::vector<SweepPoint> splitting_sweep(const LatticeSpec& spec,
                                        const std::vector<CouplingParams>& grid, int jobs) {
  std::vector<SweepPoint> table(grid.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));

  auto evaluate = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < grid.size(); i += stride) {
      const MajoranaForm form = build_majorana(spec, grid[i]);
      const ZeroModeReport report = detect_zero_modes(form);
      table[i] = {grid[i], report.splitting, report.gap};
    }
  };

  if (workers == 1) {
    evaluate(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(evaluate, static_cast<std::size_t>(w), static_cast<std::size_t>(workers));
    for (std::thread& th : pool) th.join();
  }
  return table;
}

}  // namespace kitaev
