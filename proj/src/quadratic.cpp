#include "kitaev/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace kitaev {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Directed bonds (r -> r+a) for both lattice vectors, cylinder boundaries.
// For N = 1 the horizontal neighbor is the site itself (self bond).
template <typename F>
void for_each_bond(const LatticeSpec& spec, F&& visit) {
  for (int m = 1; m <= spec.rows; ++m) {
    for (int n = 1; n <= spec.cols; ++n) {
      const int from = site_index(spec, m, n);
      if (m + 1 <= spec.rows) visit(m, n, from, site_index(spec, m + 1, n));
      visit(m, n, from, site_index(spec, m, n + 1));
    }
  }
}

std::vector<double> nonnegative_branch(const Eigen::VectorXd& full) {
  // Pair eigenvalues by absolute value; the spectrum is +-symmetric, so each
  // pair contributes one quasiparticle energy.
  std::vector<double> mags(full.data(), full.data() + full.size());
  for (double& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end());
  std::vector<double> eps;
  eps.reserve(mags.size() / 2);
  for (std::size_t k = 0; k + 1 < mags.size(); k += 2)
    eps.push_back(0.5 * (mags[k] + mags[k + 1]));
  return eps;
}

SpectrumResult spectrum_from_hermitian(const Eigen::MatrixXcd& h, double offset) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw ComputationalError("eigensolver failed to converge on a " +
                             std::to_string(h.rows()) + "-dim Hermitian matrix, max |entry| = " +
                             std::to_string(h.cwiseAbs().maxCoeff()));
  SpectrumResult result;
  const Eigen::VectorXd vals = solver.eigenvalues();
  result.full.assign(vals.data(), vals.data() + vals.size());
  result.eps = nonnegative_branch(vals);
  result.offset = offset;
  double sum = 0.0;
  for (double e : result.eps) sum += e;
  result.ground_energy = offset - 0.5 * sum;
  return result;
}

}  // namespace

NambuForm build_nambu(const LatticeSpec& spec, const CouplingParams& p) {
  const int sites = spec.sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(sites, sites);
  Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(sites, sites);

  for (int r = 0; r < sites; ++r) h(r, r) += 2.0 * p.mu;
  for_each_bond(spec, [&](int, int, int from, int to) {
    if (from == to) {
      h(from, from) += -2.0 * p.t;  // self bond: pairing cancels exactly
      return;
    }
    h(from, to) += -p.t;
    h(to, from) += -p.t;
    pair(from, to) += -p.delta;
    pair(to, from) += p.delta;
  });

  NambuForm form;
  form.spec = spec;
  form.params = p;
  form.offset = 0.5 * h.trace() - p.mu * sites;
  form.matrix = Eigen::MatrixXcd::Zero(2 * sites, 2 * sites);
  form.matrix.topLeftCorner(sites, sites) = h;
  form.matrix.bottomRightCorner(sites, sites) = -h;
  form.matrix.topRightCorner(sites, sites) = -pair;
  form.matrix.bottomLeftCorner(sites, sites) = pair;
  return form;
}

MajoranaForm build_majorana(const LatticeSpec& spec, const CouplingParams& p) {
  const int dim = spec.majorana_count();
  MajoranaForm form;
  form.spec = spec;
  form.params = p;
  form.coeff = Eigen::MatrixXd::Zero(dim, dim);

  auto add = [&](int i, int j, double v) {
    form.coeff(i, j) += v;
    form.coeff(j, i) -= v;
  };

  for (int m = 1; m <= spec.rows; ++m)
    for (int n = 1; n <= spec.cols; ++n)
      add(majorana_index(spec, m, n, Flavor::A), majorana_index(spec, m, n, Flavor::B),
          -2.0 * p.mu);

  for_each_bond(spec, [&](int m, int n, int from, int to) {
    const int a_from = 2 * from;
    const int b_from = 2 * from + 1;
    const int a_to = 2 * to;
    const int b_to = 2 * to + 1;
    (void)m;
    (void)n;
    if (from == to) {
      // -2t c^dag c = -t + i t a b: coefficient merges with the onsite term.
      add(a_from, b_from, 2.0 * p.t);
      form.offset += -p.t;
      return;
    }
    add(a_from, b_to, p.t + p.delta);
    add(a_to, b_from, p.t - p.delta);
  });

  return form;
}

SpectrumResult single_particle_spectrum(const MajoranaForm& form) {
  const Eigen::MatrixXcd h = kI * form.coeff.cast<std::complex<double>>();
  return spectrum_from_hermitian(h, form.offset);
}

SpectrumResult single_particle_spectrum(const NambuForm& form) {
  return spectrum_from_hermitian(form.matrix, form.offset);
}

double zero_tolerance(const MajoranaForm& form, double rel) {
  const SpectrumResult s = single_particle_spectrum(form);
  const double norm2 = s.eps.empty() ? 0.0 : s.eps.back();
  return rel * (1.0 + norm2);
}

EquivalenceReport representation_equivalence(const LatticeSpec& spec, const CouplingParams& p) {
  const SpectrumResult nambu = single_particle_spectrum(build_nambu(spec, p));
  const SpectrumResult majorana = single_particle_spectrum(build_majorana(spec, p));

  double max_eps = 0.0;
  for (double e : nambu.eps) max_eps = std::max(max_eps, std::abs(e));

  EquivalenceReport report;
  report.tolerance = 1e-10 * (1.0 + max_eps);
  for (std::size_t k = 0; k < nambu.full.size(); ++k)
    report.max_spectrum_dev =
        std::max(report.max_spectrum_dev, std::abs(nambu.full[k] - majorana.full[k]));
  report.ground_dev = std::abs(nambu.ground_energy - majorana.ground_energy);

  if (report.max_spectrum_dev > report.tolerance)
    throw InvariantError("representation_equivalence.spectrum", report.max_spectrum_dev);
  if (report.ground_dev > report.tolerance)
    throw InvariantError("representation_equivalence.ground_energy", report.ground_dev);
  return report;
}

}  // namespace kitaev
