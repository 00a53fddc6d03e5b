#include "kitaev/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace kitaev {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double jw_sign(long state, int site) {
  const unsigned long below = static_cast<unsigned long>(state) & ((1ul << site) - 1ul);
  return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

Eigen::MatrixXcd to_dense(const SparseOp& op) { return Eigen::MatrixXcd(op); }

}  // namespace

FockSpace::FockSpace(const LatticeSpec& spec) : spec_(spec) {
  if (spec.sites() > kMaxOracleSites)
    throw ResourceError("FockSpace: " + std::to_string(spec.sites()) + " sites imply dimension 2^" +
                        std::to_string(spec.sites()) + " beyond the cap of 2^" +
                        std::to_string(kMaxOracleSites));
  dim_ = 1l << spec.sites();

  // CAR self-check on a sampled pair at build time.
  const int last = spec.sites() - 1;
  const SparseOp c0 = annihilation(0);
  const SparseOp cl_dag = creation(last);
  auto max_abs_entry = [](const SparseOp& m) {
    double norm = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseOp::InnerIterator it(m, k); it; ++it) norm = std::max(norm, std::abs(it.value()));
    return norm;
  };
  const SparseOp same = SparseOp(SparseOp(c0 * SparseOp(c0.adjoint())) +
                                 SparseOp(SparseOp(c0.adjoint()) * c0)) -
                        identity();
  double dev = max_abs_entry(same);
  if (last > 0) {
    const SparseOp cross = SparseOp(SparseOp(c0 * cl_dag) + SparseOp(cl_dag * c0));
    dev = std::max(dev, max_abs_entry(cross));
  }
  if (dev > 1e-12) throw InvariantError("fock_space.car", dev);
}

SparseOp FockSpace::annihilation(int site) const {
  if (site < 0 || site >= spec_.sites())
    throw DomainError("annihilation: site " + std::to_string(site) + " out of range");
  std::vector<Eigen::Triplet<std::complex<double>>> entries;
  entries.reserve(static_cast<std::size_t>(dim_ / 2));
  const long mask = 1l << site;
  for (long s = 0; s < dim_; ++s)
    if (s & mask) entries.emplace_back(s & ~mask, s, jw_sign(s, site));
  SparseOp op(dim_, dim_);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

SparseOp FockSpace::creation(int site) const {
  return SparseOp(annihilation(site).adjoint());
}

SparseOp FockSpace::majorana_a(int site) const {
  return SparseOp(creation(site) + annihilation(site));
}

SparseOp FockSpace::majorana_b(int site) const {
  return SparseOp(-kI * (creation(site) - annihilation(site)));
}

SparseOp FockSpace::identity() const {
  SparseOp id(dim_, dim_);
  id.setIdentity();
  return id;
}

SparseOp FockSpace::collective_annihilation(int row) const {
  if (row < 1 || row > spec_.rows)
    throw DomainError("collective_annihilation: row " + std::to_string(row) + " out of range");
  SparseOp sum(dim_, dim_);
  for (int n = 1; n <= spec_.cols; ++n) sum = sum + annihilation(site_index(spec_, row, n));
  return SparseOp(sum / std::sqrt(static_cast<double>(spec_.cols)));
}

Eigen::VectorXcd FockSpace::vacuum() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
  v(0) = 1.0;
  return v;
}

SparseOp build_manybody_h(const FockSpace& space, const CouplingParams& p) {
  const LatticeSpec& spec = space.spec();
  SparseOp h(space.dim(), space.dim());

  double constant = -p.mu * spec.sites();
  for (int site = 0; site < spec.sites(); ++site) {
    const SparseOp n_op = SparseOp(space.creation(site) * space.annihilation(site));
    h = h + SparseOp(2.0 * p.mu * n_op);
  }

  for (int m = 1; m <= spec.rows; ++m) {
    for (int n = 1; n <= spec.cols; ++n) {
      const int from = site_index(spec, m, n);
      auto add_bond = [&](int to) {
        if (from == to) {
          // self bond (N = 1): -2t c^dag c; the pairing part vanishes
          h = h + SparseOp(-2.0 * p.t * SparseOp(space.creation(from) * space.annihilation(from)));
          return;
        }
        const SparseOp hop = SparseOp(space.creation(from) * space.annihilation(to));
        const SparseOp pair = SparseOp(space.annihilation(from) * space.annihilation(to));
        h = h + SparseOp(-p.t * (hop + SparseOp(hop.adjoint())));
        h = h + SparseOp(-p.delta * (pair + SparseOp(pair.adjoint())));
      };
      if (m + 1 <= spec.rows) add_bond(site_index(spec, m + 1, n));
      add_bond(site_index(spec, m, n + 1));
    }
  }

  h = h + SparseOp(constant * space.identity());
  return h;
}

SparseOp manybody_from_majorana(const FockSpace& space, const MajoranaForm& form) {
  const LatticeSpec& spec = space.spec();
  const int count = spec.majorana_count();
  std::vector<SparseOp> gamma;
  gamma.reserve(static_cast<std::size_t>(count));
  for (int site = 0; site < spec.sites(); ++site) {
    gamma.push_back(space.majorana_a(site));
    gamma.push_back(space.majorana_b(site));
  }
  SparseOp h(space.dim(), space.dim());
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j)
      if (form.coeff(i, j) != 0.0)
        h = h + SparseOp((kI * form.coeff(i, j) / 4.0) * SparseOp(gamma[static_cast<std::size_t>(i)] *
                                                                  gamma[static_cast<std::size_t>(j)]));
  h = h + SparseOp(form.offset * space.identity());
  return h;
}

SparseOp mode_operator_fock(const FockSpace& space, const ModeOperator& mode) {
  const LatticeSpec& spec = space.spec();
  SparseOp d(space.dim(), space.dim());
  for (int site = 0; site < spec.sites(); ++site) {
    const std::complex<double> wa = mode.weights(2 * site);
    const std::complex<double> wb = mode.weights(2 * site + 1);
    if (wa != 0.0) d = d + SparseOp(wa * space.majorana_a(site));
    if (wb != 0.0) d = d + SparseOp(wb * space.majorana_b(site));
  }
  return d;
}

double commutator_norm(const SparseOp& x, const SparseOp& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DomainError("commutator_norm: dimension mismatch " + std::to_string(x.rows()) + " vs " +
                      std::to_string(y.rows()));
  SparseOp c = SparseOp(x * y) - SparseOp(y * x);
  double norm = 0.0;
  for (int k = 0; k < c.outerSize(); ++k)
    for (SparseOp::InnerIterator it(c, k); it; ++it) norm = std::max(norm, std::abs(it.value()));
  return norm;
}

std::vector<double> dense_spectrum(const SparseOp& h) {
  if (h.rows() > kDenseDim)
    throw ComputationalError("dense_spectrum: dimension " + std::to_string(h.rows()) +
                             " above the dense threshold " + std::to_string(kDenseDim) +
                             "; use lanczos_lowest");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
  if (solver.info() != Eigen::Success)
    throw ComputationalError("dense_spectrum: eigensolver failed on dimension " +
                             std::to_string(h.rows()));
  const Eigen::VectorXd vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

std::vector<double> lanczos_lowest(const SparseOp& h, int count, int max_iter, double tol) {
  const long dim = h.rows();
  max_iter = static_cast<int>(std::min<long>(max_iter, dim));
  count = static_cast<int>(std::min<long>(count, dim));

  std::mt19937_64 rng(0x5eed5eedULL);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
  Eigen::VectorXcd q = Eigen::VectorXcd::NullaryExpr(
      dim, [&](Eigen::Index) { return std::complex<double>(uniform(), uniform()); });
  q.normalize();

  Eigen::MatrixXcd basis(dim, max_iter);
  std::vector<double> alpha;
  std::vector<double> beta;

  basis.col(0) = q;
  for (int j = 0; j < max_iter; ++j) {
    Eigen::VectorXcd w = h * basis.col(j);
    alpha.push_back(std::real(basis.col(j).dot(w)));
    // full reorthogonalization
    for (int r = 0; r <= j; ++r) w -= basis.col(r).dot(w) * basis.col(r);
    for (int r = 0; r <= j; ++r) w -= basis.col(r).dot(w) * basis.col(r);
    const double b = w.norm();

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i > 0) tri(i, i - 1) = tri(i - 1, i) = beta[static_cast<std::size_t>(i - 1)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(tri);
    const int have = std::min<int>(count, j + 1);
    std::vector<double> values(ritz.eigenvalues().data(), ritz.eigenvalues().data() + have);

    // residual bound of each Ritz pair: beta_j * |last component|
    bool converged = have == count;
    for (int i = 0; i < have && converged; ++i) {
      const double bound = b * std::abs(ritz.eigenvectors()(j, i));
      converged = bound <= tol * (1.0 + std::abs(values[static_cast<std::size_t>(i)]));
    }
    if (converged || b < 1e-13 || j + 1 == max_iter) {
      if (converged || b < 1e-13) return values;
      break;
    }
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  throw ComputationalError("lanczos_lowest: no convergence after " + std::to_string(max_iter) +
                           " iterations");
}

std::vector<EnergyCluster> cluster_energies(const std::vector<double>& energies, double rel) {
  std::vector<double> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  std::vector<EnergyCluster> clusters;
  for (double e : sorted) {
    if (!clusters.empty() &&
        std::abs(e - clusters.back().energy) <= rel * (1.0 + std::abs(e))) {
      ++clusters.back().multiplicity;
    } else {
      clusters.push_back({e, 1});
    }
  }
  return clusters;
}

std::vector<EnergyCluster> degeneracy_multiplicities(const LatticeSpec& spec,
                                                     const CouplingParams& p) {
  const FockSpace space(spec);
  return cluster_energies(dense_spectrum(build_manybody_h(space, p)));
}

Eigen::VectorXcd d_vacuum_state(const FockSpace& space) {
  Eigen::VectorXcd state = space.vacuum();
  for (int m = 1; m < space.spec().rows; ++m)
    state = mode_operator_fock(space, bulk_mode_operator(space.spec(), m)) * state;
  const double norm = state.norm();
  if (norm < 1e-14)
    throw ComputationalError("d_vacuum_state: projection of |Vac> onto the bulk-mode vacuum vanished");
  return state / norm;
}

EdgePairStates edge_pair_states(const FockSpace& space) {
  const LatticeSpec& spec = space.spec();
  if (spec.rows < 2)
    throw DomainError("edge_pair_states: needs two distinct edge rows (M >= 2)");
  EdgePairStates result;

  const Eigen::VectorXcd vac = space.vacuum();
  const SparseOp c1_dag = SparseOp(space.collective_annihilation(1).adjoint());
  const SparseOp cm_dag = SparseOp(space.collective_annihilation(spec.rows).adjoint());
  result.m_vac = (c1_dag * vac - cm_dag * vac) / std::sqrt(2.0);

  const SparseOp d = mode_operator_fock(space, analytic_edge_operator(spec));
  result.annihilation_residual = (d * result.m_vac).norm();
  result.particle = SparseOp(d.adjoint()) * result.m_vac;
  result.particle.normalize();

  result.entropy_m_vac = two_mode_entropy(space, result.m_vac);
  result.entropy_particle = two_mode_entropy(space, result.particle);
  return result;
}

double two_mode_entropy(const FockSpace& space, const Eigen::VectorXcd& state) {
  const LatticeSpec& spec = space.spec();
  if (spec.rows < 2)
    throw DomainError("two_mode_entropy: needs two distinct edge rows (M >= 2)");
  const Eigen::VectorXcd vac = space.vacuum();
  const SparseOp c1_dag = SparseOp(space.collective_annihilation(1).adjoint());
  const SparseOp cm_dag = SparseOp(space.collective_annihilation(spec.rows).adjoint());

  // Orthonormal frame {|Vac>, c1^dag|Vac>, cM^dag|Vac>, c1^dag cM^dag|Vac>}.
  Eigen::MatrixXcd frame(space.dim(), 4);
  frame.col(0) = vac;
  frame.col(1) = c1_dag * vac;
  frame.col(2) = cm_dag * vac;
  frame.col(3) = c1_dag * (cm_dag * vac);

  const Eigen::Vector4cd amp = frame.adjoint() * state;
  const double leak = (state - frame * amp).norm();
  if (leak > 1e-10)
    throw InvariantError("two_mode_entropy.subspace", leak,
                         "state leaks out of the two-mode subspace");

  // 2x2 reduced density matrix of the first collective mode; basis mapping
  // |1>=|00>, |2>=|10>, |3>=|01>, |4>=|11>.
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const std::complex<double> psi[2][2] = {{amp(0), amp(2)}, {amp(1), amp(3)}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int b = 0; b < 2; ++b) rho(i, j) += psi[i][b] * std::conj(psi[j][b]);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho);
  double entropy = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double prob = solver.eigenvalues()(i);
    if (prob > 1e-15) entropy -= prob * std::log(prob);
  }
  return entropy;
}

}  // namespace kitaev
