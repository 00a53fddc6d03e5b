#include "kitaev/pseudospin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kitaev {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

const char* kAxisNames[3] = {"x", "y", "z"};

template <typename Matrix>
double max_abs(const Matrix& m) {
  return m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseOp& m) {
  double norm = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseOp::InnerIterator it(m, k); it; ++it) norm = std::max(norm, std::abs(it.value()));
  return norm;
}

// Eigenvector of the restriction of `op` to span{e_i, e_j} with the given
// eigenvalue sign, phase-fixed so the e_i component is positive.
Eigen::Vector4cd sector_eigenvector(const Eigen::Matrix4cd& op, int i, int j, double sign) {
  Eigen::Matrix2cd sub;
  sub << op(i, i), op(i, j), op(j, i), op(j, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(sub);
  const int which = sign > 0 ? 1 : 0;
  Eigen::Vector2cd v = solver.eigenvectors().col(which);
  if (std::abs(v(0)) > 1e-12) v *= std::conj(v(0)) / std::abs(v(0));
  Eigen::Vector4cd out = Eigen::Vector4cd::Zero();
  out(i) = v(0);
  out(j) = v(1);
  return out;
}

}  // namespace

TwoModeBasis two_mode_basis(const FockSpace& space) {
  if (space.spec().rows < 2)
    throw DomainError("two_mode_basis: needs two distinct edge rows (M >= 2)");
  const Eigen::VectorXcd vac = space.vacuum();
  const SparseOp c1_dag = SparseOp(space.collective_annihilation(1).adjoint());
  const SparseOp cm_dag = SparseOp(space.collective_annihilation(space.spec().rows).adjoint());
  TwoModeBasis basis;
  basis.frame.resize(space.dim(), 4);
  basis.frame.col(0) = vac;
  basis.frame.col(1) = c1_dag * vac;
  basis.frame.col(2) = cm_dag * vac;
  basis.frame.col(3) = c1_dag * (cm_dag * vac);
  return basis;
}

Eigen::Matrix4cd PseudospinMatrices::s_squared() const {
  return s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
}

Eigen::Matrix4cd PseudospinMatrices::tau_squared() const {
  return tau[0] * tau[0] + tau[1] * tau[1] + tau[2] * tau[2];
}

PseudospinMatrices pseudospin_matrices() {
  PseudospinMatrices ps;
  for (auto& m : ps.s) m.setZero();
  for (auto& m : ps.tau) m.setZero();

  // s^x = (c1^dag cM + cM^dag c1)/2 and cyclic partners: acts on {|2>,|3>}.
  ps.s[0](2, 1) = 0.5;
  ps.s[0](1, 2) = 0.5;
  ps.s[1](2, 1) = 0.5 * kI;
  ps.s[1](1, 2) = -0.5 * kI;
  ps.s[2](1, 1) = 0.5;
  ps.s[2](2, 2) = -0.5;

  // tau^x = (c1^dag cM^dag + cM c1)/2, pair orientation such that
  // J^x = s^x + tau^x is the conserved edge observable; acts on {|1>,|4>}.
  ps.tau[0](3, 0) = 0.5;
  ps.tau[0](0, 3) = 0.5;
  ps.tau[1](3, 0) = -0.5 * kI;
  ps.tau[1](0, 3) = 0.5 * kI;
  ps.tau[2](3, 3) = 0.5;
  ps.tau[2](0, 0) = -0.5;

  for (int axis = 0; axis < 3; ++axis) ps.j[axis] = ps.s[axis] + ps.tau[axis];
  return ps;
}

SparseOp PseudospinSet::s_squared_fock() const {
  return SparseOp(SparseOp(s_fock[0] * s_fock[0]) + SparseOp(s_fock[1] * s_fock[1]) +
                  SparseOp(s_fock[2] * s_fock[2]));
}

SparseOp PseudospinSet::tau_squared_fock() const {
  return SparseOp(SparseOp(tau_fock[0] * tau_fock[0]) + SparseOp(tau_fock[1] * tau_fock[1]) +
                  SparseOp(tau_fock[2] * tau_fock[2]));
}

PseudospinSet build_pseudospin(const FockSpace& space) {
  PseudospinSet set;
  set.local = pseudospin_matrices();
  set.basis = two_mode_basis(space);

  const SparseOp c1 = space.collective_annihilation(1);
  const SparseOp cm = space.collective_annihilation(space.spec().rows);
  const SparseOp c1_dag = SparseOp(c1.adjoint());
  const SparseOp cm_dag = SparseOp(cm.adjoint());

  const SparseOp up = SparseOp(c1_dag * cm);        // c1^dag cM
  const SparseOp pair = SparseOp(c1_dag * cm_dag);  // c1^dag cM^dag
  const SparseOp n1 = SparseOp(c1_dag * c1);
  const SparseOp nm = SparseOp(cm_dag * cm);
  const SparseOp id = space.identity();

  set.s_fock[0] = SparseOp(0.5 * (up + SparseOp(up.adjoint())));
  set.s_fock[1] = SparseOp((0.5 / kI) * (up - SparseOp(up.adjoint())));
  set.s_fock[2] = SparseOp(0.5 * (n1 - nm));

  set.tau_fock[0] = SparseOp(0.5 * (pair + SparseOp(pair.adjoint())));
  set.tau_fock[1] = SparseOp((0.5 / kI) * (pair - SparseOp(pair.adjoint())));
  set.tau_fock[2] = SparseOp(0.5 * (SparseOp(nm + n1) - id));

  for (int axis = 0; axis < 3; ++axis)
    set.j_fock[axis] = SparseOp(set.s_fock[axis] + set.tau_fock[axis]);
  return set;
}

AlgebraReport algebra_check(const PseudospinSet& set) {
  AlgebraReport report;
  const PseudospinMatrices& ps = set.local;

  auto check_su2_local = [&](const std::array<Eigen::Matrix4cd, 3>& triple, const char* name) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
        for (int c = 0; c < 3; ++c)
          expected += kI * static_cast<double>(levi_civita(a, b, c)) * triple[c];
        const double dev = max_abs((triple[a] * triple[b] - triple[b] * triple[a] - expected).eval());
        report.max_su2_dev = std::max(report.max_su2_dev, dev);
        if (dev > 1e-12)
          throw InvariantError(std::string("pseudospin.su2.") + name + "^" + kAxisNames[a] + "," +
                                   name + "^" + kAxisNames[b],
                               dev);
      }
  };
  check_su2_local(ps.s, "s");
  check_su2_local(ps.tau, "tau");
  check_su2_local(ps.j, "J");

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double dev = max_abs((ps.s[a] * ps.tau[b] - ps.tau[b] * ps.s[a]).eval());
      report.max_cross_dev = std::max(report.max_cross_dev, dev);
      if (dev > 1e-12)
        throw InvariantError(std::string("pseudospin.cross.s^") + kAxisNames[a] + ",tau^" +
                                 kAxisNames[b],
                             dev);
    }

  const Eigen::Matrix4cd casimir = ps.s_squared() + ps.tau_squared();
  report.max_casimir_dev = max_abs((casimir - 0.75 * Eigen::Matrix4cd::Identity()).eval());
  if (report.max_casimir_dev > 1e-12)
    throw InvariantError("pseudospin.casimir", report.max_casimir_dev);

  // Fock embedding: same identities at 1e-10.
  auto fock_dev = [&](const SparseOp& lhs) { return max_abs(lhs); };
  auto check_su2_fock = [&](const std::array<SparseOp, 3>& triple, const char* name) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        SparseOp expected(triple[0].rows(), triple[0].cols());
        for (int c = 0; c < 3; ++c)
          if (levi_civita(a, b, c) != 0)
            expected = expected + SparseOp((kI * static_cast<double>(levi_civita(a, b, c))) * triple[c]);
        const double dev =
            fock_dev(SparseOp(SparseOp(triple[a] * triple[b]) - SparseOp(triple[b] * triple[a]) - expected));
        report.max_fock_dev = std::max(report.max_fock_dev, dev);
        if (dev > 1e-10)
          throw InvariantError(std::string("pseudospin.fock.su2.") + name + "^" + kAxisNames[a] +
                                   "," + name + "^" + kAxisNames[b],
                               dev);
      }
  };
  check_su2_fock(set.s_fock, "s");
  check_su2_fock(set.tau_fock, "tau");
  check_su2_fock(set.j_fock, "J");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double dev = fock_dev(
          SparseOp(SparseOp(set.s_fock[a] * set.tau_fock[b]) - SparseOp(set.tau_fock[b] * set.s_fock[a])));
      report.max_fock_dev = std::max(report.max_fock_dev, dev);
      if (dev > 1e-10)
        throw InvariantError(std::string("pseudospin.fock.cross.s^") + kAxisNames[a] + ",tau^" +
                                 kAxisNames[b],
                             dev);
    }

  // On the two-mode subspace the Fock Casimir restricts to (3/4) I.
  const Eigen::MatrixXcd frame = set.basis.frame;
  const Eigen::Matrix4cd restricted =
      frame.adjoint() * (set.s_squared_fock() + set.tau_squared_fock()) * frame;
  const double dev = max_abs((restricted - 0.75 * Eigen::Matrix4cd::Identity()).eval());
  report.max_fock_dev = std::max(report.max_fock_dev, dev);
  if (dev > 1e-10) throw InvariantError("pseudospin.fock.casimir", dev);

  return report;
}

Eigen::Matrix4cd particle_hole_map(const PseudospinMatrices& ps) {
  // J^x has two 2-dim eigenspaces (+-1/2); each pairs one s-carrying and one
  // tau-carrying vector. P swaps the two partners within each eigenspace.
  const Eigen::Matrix4cd s2 = ps.s_squared();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(ps.j[0]);
  Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
  for (double sign : {-1.0, 1.0}) {
    std::vector<Eigen::Vector4cd> spin_carrying;
    std::vector<Eigen::Vector4cd> pair_carrying;
    for (int i = 0; i < 4; ++i) {
      if (std::abs(solver.eigenvalues()(i) - 0.5 * sign) > 1e-9) continue;
      const Eigen::Vector4cd v = solver.eigenvectors().col(i);
      const double s_content = std::real((v.adjoint() * s2 * v)(0));
      (s_content > 0.375 ? spin_carrying : pair_carrying).push_back(v);
    }
    if (spin_carrying.size() != 1 || pair_carrying.size() != 1)
      throw InvariantError("particle_hole_map.sector_structure",
                           static_cast<double>(spin_carrying.size()));
    p += spin_carrying[0] * pair_carrying[0].adjoint() +
         pair_carrying[0] * spin_carrying[0].adjoint();
  }
  return p;
}

std::vector<StateExpectation> eigenstate_expectations(const LatticeSpec& spec,
                                                      const CouplingParams& p) {
  const FockSpace space(spec);
  if (space.dim() > kDenseDim)
    throw ResourceError("eigenstate_expectations: dimension " + std::to_string(space.dim()) +
                        " above the dense threshold");
  const SparseOp h = build_manybody_h(space, p);
  const PseudospinSet set = build_pseudospin(space);
  const SparseOp& jx = set.j_fock[0];
  const SparseOp s2 = set.s_squared_fock();
  const SparseOp t2 = set.tau_squared_fock();

  const double comm = commutator_norm(h, jx);
  const double comm_tol = 1e-10 * (1.0 + max_abs(Eigen::MatrixXcd(h)));
  if (comm > comm_tol)
    throw InvariantError("eigenstate_expectations.jx_conservation", comm,
                         "J^x does not commute with H at these couplings");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(h)};
  if (solver.info() != Eigen::Success)
    throw ComputationalError("eigenstate_expectations: eigensolver failed");
  const Eigen::VectorXd energies = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  const Eigen::MatrixXcd jx_dense = Eigen::MatrixXcd(jx);
  const Eigen::MatrixXcd s2_dense = Eigen::MatrixXcd(s2);
  const Eigen::MatrixXcd t2_dense = Eigen::MatrixXcd(t2);

  std::vector<StateExpectation> rows;
  rows.reserve(static_cast<std::size_t>(space.dim()));

  long begin = 0;
  while (begin < space.dim()) {
    long end = begin + 1;
    while (end < space.dim() &&
           std::abs(energies(end) - energies(end - 1)) <= 1e-8 * (1.0 + std::abs(energies(end))))
      ++end;
    const long size = end - begin;
    const Eigen::MatrixXcd cluster = vectors.middleCols(begin, size);
    const double energy = energies.segment(begin, size).mean();

    // Resolve J^x inside the cluster.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> jx_solver(cluster.adjoint() * jx_dense *
                                                              cluster);
    const Eigen::MatrixXcd resolved = cluster * jx_solver.eigenvectors();
    const Eigen::VectorXd jx_vals = jx_solver.eigenvalues();

    long jb = 0;
    while (jb < size) {
      long je = jb + 1;
      while (je < size && std::abs(jx_vals(je) - jx_vals(jb)) <= 1e-6) ++je;
      const long jsize = je - jb;
      Eigen::MatrixXcd sub = resolved.middleCols(jb, jsize);

      // Resolve s^2, then balance extremal partners: the edge-pair states
      // carry equal s and tau weight, which a raw eigenbasis hides inside
      // degenerate subspaces.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s2_solver(sub.adjoint() * s2_dense * sub);
      sub = sub * s2_solver.eigenvectors();
      Eigen::VectorXd s2_vals = s2_solver.eigenvalues();
      long lo = 0;
      long hi = jsize - 1;
      while (lo < hi && s2_vals(hi) - s2_vals(lo) > 1e-6) {
        const Eigen::VectorXcd u = sub.col(lo);
        const Eigen::VectorXcd v = sub.col(hi);
        sub.col(lo) = (u + v) / std::sqrt(2.0);
        sub.col(hi) = (u - v) / std::sqrt(2.0);
        ++lo;
        --hi;
      }

      for (long i = 0; i < jsize; ++i) {
        StateExpectation row;
        row.energy = energy;
        row.jx = jx_vals(jb + i);
        row.s2 = std::real((sub.col(i).adjoint() * s2_dense * sub.col(i))(0));
        row.tau2 = std::real((sub.col(i).adjoint() * t2_dense * sub.col(i))(0));
        row.phi_flag = std::abs(std::abs(row.jx) - 0.5) <= 1e-8 &&
                       std::abs(row.s2 - 0.375) <= 1e-8 && std::abs(row.tau2 - 0.375) <= 1e-8;
        rows.push_back(row);
      }
      jb = je;
    }
    begin = end;
  }

  std::sort(rows.begin(), rows.end(), [](const StateExpectation& a, const StateExpectation& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.jx != b.jx) return a.jx < b.jx;
    return a.s2 < b.s2;
  });
  return rows;
}

std::pair<Eigen::Vector4cd, Eigen::Vector4cd> phi_tilde_states(const PseudospinMatrices& ps) {
  const Eigen::Vector4cd tau_right = sector_eigenvector(ps.tau[0], 0, 3, +1.0);
  const Eigen::Vector4cd tau_left = sector_eigenvector(ps.tau[0], 0, 3, -1.0);
  const Eigen::Vector4cd s_right = sector_eigenvector(ps.s[0], 1, 2, +1.0);
  const Eigen::Vector4cd s_left = sector_eigenvector(ps.s[0], 1, 2, -1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {inv_sqrt2 * (tau_right + s_right), inv_sqrt2 * (tau_left + s_left)};
}

double stau_entanglement_entropy(const Eigen::Vector4cd& state) {
  // Factor bases {|0>, |up>, |down>} for each particle:
  // |1> = |0>_s |down>_tau, |4> = |0>_s |up>_tau,
  // |2> = |up>_s |0>_tau,   |3> = |down>_s |0>_tau.
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(3, 3);  // (s index, tau index)
  psi(0, 2) = state(0);
  psi(0, 1) = state(3);
  psi(1, 0) = state(1);
  psi(2, 0) = state(2);
  const Eigen::Matrix3cd rho = psi * psi.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(rho);
  double entropy = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double prob = solver.eigenvalues()(i);
    if (prob > 1e-15) entropy -= prob * std::log(prob);
  }
  return entropy;
}

}  // namespace kitaev
