#pragma once

#include <vector>

#include "kitaev/errors.hpp"

namespace kitaev {

/// Cylinder geometry: `rows` (M) runs along the open direction, `cols` (N)
/// along the periodic one. Sites are addressed as (m, n) with m in [1, M] and
/// n wrapped mod N; the lattice constant is fixed to 1.
struct LatticeSpec {
  int rows = 1;
  int cols = 1;

  LatticeSpec() = default;
  LatticeSpec(int m_rows, int n_cols) : rows(m_rows), cols(n_cols) {
    if (rows < 1 || cols < 1)
      throw DomainError("LatticeSpec: rows and cols must be >= 1, got rows=" +
                        std::to_string(rows) + " cols=" + std::to_string(cols));
  }

  int sites() const { return rows * cols; }
  int majorana_count() const { return 2 * rows * cols; }

  bool operator==(const LatticeSpec&) const = default;
};

enum class Flavor { A, B };  // a = c^dag + c,  b = -i(c^dag - c)

/// Flat site index of (m, n); n is wrapped into [1, N], m must be in range.
int site_index(const LatticeSpec& spec, int m, int n);

/// Flat Majorana index; doubles as the Jordan-Wigner ordering.
int majorana_index(const LatticeSpec& spec, int m, int n, Flavor f);

enum class EdgeType { Onsite, Vert, Horiz };

/// One coupling of the sweet-spot Majorana graph. `a_index` is the A-flavor
/// Majorana at the anchor site (m, n); `b_index` is the B-flavor partner at
/// the same site (Onsite), at (m+1, n) (Vert) or at (m, n+1) (Horiz).
struct BrickWallEdge {
  EdgeType type;
  int a_index;
  int b_index;

  bool operator==(const BrickWallEdge&) const = default;
};

/// Complete edge list of the sweet-spot Majorana graph, ordered by
/// (anchor site, Onsite < Vert < Horiz). Count is 3*M*N - N; for N = 1 the
/// horizontal self-wraps are omitted here and merged additively by the
/// quadratic builders (degenerate geometry).
std::vector<BrickWallEdge> brick_wall_edges(const LatticeSpec& spec);

}  // namespace kitaev
