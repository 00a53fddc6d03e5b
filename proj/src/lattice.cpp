#include "kitaev/lattice.hpp"

namespace kitaev {

int site_index(const LatticeSpec& spec, int m, int n) {
  if (m < 1 || m > spec.rows)
    throw DomainError("site_index: row m=" + std::to_string(m) + " outside [1, " +
                      std::to_string(spec.rows) + "]");
  int wrapped = (n - 1) % spec.cols;
  if (wrapped < 0) wrapped += spec.cols;
  return (m - 1) * spec.cols + wrapped;
}

int majorana_index(const LatticeSpec& spec, int m, int n, Flavor f) {
  return 2 * site_index(spec, m, n) + (f == Flavor::B ? 1 : 0);
}

std::vector<BrickWallEdge> brick_wall_edges(const LatticeSpec& spec) {
  std::vector<BrickWallEdge> edges;
  edges.reserve(static_cast<std::size_t>(3 * spec.sites()));
  for (int m = 1; m <= spec.rows; ++m) {
    for (int n = 1; n <= spec.cols; ++n) {
      const int a = majorana_index(spec, m, n, Flavor::A);
      edges.push_back({EdgeType::Onsite, a, majorana_index(spec, m, n, Flavor::B)});
      if (m + 1 <= spec.rows)
        edges.push_back({EdgeType::Vert, a, majorana_index(spec, m + 1, n, Flavor::B)});
      if (spec.cols >= 2)
        edges.push_back({EdgeType::Horiz, a, majorana_index(spec, m, n + 1, Flavor::B)});
    }
  }
  return edges;
}

}  // namespace kitaev
