#pragma once

// Segment arrangements on the 2-torus R^2 / Z^2, in the coordinates of a
// period lattice (where its fundamental domain is the unit square).

#include <cstdint>
#include <vector>

#include "multitile/geometry2d.hpp"
#include "multitile/lattice.hpp"

namespace multitile {

// Boundary edges of every translate P + λ (λ in the coset) that meets the
// closed fundamental domain of `period`, mapped to period coordinates and
// clipped to [0,1]^2. Requires d = 2.
std::vector<Segment2> torus_edges(const Polytope& p, const Coset& coset, const Lattice& period);

// Sorted and deduplicated.
std::vector<Segment2> unique_segments(std::vector<Segment2> segments);

// One representative point per face of the arrangement formed by the given
// segments together with the boundary of [0,1]^2.
struct FaceRepresentatives {
  std::vector<Point2> vertices;
  std::vector<Point2> edge_points;
  std::vector<Point2> cell_points;

  std::size_t size() const { return vertices.size() + edge_points.size() + cell_points.size(); }
};
FaceRepresentatives torus_faces(const std::vector<Segment2>& segments);

// One-dimensional common parts of a segment from `a` and a segment from `b`.
std::vector<Segment2> collinear_overlaps(const std::vector<Segment2>& a,
                                         const std::vector<Segment2>& b);

// Unions of collinear segments that overlap or touch.
std::vector<Segment2> merge_collinear(std::vector<Segment2> segments);

struct TorusConnectivity {
  // The complement of the blockers in the plane (lifted periodically) is
  // path-connected.
  bool connected = false;
  // The complement on the torus itself is path-connected.
  bool torus_connected = false;
  std::size_t cells = 0;
  std::size_t adjacencies = 0;
};

// Decides whether R^2 minus (blockers + Z^2) is path-connected. Blockers are
// segments inside [0,1]^2.
TorusConnectivity complement_connectivity(const std::vector<Segment2>& blockers);

}  // namespace multitile
