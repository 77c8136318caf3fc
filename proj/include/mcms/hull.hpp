#pragma once

#include "mcms/linalg.hpp"

#include <array>
#include <vector>

namespace mcms {

/// normal . x <= offset (inequality) or == offset (equation).
struct Plane {
  PhysVector normal;
  GoldenNumber offset;

  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Exact convex hull of a finite point set in Q[tau]^3.
struct Hull {
  /// -1 empty, 0 point, 1 segment, 2 polygon, 3 polytope.
  int dim = -1;
  /// Extreme points, sorted.
  std::vector<PhysVector> vertices;
  /// Facet inequalities (outward normals); for dim < 3 these bound the hull
  /// inside its affine span.
  std::vector<Plane> facets;
  /// Equations of the affine span (3 - dim of them).
  std::vector<Plane> equations;
  /// Outward triangulation of the boundary (dim 3), indexing `points`.
  std::vector<PhysVector> points;
  std::vector<std::array<std::size_t, 3>> triangles;

  bool contains(const PhysVector& q) const;
};

Hull convex_hull(std::vector<PhysVector> points);

PhysVector cross(const PhysVector& a, const PhysVector& b);

}  // namespace mcms
