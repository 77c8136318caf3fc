#pragma once

#include "mcms/linalg.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mcms {

/// Integer coordinates n of the lattice point x = kappa n.
using LatticePoint = std::vector<long>;

/// Window shift gamma in Q[tau]^k; empty means zero.
using Offset = std::vector<GoldenNumber>;

inline GoldenNumber offset_at(const Offset& g, std::size_t i) { return g.empty() ? GoldenNumber(0) : g[i]; }

struct PatternPoint {
  PhysVector phys;
  LatticePoint source;
  /// (pi + pi') source, the point of the 6-dimensional lattice behind phys.
  std::vector<Rational> lift;
  /// Occupancy of the 2k arithmetic neighbours: entries 0..k-1 for n + eps_i,
  /// k..2k-1 for n - eps_i. Empty until occupancy is evaluated.
  std::vector<bool> neighbor_mask;

  std::size_t occupied_count() const;
};

/// Finite patch of the packing keyed by exact physical coordinates.
struct Pattern {
  std::size_t k = 0;
  GoldenNumber radius_sq;
  Offset offset;
  std::map<PhysVector, PatternPoint> points;
  /// Lattice points accepted before deduplication.
  std::size_t accepted = 0;
  /// Accepted points of Z^k whose physical image was already present. For
  /// k > 6 the kernel of pi on Z^k is nontrivial, so these are expected.
  std::size_t merged = 0;
  /// Merges between different 6-dimensional lifts: failures of injectivity
  /// of pi on the lattice (pi + pi') Z^k. Must stay zero.
  std::size_t collisions = 0;

  std::size_t size() const { return points.size(); }
  bool contains(const PhysVector& p) const { return points.count(p) != 0; }

  /// Inserts an accepted lattice point; the lexicographically smallest source
  /// is kept when two lattice points share a physical image.
  void insert(PhysVector phys, LatticePoint n, std::vector<Rational> lift);
};

/// Points of `a` missing from `b`.
std::vector<PhysVector> difference(const Pattern& a, const Pattern& b);

/// CSV body (header plus rows in canonical order), without the hash line.
std::string pattern_csv_body(const Pattern& pattern);

/// Full CSV text: body followed by `# sha256 <hex of body>`.
std::string pattern_csv(const Pattern& pattern);

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace mcms
