#pragma once

#include "mcms/group.hpp"
#include "mcms/linalg.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mcms {

/// Admissible orbit types, valued by orbit length.
enum class OrbitType { icosahedron = 12, dodecahedron = 20, icosidodecahedron = 30 };

std::string to_string(OrbitType t);

/// Point on the admissible ray: (a, a tau, 0), (a, a, a) or (a, 0, 0).
PhysVector ray_point(OrbitType type, const GoldenNumber& alpha);

struct OrbitSeed {
  PhysVector seed;
  OrbitType type;
};

/// Exact orbit {T_g seed}, deduplicated and sorted lexicographically.
std::vector<PhysVector> orbit(const IcosaGroup& group, const PhysVector& seed);

/// Centrally symmetric icosahedral cluster {+-e_1, ..., +-e_k}.
class Cluster {
 public:
  /// Union of the seed orbits. Each antipodal pair contributes the vector
  /// whose first nonzero coordinate is positive; `half` is ordered by seed
  /// index, then lexicographically. Throws ConfigError on bad seeds.
  static Cluster from_seeds(const IcosaGroup& group, const std::vector<OrbitSeed>& seeds);

  /// Uses the given half set verbatim. No invariance check is made here;
  /// building the superspace representation detects a non-invariant set.
  static Cluster from_vectors(std::vector<PhysVector> half);

  std::size_t k() const { return half_.size(); }
  const std::vector<PhysVector>& half() const { return half_; }
  const PhysVector& operator[](std::size_t i) const { return half_[i]; }
  const std::vector<OrbitSeed>& seeds() const { return seeds_; }

  /// Index of v or -v in `half`, with the sign; {k(), 0} if absent.
  std::pair<std::size_t, int> locate(const PhysVector& v) const;

 private:
  std::vector<PhysVector> half_;
  std::vector<OrbitSeed> seeds_;
};

/// Reads the JSON cluster config. Accepted forms:
///   {"orbits":[{"ray":"icosahedron","alpha":"1"}, ...]}
///   {"orbits":[{"seed":["1","t","0"],"length":12}, ...]}
///   {"vectors":[["1","t","0"], ...]}            (explicit half set)
/// Throws ConfigError on any malformed input.
Cluster parse_cluster_config(const std::string& json_text, const IcosaGroup& group);
Cluster load_cluster_config(const std::filesystem::path& path, const IcosaGroup& group);

}  // namespace mcms
