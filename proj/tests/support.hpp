#pragma once

#include "mcms/cluster.hpp"
#include "mcms/group.hpp"
#include "mcms/superspace.hpp"

#include <map>
#include <random>
#include <string>

namespace testing {

inline const mcms::IcosaGroup& group() {
  static const mcms::IcosaGroup g = mcms::IcosaGroup::build();
  return g;
}

inline mcms::GoldenNumber gn(const char* s) { return *mcms::GoldenNumber::parse(s); }

inline mcms::Cluster cluster(int k) {
  using mcms::OrbitType;
  std::vector<mcms::OrbitSeed> seeds;
  auto add = [&](OrbitType t) { seeds.push_back({mcms::ray_point(t, 1), t}); };
  switch (k) {
    case 6: add(OrbitType::icosahedron); break;
    case 10: add(OrbitType::dodecahedron); break;
    case 15: add(OrbitType::icosidodecahedron); break;
    case 16: add(OrbitType::icosahedron); add(OrbitType::dodecahedron); break;
    case 31:
      add(OrbitType::icosahedron);
      add(OrbitType::dodecahedron);
      add(OrbitType::icosidodecahedron);
      break;
    default: throw std::invalid_argument("no test cluster for this k");
  }
  return mcms::Cluster::from_seeds(group(), seeds);
}

inline const mcms::SuperspaceData& data(int k) {
  static std::map<int, mcms::SuperspaceData> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, mcms::SuperspaceData::build(group(), cluster(k))).first;
  return it->second;
}

inline std::string source_path(const std::string& rel) { return std::string(MCMS_SOURCE_DIR) + "/" + rel; }

// Small random element of Q[tau].
inline mcms::GoldenNumber random_gn(std::mt19937_64& rng, long span = 20, long den = 7) {
  std::uniform_int_distribution<long> num(-span, span), d(1, den);
  return {mcms::Rational(num(rng), d(rng)), mcms::Rational(num(rng), d(rng))};
}

}  // namespace testing

#include <json.hpp>

#include <cstdlib>
#include <fstream>

namespace testing {

// Frozen values; ICOSA_MCMS_SEEDED_GOLDENS overrides the location.
inline const nlohmann::json& goldens() {
  static const nlohmann::json g = [] {
    const char* env = std::getenv("ICOSA_MCMS_SEEDED_GOLDENS");
    std::ifstream in(env && *env ? std::string(env) : source_path("tests/goldens.json"));
    if (!in) throw std::runtime_error("goldens file missing");
    return nlohmann::json::parse(in);
  }();
  return g;
}

}  // namespace testing
