#include "mcms/cluster.hpp"

#include "mcms/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace mcms {

std::string to_string(OrbitType t) {
  switch (t) {
    case OrbitType::icosahedron: return "icosahedron";
    case OrbitType::dodecahedron: return "dodecahedron";
    case OrbitType::icosidodecahedron: return "icosidodecahedron";
  }
  return "?";
}

PhysVector ray_point(OrbitType type, const GoldenNumber& alpha) {
  switch (type) {
    case OrbitType::icosahedron: return {{alpha, alpha * GoldenNumber::tau(), 0}};
    case OrbitType::dodecahedron: return {{alpha, alpha, alpha}};
    case OrbitType::icosidodecahedron: return {{alpha, 0, 0}};
  }
  return {};
}

std::vector<PhysVector> orbit(const IcosaGroup& group, const PhysVector& seed) {
  std::set<PhysVector> pts;
  for (const auto& g : group.elements()) pts.insert(g.matrix * seed);
  return {pts.begin(), pts.end()};
}

namespace {

bool on_ray(const PhysVector& v, OrbitType type) {
  const GoldenNumber& a = v[0];
  if (a.sign() <= 0) return false;
  switch (type) {
    case OrbitType::icosahedron: return v[1] == a * GoldenNumber::tau() && v[2].is_zero();
    case OrbitType::dodecahedron: return v[1] == a && v[2] == a;
    case OrbitType::icosidodecahedron: return v[1].is_zero() && v[2].is_zero();
  }
  return false;
}

bool canonical_sign(const PhysVector& v) {
  for (int i = 0; i < 3; ++i)
    if (int s = v[i].sign(); s != 0) return s > 0;
  return false;
}

}  // namespace

Cluster Cluster::from_seeds(const IcosaGroup& group, const std::vector<OrbitSeed>& seeds) {
  if (seeds.empty()) throw ConfigError("cluster needs at least one orbit");
  Cluster c;
  std::set<PhysVector> seen;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const auto& seed = seeds[s];
    if (!on_ray(seed.seed, seed.type))
      throw ConfigError("seed not on admissible ray: " + seed.seed.str() + " for " + to_string(seed.type));
    auto pts = orbit(group, seed.seed);
    if (pts.size() != static_cast<std::size_t>(seed.type))
      throw ConfigError("orbit length mismatch for seed " + seed.seed.str() + ": got " + std::to_string(pts.size()));
    if (seen.count(pts.front())) throw ConfigError("duplicate orbit for seed " + seed.seed.str());
    seen.insert(pts.begin(), pts.end());
    for (const auto& p : pts)
      if (canonical_sign(p)) c.half_.push_back(p);
  }
  c.seeds_ = seeds;
  return c;
}

Cluster Cluster::from_vectors(std::vector<PhysVector> half) {
  Cluster c;
  c.half_ = std::move(half);
  return c;
}

std::pair<std::size_t, int> Cluster::locate(const PhysVector& v) const {
  for (std::size_t i = 0; i < half_.size(); ++i) {
    if (half_[i] == v) return {i, 1};
    if (half_[i] == -v) return {i, -1};
  }
  return {half_.size(), 0};
}

namespace {

GoldenNumber parse_number(const nlohmann::json& j, const std::string& where) {
  std::string text;
  if (j.is_string()) text = j.get<std::string>();
  else if (j.is_number_integer()) text = std::to_string(j.get<long>());
  else throw ConfigError(where + ": expected a number string");
  auto g = GoldenNumber::parse(text);
  if (!g) throw ConfigError(where + ": cannot parse '" + text + "'");
  return *g;
}

PhysVector parse_vector(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected three coordinates");
  return {{parse_number(j[0], where), parse_number(j[1], where), parse_number(j[2], where)}};
}

OrbitType parse_ray(const std::string& name) {
  if (name == "icosahedron") return OrbitType::icosahedron;
  if (name == "dodecahedron") return OrbitType::dodecahedron;
  if (name == "icosidodecahedron") return OrbitType::icosidodecahedron;
  throw ConfigError("unknown ray '" + name + "'");
}

OrbitType parse_length(long n) {
  if (n == 12) return OrbitType::icosahedron;
  if (n == 20) return OrbitType::dodecahedron;
  if (n == 30) return OrbitType::icosidodecahedron;
  throw ConfigError("orbit length must be 12, 20 or 30, got " + std::to_string(n));
}

}  // namespace

Cluster parse_cluster_config(const std::string& json_text, const IcosaGroup& group) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cluster config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("cluster config must be a JSON object");

  if (doc.contains("vectors")) {
    const auto& arr = doc["vectors"];
    if (!arr.is_array() || arr.empty()) throw ConfigError("'vectors' must be a non-empty array");
    std::vector<PhysVector> half;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      half.push_back(parse_vector(arr[i], "vectors[" + std::to_string(i) + "]"));
      if (half.back().is_zero()) throw ConfigError("zero vector in cluster");
    }
    return Cluster::from_vectors(std::move(half));
  }

  if (!doc.contains("orbits") || !doc["orbits"].is_array()) throw ConfigError("cluster config needs an 'orbits' array");
  std::vector<OrbitSeed> seeds;
  for (std::size_t i = 0; i < doc["orbits"].size(); ++i) {
    const auto& o = doc["orbits"][i];
    const std::string where = "orbits[" + std::to_string(i) + "]";
    if (!o.is_object()) throw ConfigError(where + ": expected an object");
    if (o.contains("ray")) {
      if (!o["ray"].is_string()) throw ConfigError(where + ": 'ray' must be a string");
      OrbitType type = parse_ray(o["ray"].get<std::string>());
      GoldenNumber alpha = o.contains("alpha") ? parse_number(o["alpha"], where + ".alpha") : GoldenNumber(1);
      seeds.push_back({ray_point(type, alpha), type});
    } else if (o.contains("seed")) {
      if (!o.contains("length") || !o["length"].is_number_integer())
        throw ConfigError(where + ": 'seed' needs an integer 'length'");
      seeds.push_back({parse_vector(o["seed"], where + ".seed"), parse_length(o["length"].get<long>())});
    } else {
      throw ConfigError(where + ": needs 'ray' or 'seed'");
    }
  }
  return Cluster::from_seeds(group, seeds);
}

Cluster load_cluster_config(const std::filesystem::path& path, const IcosaGroup& group) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cluster config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cluster_config(ss.str(), group);
}

}  // namespace mcms
