#include "mcms/repk.hpp"

#include "mcms/errors.hpp"

#include <unordered_map>

namespace mcms {

SignedPermutation SignedPermutation::identity(std::size_t k) {
  SignedPermutation p;
  p.perm.resize(k);
  p.signs.assign(k, 1);
  for (std::size_t j = 0; j < k; ++j) p.perm[j] = j;
  return p;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& other) const {
  // T_g T_h e_j = s^h_{h(j)} s^g_{g(h(j))} e_{g(h(j))}
  SignedPermutation r;
  const std::size_t k = perm.size();
  r.perm.resize(k);
  r.signs.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t hj = other.perm[j];
    std::size_t ghj = perm[hj];
    r.perm[j] = ghj;
    r.signs[ghj] = static_cast<int8_t>(other.signs[hj] * signs[ghj]);
  }
  return r;
}

std::vector<std::vector<int>> SignedPermutation::matrix() const {
  const std::size_t k = perm.size();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
  for (std::size_t j = 0; j < k; ++j) m[perm[j]][j] = signs[perm[j]];
  return m;
}

bool SignedPermutation::is_bijection() const {
  std::vector<bool> hit(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || hit[p]) return false;
    hit[p] = true;
  }
  for (auto s : signs)
    if (s != 1 && s != -1) return false;
  return true;
}

long SignedPermutation::trace() const {
  long t = 0;
  for (std::size_t j = 0; j < perm.size(); ++j)
    if (perm[j] == j) t += signs[j];
  return t;
}

SignedPermutation signed_permutation(const Mat3& g, const Cluster& cluster) {
  const std::size_t k = cluster.k();
  std::unordered_map<PhysVector, std::pair<std::size_t, int>> where;
  for (std::size_t i = 0; i < k; ++i) {
    where.emplace(cluster[i], std::make_pair(i, 1));
    where.emplace(-cluster[i], std::make_pair(i, -1));
  }
  SignedPermutation p;
  p.perm.resize(k);
  p.signs.assign(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    PhysVector img = g * cluster[j];
    auto it = where.find(img);
    if (it == where.end())
      throw CheckFailure("cluster is not Y-invariant: T_g e_" + std::to_string(j + 1) + " = " + img.str() +
                         " matches no +-e_l");
    p.perm[j] = it->second.first;
    p.signs[it->second.first] = static_cast<int8_t>(it->second.second);
  }
  if (!p.is_bijection()) throw CheckFailure("induced map on the cluster is not a signed permutation");
  return p;
}

RepK RepK::build(const IcosaGroup& group, const Cluster& cluster) {
  RepK r;
  r.k_ = cluster.k();
  r.maps_.reserve(group.order());
  for (const auto& g : group.elements()) r.maps_.push_back(signed_permutation(g.matrix, cluster));
  return r;
}

Character RepK::character(const IcosaGroup& group) const {
  Character chi;
  for (std::size_t c = 0; c < 5; ++c) chi[c] = GoldenNumber(maps_[group.classes()[c].representative].trace());
  return chi;
}

std::size_t RepK::homomorphism_defects(const IcosaGroup& group) const {
  std::size_t defects = 0;
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t h = 0; h < group.order(); ++h)
      if (maps_[group.product(g, h)] != maps_[g].compose(maps_[h])) ++defects;
  return defects;
}

}  // namespace mcms
