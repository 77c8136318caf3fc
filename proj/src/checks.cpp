#include "mcms/checks.hpp"

#include "mcms/errors.hpp"
#include "mcms/repk.hpp"

#include <algorithm>
#include <set>

namespace mcms {

namespace {

Mat3 power(const Mat3& m, int n) {
  Mat3 r = Mat3::identity();
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

}  // namespace

std::vector<CheckResult> verify_suite(const IcosaGroup& group, const Cluster& cluster) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };

  add("group_order_60", group.order() == 60, "order = " + std::to_string(group.order()));
  {
    std::vector<std::size_t> sizes;
    for (const auto& c : group.classes()) sizes.push_back(c.members.size());
    std::string d;
    for (auto s : sizes) d += (d.empty() ? "" : ",") + std::to_string(s);
    add("class_sizes_1_12_15_20_12", sizes == std::vector<std::size_t>{1, 12, 15, 20, 12}, d);
  }
  {
    const Mat3 a = generator_a(), b = generator_b(), id = Mat3::identity();
    add("presentation_a5_b2_ab3", power(a, 5) == id && power(b, 2) == id && power(a * b, 3) == id);
  }
  {
    bool ok = true;
    for (const auto& g : group.elements())
      ok = ok && g.matrix.transpose() * g.matrix == Mat3::identity() && g.matrix.determinant() == GoldenNumber(1);
    add("rotations_orthogonal_det1", ok);
  }
  {
    bool ok = true;
    for (std::size_t g = 0; g < group.order() && ok; ++g)
      for (std::size_t h = 0; h < group.order() && ok; ++h)
        ok = group.find(group.element(g).matrix * group.element(h).matrix) == group.product(g, h);
    add("group_closure", ok);
  }
  {
    const auto& t = CharacterTable::get();
    bool ok = true;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) ok = ok && t.inner(t.rows[i], t.rows[j]) == GoldenNumber(i == j ? 1 : 0);
    add("character_table_orthonormal", ok);
  }
  {
    bool ok = true;
    std::string d;
    for (const auto& s : cluster.seeds()) {
      auto n = orbit(group, s.seed).size();
      d += (d.empty() ? "" : ",") + std::to_string(n);
      ok = ok && n == static_cast<std::size_t>(s.type);
    }
    add("orbit_lengths", ok, d);
  }
  {
    bool ok = cluster.k() > 0;
    std::set<PhysVector> seen;
    for (const auto& e : cluster.half()) {
      ok = ok && !e.is_zero() && !seen.count(e) && !seen.count(-e);
      seen.insert(e);
    }
    add("cluster_pairs_distinct", ok, "k = " + std::to_string(cluster.k()));
  }

  RepK rep;
  try {
    rep = RepK::build(group, cluster);
    add("signed_permutation_matching", true);
  } catch (const CheckFailure& e) {
    add("signed_permutation_matching", false, e.what());
    return out;
  }
  {
    bool ok = true;
    for (const auto& p : rep.maps()) {
      ok = ok && p.is_bijection();
      auto m = p.matrix();
      for (std::size_t i = 0; i < m.size() && ok; ++i)
        for (std::size_t j = 0; j < m.size() && ok; ++j) {
          long s = 0;
          for (std::size_t l = 0; l < m.size(); ++l) s += m[l][i] * m[l][j];
          ok = s == (i == j ? 1 : 0);
        }
    }
    add("rep_orthogonal", ok);
  }
  {
    auto defects = rep.homomorphism_defects(group);
    add("rep_homomorphism", defects == 0, std::to_string(defects) + " defective products of 3600");
  }
  {
    bool ok = true;
    for (std::size_t g = 0; g < group.order() && ok; ++g)
      for (std::size_t j = 0; j < cluster.k() && ok; ++j) {
        const auto& p = rep[g];
        PhysVector want = cluster[p.perm[j]];
        if (p.signs[p.perm[j]] < 0) want = -want;
        ok = group.element(g).matrix * cluster[j] == want;
      }
    add("rep_equivariance_on_cluster", ok);
  }
  {
    auto chi = rep.character(group);
    std::array<long, 5> m{};
    try {
      m = decompose_character(chi);
    } catch (const CheckFailure& e) {
      add("character_decomposition", false, e.what());
      return out;
    }
    const auto& dims = CharacterTable::get().dims;
    long total = 0;
    std::string d;
    for (int i = 0; i < 5; ++i) {
      total += m[i] * dims[i];
      d += (i ? "," : "") + std::to_string(m[i]);
    }
    add("character_decomposition", total == static_cast<long>(cluster.k()), "multiplicities " + d);
    add("gamma2_multiplicity_positive", m[1] >= 1, "m2 = " + std::to_string(m[1]));
  }

  SuperspaceData data;
  try {
    data = SuperspaceData::build_unchecked(group, cluster);
  } catch (const std::exception& e) {
    add("superspace_build", false, e.what());
    return out;
  }
  for (auto& c : data.run_checks(group)) out.push_back(std::move(c));
  return out;
}

const CheckResult* first_failure(const std::vector<CheckResult>& results) {
  auto it = std::find_if(results.begin(), results.end(), [](const CheckResult& c) { return !c.ok; });
  return it == results.end() ? nullptr : &*it;
}

}  // namespace mcms
