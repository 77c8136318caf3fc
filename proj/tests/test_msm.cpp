#include <doctest.h>

#include "mcms/errors.hpp"
#include "mcms/msm.hpp"
#include "mcms/strip.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

using namespace mcms;
using testing::gn;

namespace {

const MsmScheme& scheme(int k) {
  static std::map<int, MsmScheme> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, MsmScheme::build(testing::data(k))).first;
  return it->second;
}

std::vector<Rational> label_of(const SuperspaceData& d, const std::vector<long>& n) { return d.second_projection(n); }

std::vector<long> random_point(std::mt19937_64& rng, std::size_t k, long span) {
  std::uniform_int_distribution<long> u(-span, span);
  std::vector<long> n(k);
  for (auto& x : n) x = u(rng);
  return n;
}

}  // namespace

TEST_SUITE("msm") {

TEST_CASE("k=6: unimodular sublattice, one full coset, index 1") {
  const auto& s = scheme(6);
  const auto& b = s.lattice().basis;
  REQUIRE(b.size() == 6);
  GnMatrix m(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = GoldenNumber(Rational(b[i][j], mpz_class(1)));
  auto inv = inverse(m);
  REQUIRE(inv);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK((*inv)(i, j).rat().is_integer());
  CHECK(s.index() == 1);
  REQUIRE(s.cosets().size() == 1);
  CHECK(s.cosets()[0].z == LatticePoint(6, 0));
  CHECK(s.cosets()[0].surface_status == SurfaceStatus::full_dim);
  CHECK(s.m() == 1);
}

TEST_CASE("sublattice: rank 6 and pi'' b = 0") {
  for (int k : {10, 15, 16, 31}) {
    const auto& d = testing::data(k);
    auto lat = sublattice_basis(d);
    REQUIRE(lat.basis.size() == static_cast<std::size_t>(k));
    REQUIRE(lat.basis[0].size() == 6);
    // oracle: rational rank of pi''
    CHECK(static_cast<std::size_t>(k) - rank(d.pi_second().entries) == 6);
    GnMatrix bm(k, 6);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < 6; ++j) bm(i, j) = GoldenNumber(Rational(lat.basis[i][j], mpz_class(1)));
    CHECK(rank(bm) == 6);
    for (std::size_t j = 0; j < 6; ++j) {
      auto col = lat.column(j);
      for (const auto& x : d.second_projection(col)) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("sublattice is saturated: an integer vector in its real span is an integer combination") {
  std::mt19937_64 rng(3);
  const auto& s = scheme(16);
  const auto& d = s.superspace();
  // lift(n) * D is an integer vector of the real span; the D-fold multiples of
  // its residues must agree with the coordinates being integral exactly when
  // lift(n) is integral.
  auto coords = oracle::lift_coordinates(s);
  for (int it = 0; it < 40; ++it) {
    auto n = random_point(rng, 16, 3);
    auto lift = d.lift(n);
    bool integral = std::all_of(lift.begin(), lift.end(), [](const Rational& x) { return x.is_integer(); });
    std::vector<Rational> c(6);
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 6; ++j) c[j] += Rational(n[i]) * coords[i][j];
    bool coord_integral = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.is_integer(); });
    CHECK(integral == coord_integral);
  }
}

TEST_CASE("index against the residue-count oracle") {
  for (int k : {6, 10, 15, 16}) {
    const auto& s = scheme(k);
    CHECK(s.index() == mpz_class(static_cast<unsigned long>(oracle::residue_count(s))));
    std::string key = "k" + std::to_string(k);
    CHECK(s.index().get_str() == testing::goldens()[key]["scheme"]["index"].get<std::string>());
  }
}

TEST_CASE("index k=31 against the golden value") {
  const auto& d = testing::data(31);
  CHECK(scheme_index(sublattice_basis(d), d).get_str() ==
        testing::goldens()["k31"]["scheme"]["index"].get<std::string>());
}

TEST_CASE("coset counts are the frozen values") {
  for (int k : {6, 10, 15, 16}) {
    const auto& s = scheme(k);
    const auto& g = testing::goldens()["k" + std::to_string(k)]["scheme"];
    CHECK(s.cosets().size() == g["cosets"].get<std::size_t>());
    CHECK(s.m() == g["m"].get<std::size_t>());
    CHECK(s.cosets().size() - s.m() == g["lower_dim"].get<std::size_t>());
  }
}

TEST_CASE("coset enumeration matches the LP-pruned oracle") {
  for (int k : {10, 15}) {
    const auto& s = scheme(k);
    std::vector<std::vector<Rational>> labels;
    for (const auto& c : s.cosets()) labels.push_back(c.second_proj);
    std::sort(labels.begin(), labels.end());
    CHECK(labels == coset_labels_by_lp(s));
  }
}

TEST_CASE("coset enumeration with an offset matches the oracle") {
  Offset g(10);
  for (std::size_t i = 0; i < 10; ++i) g[i] = GoldenNumber(Rational(static_cast<long>(i % 4) - 1, 7), Rational(1, 9 + static_cast<long>(i)));
  auto s = MsmScheme::build(testing::data(10), g);
  std::vector<std::vector<Rational>> labels;
  for (const auto& c : s.cosets()) labels.push_back(c.second_proj);
  std::sort(labels.begin(), labels.end());
  CHECK(labels == coset_labels_by_lp(s));
  CHECK(s.cosets().size() > 0);
}

TEST_CASE("coset representatives: label, uniqueness, nonempty slices") {
  for (int k : {10, 16}) {
    const auto& s = scheme(k);
    std::set<std::vector<Rational>> labels;
    for (std::size_t i = 0; i < s.cosets().size(); i += (k == 16 ? 97 : 1)) {
      const auto& c = s.cosets()[i];
      CHECK(label_of(s.superspace(), c.z) == c.second_proj);
      CHECK(feasible(s.slice_system(c.z), false).feasible);
      CHECK(s.route(c.z) == i);
    }
    for (const auto& c : s.cosets()) labels.insert(c.second_proj);
    CHECK(labels.size() == s.cosets().size());
  }
}

TEST_CASE("circuit window agrees with LP and FM feasibility of the slice") {
  std::mt19937_64 rng(77);
  for (int k : {10, 16}) {
    const auto& s = scheme(k);
    CircuitWindow w(s.lattice().basis, s.offset());
    CHECK(w.size() == (k == 10 ? 15u : 770u));
    std::size_t inside = 0, interior = 0, tested = 0;
    for (int it = 0; it < (k == 10 ? 300 : 120); ++it) {
      // start from a coset representative and step randomly: mixes in and out
      std::vector<long> n = s.cosets()[rng() % s.cosets().size()].z;
      for (int st = 0; st < static_cast<int>(rng() % 3); ++st) n[rng() % k] += (rng() % 2) ? 1 : -1;
      auto sys = s.slice_system(n);
      bool f = feasible(sys, false).feasible;
      CHECK(w.contains(n) == f);
      ++tested;
      if (!f) {
        CHECK(w.pinned(n).empty());
        continue;
      }
      ++inside;
      bool open = strictly_feasible(sys);
      CHECK(w.interior(n) == open);
      interior += open;
      // pinned coordinates against LP ranges of y_i
      auto pin = w.pinned(n);
      REQUIRE(pin.size() == static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        std::vector<GoldenNumber> obj(6), neg(6);
        for (int j = 0; j < 6; ++j) {
          obj[j] = GoldenNumber(Rational(s.lattice().basis[i][j], mpz_class(1)));
          neg[j] = -obj[j];
        }
        auto hi = lp_max(sys, obj), lo = lp_max(sys, neg);
        REQUIRE(hi.status == LpStatus::optimal);
        REQUIRE(lo.status == LpStatus::optimal);
        GoldenNumber base = GoldenNumber(n[i]);
        GoldenNumber ymax = base + hi.value, ymin = base - lo.value;
        // pinned means an implicit equality of the cube: y_i stuck at 0 or 1
        bool at_face = ymax == GoldenNumber(0) || ymin == GoldenNumber(1);
        CHECK((pin[i] >= 0) == at_face);
        if (at_face) CHECK(ymin == GoldenNumber(pin[i]));
      }
    }
    CHECK(inside > tested / 4);
    CHECK(inside < tested);
    CHECK(interior > 0);
  }
}

TEST_CASE("surface status agrees with the hull dimension (k=10, all cosets)") {
  const auto& s = scheme(10);
  for (const auto& c : s.cosets()) {
    Hull h = surface_vertices(s, c);
    CHECK(h.dim >= 0);
    CHECK((c.surface_status == SurfaceStatus::full_dim) == (h.dim == 3));
  }
}

TEST_CASE("surface status agrees with the hull dimension (k=15, sample)") {
  const auto& s = scheme(15);
  std::size_t full = 0;
  for (std::size_t i = 0; i < s.cosets().size(); i += 1117) {
    const auto& c = s.cosets()[i];
    Hull h = surface_vertices(s, c);
    CHECK((c.surface_status == SurfaceStatus::full_dim) == (h.dim == 3));
    full += h.dim == 3;
  }
  // the full-dimensional one containing the origin
  auto z = s.route(LatticePoint(15, 0));
  REQUIRE(z);
  CHECK(surface_vertices(s, s.cosets()[*z]).dim == 3);
  CHECK(s.cosets()[*z].surface_status == SurfaceStatus::full_dim);
}

TEST_CASE("k=6 atomic surface is the rhombic triacontahedron") {
  const auto& s = scheme(6);
  const auto& d = s.superspace();
  const auto& c = s.cosets()[0];
  Hull h = surface_vertices(s, c);
  CHECK(h.dim == 3);
  CHECK(h.vertices.size() == testing::goldens()["k6"]["surface"]["vertices"].get<std::size_t>());
  CHECK(h.facets.size() == testing::goldens()["k6"]["surface"]["facets"].get<std::size_t>());
  // oracle: hull of the 64 projected cube vertices
  Hull shadow = oracle::cube_shadow(d);
  CHECK(shadow.vertices == h.vertices);
  CHECK(shadow.facets.size() == 30);
  for (const auto& v : h.vertices) CHECK(surface_contains(s, c, v));

  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> u(-40, 40);
  int in = 0;
  for (int it = 0; it < 100; ++it) {
    PhysVector q{{Rational(u(rng), 16), Rational(u(rng), 16), Rational(u(rng), 16)}};
    bool a = h.contains(q), b = surface_contains(s, c, q);
    CHECK(a == b);
    in += a;
  }
  CHECK(in > 10);
  CHECK(in < 90);
}

TEST_CASE("hull membership equals the FM oracle on random probes (k=10)") {
  const auto& s = scheme(10);
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<long> u(-60, 60);
  for (std::size_t ci : {std::size_t(0), *s.route(LatticePoint(10, 0)), s.cosets().size() - 1}) {
    const auto& c = s.cosets()[ci];
    Hull h = surface_vertices(s, c);
    for (const auto& v : h.vertices) CHECK(surface_contains(s, c, v));
    for (int it = 0; it < 60; ++it) {
      PhysVector q{{Rational(u(rng), 16), Rational(u(rng), 16), Rational(u(rng), 16)}};
      if (h.dim < 3 && !h.vertices.empty() && it % 2 == 0) {
        // a point of the affine span: mixes of two vertices
        const auto& a = h.vertices[rng() % h.vertices.size()];
        const auto& b = h.vertices[rng() % h.vertices.size()];
        Rational lam(static_cast<long>(rng() % 9) - 2, 4);
        q = a + GoldenNumber(lam) * (b - a);
      }
      CHECK(h.contains(q) == surface_contains(s, c, q));
    }
    if (auto bb = surface_bounds(s, c)) {
      for (const auto& v : h.vertices)
        for (int a = 0; a < 3; ++a) {
          CHECK(bb->first[a] <= v[a]);
          CHECK(v[a] <= bb->second[a]);
        }
    }
  }
}

TEST_CASE("surface membership agrees with the strip test") {
  for (int k : {6, 10}) {
    const auto& s = scheme(k);
    const auto& d = s.superspace();
    std::mt19937_64 rng(k);
    for (int it = 0; it < 300; ++it) {
      auto n = random_point(rng, d.k(), 2);
      auto c = s.route(n);
      bool strip = in_strip(n, d);
      if (!c) {
        CHECK_FALSE(strip);
        continue;
      }
      CHECK(surface_membership(s, s.cosets()[*c], n) == strip);
    }
    std::vector<long> n(d.k(), 0);
    auto c0 = s.route(n);
    REQUIRE(c0);
    CHECK(surface_membership(s, s.cosets()[*c0], n));
    for (std::size_t i = 0; i < d.k(); ++i) {
      n[i] = 1;
      auto ci = s.route(n);
      REQUIRE(ci);
      CHECK(surface_membership(s, s.cosets()[*ci], n));
      n[i] = 0;
    }
  }
}

TEST_CASE("surface membership rejects a point of another fibre") {
  const auto& s = scheme(10);
  std::vector<long> n(10, 0);
  n[0] = 1;
  auto c = s.route(n);
  REQUIRE(c);
  auto other = *c == 0 ? 1 : 0;
  CHECK_THROWS_AS(surface_membership(s, s.cosets()[other], n), std::invalid_argument);
  CHECK_THROWS_AS(surface_vertices(s, s.cosets()[0], 8), std::invalid_argument);
}

TEST_CASE("msm generation equals strip generation") {
  struct Run {
    int k;
    const char* r2;
  };
  for (Run r : {Run{6, "25"}, Run{6, "64"}, Run{10, "16"}, Run{15, "10"}}) {
    const auto& s = scheme(r.k);
    auto a = generate_msm(s, gn(r.r2));
    auto b = generate_strip(testing::data(r.k), gn(r.r2));
    CHECK(a.size() == b.size());
    CHECK(pattern_csv(a) == pattern_csv(b));
    CHECK(a.collisions == 0);
    CHECK(a.accepted == b.accepted);
  }
}

TEST_CASE("msm generation equals strip generation with an offset") {
  for (int k : {6, 10}) {
    Offset g(k);
    for (int i = 0; i < k; ++i) g[i] = GoldenNumber(Rational((i * 5) % 7 - 3, 11), Rational(i % 3, 13));
    auto s = MsmScheme::build(testing::data(k), g);
    MsmOptions mo;
    mo.with_occupancy = false;
    StripOptions so;
    so.with_occupancy = false;
    auto a = generate_msm(s, gn("20"), mo);
    auto b = generate_strip(testing::data(k), gn("20"), g, so);
    CHECK(a.size() > 20);
    CHECK(pattern_csv(a) == pattern_csv(b));
  }
}

TEST_CASE("full-dimensional-only generation is a subset") {
  const auto& s = scheme(10);
  MsmOptions all, full;
  all.with_occupancy = full.with_occupancy = false;
  full.full_dim_only = true;
  auto a = generate_msm(s, gn("30"), all);
  auto b = generate_msm(s, gn("30"), full);
  CHECK(difference(b, a).empty());
  CHECK(b.size() <= a.size());
  for (const auto& [x, pt] : b.points)
    CHECK(s.cosets()[*s.route(pt.source)].surface_status == SurfaceStatus::full_dim);
}

TEST_CASE("msm occupancy equals strip occupancy") {
  const auto& s = scheme(10);
  auto p = generate_msm(s, gn("12"));
  for (const auto& [x, pt] : p.points) {
    CHECK(pt.neighbor_mask == msm_occupancy(s, pt.source));
    CHECK(pt.neighbor_mask == occupancy(pt.source, s.superspace()));
  }
}

TEST_CASE("every strip point routes to an enumerated coset (k=16)") {
  const auto& s = scheme(16);
  StripOptions so;
  so.with_occupancy = false;
  auto p = generate_strip(s.superspace(), gn("9"), {}, so);
  CHECK(p.size() > 50);
  for (const auto& [x, pt] : p.points) {
    auto c = s.route(pt.source);
    REQUIRE(c);
    CHECK(surface_membership(s, s.cosets()[*c], pt.source));
  }
}

TEST_CASE("thread count does not change the scheme or the pattern") {
  auto a = MsmScheme::build(testing::data(10), {}, 1);
  auto b = MsmScheme::build(testing::data(10), {}, 3);
  REQUIRE(a.cosets().size() == b.cosets().size());
  for (std::size_t i = 0; i < a.cosets().size(); ++i) {
    CHECK(a.cosets()[i].z == b.cosets()[i].z);
    CHECK(a.cosets()[i].surface_status == b.cosets()[i].surface_status);
  }
  MsmOptions one, three;
  three.threads = 3;
  CHECK(pattern_csv(generate_msm(a, gn("20"), one)) == pattern_csv(generate_msm(a, gn("20"), three)));
}

TEST_CASE("obj export") {
  const auto& s = scheme(6);
  Hull h = surface_vertices(s, s.cosets()[0]);
  std::string obj = hull_obj(h, "test");
  std::size_t v = 0, f = 0;
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == h.points.size());
  CHECK(f == h.triangles.size());
  CHECK(obj.find("# test") == 0);
}

}
