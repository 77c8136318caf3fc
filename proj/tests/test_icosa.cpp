#include <doctest.h>

#include "mcms/cluster.hpp"
#include "mcms/errors.hpp"
#include "mcms/group.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace mcms;
using testing::gn;
using testing::group;

namespace {

PhysVector v3(const char* a, const char* b, const char* c) { return {{gn(a), gn(b), gn(c)}}; }

Mat3 power(const Mat3& m, int n) {
  Mat3 r = Mat3::identity();
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

}  // namespace

TEST_SUITE("icosa") {

TEST_CASE("group order and classes") {
  const auto& g = group();
  CHECK(g.order() == 60);
  std::vector<std::size_t> sizes;
  for (const auto& c : g.classes()) sizes.push_back(c.members.size());
  CHECK(sizes == std::vector<std::size_t>{1, 12, 15, 20, 12});
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 12, 12, 15, 20});
}

TEST_CASE("class sizes by direct conjugation of matrices") {
  const auto& g = group();
  std::vector<std::size_t> seen(g.order(), 0);
  std::multiset<std::size_t> sizes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> cls;
    for (const auto& h : g.elements()) {
      Mat3 c = h.matrix * g.element(x).matrix * h.matrix.transpose();
      std::size_t idx = g.find(c);
      REQUIRE(idx < g.order());
      cls.insert(idx);
    }
    for (auto i : cls) seen[i] = 1;
    sizes.insert(cls.size());
  }
  CHECK(sizes == std::multiset<std::size_t>{1, 12, 12, 15, 20});
}

TEST_CASE("presentation and generator action") {
  Mat3 a = generator_a(), b = generator_b();
  CHECK(power(a, 5) == Mat3::identity());
  CHECK(power(b, 2) == Mat3::identity());
  CHECK(power(a * b, 3) == Mat3::identity());
  CHECK(a != Mat3::identity());
  CHECK(b * v3("1", "t", "0") == v3("-1", "-t", "0"));
  CHECK(a * v3("1", "t", "0") == v3("-1", "t", "0"));
  CHECK(Mat3::identity() * v3("1", "1", "1") == v3("1", "1", "1"));
}

TEST_CASE("every element is a rotation") {
  for (const auto& e : group().elements()) {
    CHECK(e.matrix * e.matrix.transpose() == Mat3::identity());
    CHECK(e.matrix.determinant() == GoldenNumber(1));
  }
}

TEST_CASE("orbit lengths") {
  CHECK(orbit(group(), v3("1", "t", "0")).size() == 12);
  CHECK(orbit(group(), v3("1", "1", "1")).size() == 20);
  CHECK(orbit(group(), v3("1", "0", "0")).size() == 30);
  CHECK(orbit(group(), v3("2", "t", "0")).size() == 60);
  CHECK(orbit(group(), ray_point(OrbitType::icosahedron, gn("2+t"))).size() == 12);
}

TEST_CASE("cluster sizes and canonical half") {
  CHECK(testing::cluster(6).k() == 6);
  CHECK(testing::cluster(16).k() == 16);
  CHECK(testing::cluster(31).k() == 31);
  for (int k : {6, 16, 31}) {
    auto c = testing::cluster(k);
    std::set<PhysVector> all;
    for (const auto& e : c.half()) {
      int s = 0;
      for (int i = 0; i < 3 && s == 0; ++i) s = e[i].sign();
      CHECK(s == 1);
      all.insert(e);
      all.insert(-e);
    }
    CHECK(all.size() == 2 * c.k());
  }
  auto c6 = testing::cluster(6);
  auto [i, s] = c6.locate(v3("1", "t", "0"));
  CHECK(i < 6);
  CHECK(s == 1);
  auto [j, s2] = c6.locate(v3("-1", "-t", "0"));
  CHECK(j == i);
  CHECK(s2 == -1);
}

TEST_CASE("character formula") {
  const auto& t = CharacterTable::get();
  CHECK(decompose_character(t.rows[1]) == std::array<long, 5>{0, 1, 0, 0, 0});
  Character reg{GoldenNumber(60), 0, 0, 0, 0};
  CHECK(decompose_character(reg) == std::array<long, 5>{1, 3, 3, 4, 5});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(t.inner(t.rows[i], t.rows[j]) == GoldenNumber(i == j ? 1 : 0));
  Character bad{GoldenNumber(2), 0, 0, 0, 0};
  CHECK_THROWS_AS(decompose_character(bad), CheckFailure);
}

TEST_CASE("character table against traces of the generating matrices") {
  // Row Gamma_2 is the trace of the defining rotation matrices.
  const auto& g = group();
  const auto& t = CharacterTable::get();
  for (std::size_t c = 0; c < 5; ++c) {
    const auto& cls = g.classes()[c];
    for (auto m : cls.members) CHECK(g.element(m).matrix.trace() == t.rows[1][c]);
  }
}

TEST_CASE("config parsing") {
  const auto& g = group();
  CHECK(parse_cluster_config(R"({"orbits":[{"ray":"icosahedron"}]})", g).k() == 6);
  CHECK(parse_cluster_config(R"({"orbits":[{"seed":["1","t","0"],"length":12}]})", g).k() == 6);
  CHECK(parse_cluster_config(R"({"orbits":[{"ray":"dodecahedron","alpha":"2"}]})", g).k() == 10);
  auto throws = [&](const char* text, const char* fragment) {
    try {
      parse_cluster_config(text, g);
      FAIL("expected ConfigError for " << text);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  throws(R"({"orbits":[{"seed":["1","2","3"],"length":12}]})", "seed not on admissible ray");
  throws(R"({"orbits":[{"seed":["1","t","0"],"length":20}]})", "seed not on admissible ray");
  throws(R"({"orbits":[{"seed":["1","t","0"],"length":13}]})", "orbit length");
  throws(R"({"orbits":[{"ray":"cube"}]})", "unknown ray");
  throws(R"({"orbits":[{"ray":"icosahedron","alpha":"0"}]})", "");
  throws("not json", "not valid JSON");
  throws("[]", "JSON object");
  throws(R"({"vectors":[]})", "non-empty");
  throws(R"({"vectors":[["0","0","0"]]})", "zero vector");
}

TEST_CASE("repeated orbit is rejected") {
  CHECK_THROWS_AS(
      parse_cluster_config(R"({"orbits":[{"ray":"icosahedron"},{"ray":"icosahedron"}]})", group()),
      ConfigError);
}

}
