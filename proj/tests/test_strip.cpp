#include <doctest.h>

#include "mcms/errors.hpp"
#include "mcms/strip.hpp"
#include "support.hpp"

#include <random>
#include <sstream>

using namespace mcms;
using testing::gn;

namespace {

GoldenNumber norm_sq(const PhysVector& v) { return dot(v, v); }

const Pattern& k6_run(const char* r2) {
  static std::map<std::string, Pattern> cache;
  auto it = cache.find(r2);
  if (it == cache.end()) it = cache.emplace(r2, generate_strip(testing::data(6), gn(r2))).first;
  return it->second;
}

std::vector<bool> all_true_mask(std::size_t k) { return std::vector<bool>(2 * k, true); }

}  // namespace

TEST_SUITE("strip") {

TEST_CASE("origin and basis vectors are in the strip") {
  for (int k : {6, 10, 16, 31}) {
    const auto& d = testing::data(k);
    std::vector<long> n(d.k(), 0);
    CHECK(in_strip(n, d));
    for (std::size_t i = 0; i < d.k(); ++i) {
      n[i] = 1;
      CHECK(in_strip(n, d));
      n[i] = 0;
    }
  }
}

TEST_CASE("frozen strip answers for -e (k=6)") {
  const auto& d = testing::data(6);
  const auto& g = testing::goldens()["k6"]["in_strip_minus_e"];
  for (auto [text, want] : {std::pair{"(1, t, 0)", PhysVector{{gn("1"), gn("t"), gn("0")}}},
                            std::pair{"(0, 1, -t)", PhysVector{{gn("0"), gn("1"), gn("-t")}}}}) {
    auto [i, s] = d.cluster().locate(want);
    std::vector<long> n(6, 0);
    n[i] = -s;
    CHECK(in_strip(n, d) == g[text].get<bool>());
  }
}

TEST_CASE("k=6 R^2=25 golden count, basis vectors present, ball closure") {
  const auto& p = k6_run("25");
  const auto& g = testing::goldens()["k6"]["strip"]["25"];
  CHECK(p.size() == g["points"].get<std::size_t>());
  CHECK(p.accepted == g["accepted"].get<std::size_t>());
  CHECK(sha256_hex(pattern_csv_body(p)) == g["sha256"].get<std::string>());
  CHECK(p.contains(PhysVector{}));
  for (const auto& e : testing::data(6).cluster().half()) {
    CHECK(p.contains(e));
  }
  for (const auto& [x, pt] : p.points) {
    CHECK(norm_sq(x) <= gn("25"));
    CHECK(testing::data(6).physical_embed(pt.source) == x);
    CHECK(in_strip(pt.source, testing::data(6)));
  }
  CHECK(p.collisions == 0);
  CHECK(p.merged == 0);
}

TEST_CASE("bfs equals exhaustive") {
  for (auto [k, r2] : {std::pair{6, "25"}, std::pair{6, "60"}, std::pair{10, "12"}, std::pair{16, "9"}}) {
    StripOptions bfs;
    bfs.mode = StripMode::bfs;
    bfs.with_occupancy = false;
    StripOptions ex = bfs;
    ex.mode = StripMode::exhaustive;
    auto a = generate_strip(testing::data(k), gn(r2), {}, bfs);
    auto b = generate_strip(testing::data(k), gn(r2), {}, ex);
    CHECK(a.size() == b.size());
    CHECK(difference(a, b).empty());
    CHECK(difference(b, a).empty());
    CHECK(a.accepted == b.accepted);
  }
}

TEST_CASE("bfs equals exhaustive with a generic offset") {
  const auto& d = testing::data(6);
  Offset gamma{gn("1/7"), gn("-1/5+1/9*t"), gn("1/3"), gn("0"), gn("-2/11"), gn("1/13*t")};
  StripOptions ex;
  ex.with_occupancy = false;
  auto b = generate_strip(d, gn("30"), gamma, ex);
  REQUIRE(b.size() > 0);
  StripOptions bfs = ex;
  bfs.mode = StripMode::bfs;
  bfs.seed = b.points.begin()->second.source;
  auto a = generate_strip(d, gn("30"), gamma, bfs);
  CHECK(difference(a, b).empty());
  CHECK(difference(b, a).empty());
  bfs.seed = LatticePoint{5, 5, 5, 5, 5, 5};
  CHECK_THROWS_AS(generate_strip(d, gn("30"), gamma, bfs), ConfigError);
}

TEST_CASE("input errors") {
  const auto& d = testing::data(6);
  CHECK_THROWS_AS(generate_strip(d, gn("0")), ConfigError);
  CHECK_THROWS_AS(generate_strip(d, gn("-1")), ConfigError);
  CHECK_THROWS_AS(generate_strip(d, gn("4"), Offset(5, GoldenNumber(0))), ConfigError);
  CHECK_THROWS_AS(in_strip(std::vector<long>(5, 0), d), std::invalid_argument);
}

TEST_CASE("property: translation covariance") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> u(-2, 2);
  for (int k : {6, 16}) {
    const auto& d = testing::data(k);
    for (int it = 0; it < 60; ++it) {
      std::vector<long> n(d.k()), m(d.k());
      Offset g(d.k()), gm(d.k());
      for (std::size_t i = 0; i < d.k(); ++i) {
        n[i] = u(rng);
        m[i] = u(rng);
        g[i] = testing::random_gn(rng, 3, 5);
        gm[i] = g[i] - GoldenNumber(m[i]);
      }
      std::vector<long> nm(d.k());
      for (std::size_t i = 0; i < d.k(); ++i) nm[i] = n[i] + m[i];
      CHECK(in_strip(n, d, g) == in_strip(nm, d, gm));
    }
  }
}

TEST_CASE("occupancy examples") {
  const auto& d = testing::data(6);
  std::vector<long> zero(6, 0);
  auto mask = occupancy(zero, d);
  CHECK(mask.size() == 12);
  for (std::size_t i = 0; i < 6; ++i) CHECK(mask[i]);
  bool full = fully_occupied(zero, d);
  CHECK(full == (mask == all_true_mask(6)));
  CHECK(full == testing::goldens()["k6"]["fully_occupied_origin"].get<bool>());
}

TEST_CASE("full occupancy: window intersection agrees with the neighbour masks (k=6, R^2=100)") {
  const auto& d = testing::data(6);
  const auto& p = k6_run("100");
  const auto& g = testing::goldens()["k6"]["strip"]["100"];
  CHECK(p.size() == g["points"].get<std::size_t>());
  std::size_t full = 0;
  for (const auto& [x, pt] : p.points) {
    REQUIRE(pt.neighbor_mask.size() == 12);
    CHECK(pt.neighbor_mask == occupancy(pt.source, d));
    bool f = fully_occupied(pt.source, d);
    CHECK(f == (pt.neighbor_mask == all_true_mask(6)));
    full += f;
  }
  CHECK(full == g["fully_occupied"].get<std::size_t>());
  CHECK(full < p.size());
  CHECK(full > 0);
}

TEST_CASE("occupied neighbours lie in the translated cluster (k=6)") {
  const auto& d = testing::data(6);
  const auto& p = k6_run("100");
  for (const auto& [x, pt] : p.points)
    for (std::size_t i = 0; i < 12; ++i) {
      PhysVector y = i < 6 ? x + d.cluster()[i] : x - d.cluster()[i - 6];
      if (norm_sq(y) > gn("100")) continue;
      CHECK(pt.neighbor_mask[i] == p.contains(y));
    }
}

TEST_CASE("thread count does not change the output") {
  StripOptions one, four;
  four.threads = 4;
  for (int k : {6, 16}) {
    auto a = generate_strip(testing::data(k), gn(k == 6 ? "40" : "9"), {}, one);
    auto b = generate_strip(testing::data(k), gn(k == 6 ? "40" : "9"), {}, four);
    CHECK(pattern_csv(a) == pattern_csv(b));
    four.mode = StripMode::bfs;
    auto c = generate_strip(testing::data(k), gn(k == 6 ? "40" : "9"), {}, four);
    CHECK(pattern_csv(a) == pattern_csv(c));
    four.mode = StripMode::exhaustive;
  }
}

TEST_CASE("csv layout") {
  const auto& p = k6_run("25");
  std::string csv = pattern_csv(p), body = pattern_csv_body(p);
  CHECK(csv.substr(0, body.size()) == body);
  CHECK(csv.substr(body.size()) == "# sha256 " + sha256_hex(body) + "\n");
  std::istringstream in(body);
  std::string header;
  std::getline(in, header);
  CHECK(header == "nx1,nx2,nx3,nx4,nx5,nx6,x_rat,x_gold,y_rat,y_gold,z_rat,z_gold,x_f,y_f,z_f,occupied_count");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
  }
  CHECK(rows == p.size());
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("sqrt_upper is a sound and tight bound") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    GoldenNumber x = testing::random_gn(rng, 50, 9).abs();
    Rational r = sqrt_upper(x);
    CHECK(GoldenNumber(r * r) >= x);
    CHECK(r.to_double() <= std::sqrt(x.approx()) + 1e-6);
  }
  CHECK(sqrt_upper(GoldenNumber(0)).is_zero());
  CHECK_THROWS_AS(sqrt_upper(GoldenNumber(-1)), std::invalid_argument);
}

}
