// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <json.hpp>

#include "mcms/cluster.hpp"
#include "mcms/errors.hpp"
#include "mcms/group.hpp"
#include "mcms/msm.hpp"
#include "mcms/repk.hpp"
#include "mcms/strip.hpp"
#include "mcms/superspace.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace mcms;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

GoldenNumber gnum(const char* s) { return *GoldenNumber::parse(s); }

const IcosaGroup& group() {
  static const IcosaGroup g = IcosaGroup::build();
  return g;
}

Cluster cluster(int k) {
  std::vector<OrbitSeed> seeds;
  auto add = [&](OrbitType t) { seeds.push_back({ray_point(t, 1), t}); };
  if (k == 6 || k == 16 || k == 31) add(OrbitType::icosahedron);
  if (k == 10 || k == 16 || k == 31) add(OrbitType::dodecahedron);
  if (k == 15 || k == 31) add(OrbitType::icosidodecahedron);
  return Cluster::from_seeds(group(), seeds);
}

const SuperspaceData& data(int k) {
  static std::map<int, SuperspaceData> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, SuperspaceData::build(group(), cluster(k))).first;
  return it->second;
}

nlohmann::json load_goldens() {
  const char* env = std::getenv("ICOSA_MCMS_SEEDED_GOLDENS");
  std::string path = env && *env ? env : std::string(MCMS_SOURCE_DIR) + "/tests/goldens.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open goldens file " + path);
  return nlohmann::json::parse(in);
}

// Generation runs shared by the equivalence, occupancy, scheme and determinism criteria.
struct Runs {
  std::map<int, Pattern> strip, msm, bfs;
  std::map<int, MsmScheme> scheme;
  std::map<int, double> seconds;
};

Runs& runs() {
  static Runs r;
  return r;
}

const GoldenNumber& radius() {
  static const GoldenNumber r = 25;
  return r;
}

void criterion_1(Outcome& o) {
  const auto& g = group();
  o.require(g.order() == 60, "order 60");
  std::vector<std::size_t> sizes;
  for (const auto& c : g.classes()) sizes.push_back(c.members.size());
  o.require(sizes == std::vector<std::size_t>{1, 12, 15, 20, 12}, "class sizes");
  auto pw = [](const Mat3& m, int n) {
    Mat3 r = Mat3::identity();
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
  };
  Mat3 a = generator_a(), b = generator_b();
  o.require(pw(a, 5) == Mat3::identity() && pw(b, 2) == Mat3::identity() && pw(a * b, 3) == Mat3::identity(),
            "a^5 = b^2 = (ab)^3 = e");
  o.require(a != Mat3::identity() && b != Mat3::identity() && a * b != Mat3::identity(), "generators nontrivial");
  o.notes << " order=" << g.order();
}

void criterion_2(Outcome& o) {
  auto len = [](const char* x, const char* y, const char* z) {
    return orbit(group(), PhysVector{{gnum(x), gnum(y), gnum(z)}}).size();
  };
  std::size_t a = len("1", "t", "0"), b = len("1", "1", "1"), c = len("1", "0", "0"), d = len("2", "t", "0");
  o.require(a == 12 && b == 20 && c == 30 && d == 60, "orbit lengths");
  o.notes << " lengths=" << a << "/" << b << "/" << c << "/" << d;
}

void criterion_3(Outcome& o) {
  for (int k : {6, 16}) {
    const RepK& rep = data(k).rep();
    bool orth = true;
    for (const auto& g : rep.maps()) {
      auto m = g.matrix();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          long s = 0;
          for (std::size_t l = 0; l < m.size(); ++l) s += m[i][l] * m[j][l];
          orth = orth && s == (i == j ? 1 : 0);
        }
    }
    o.require(orth, "orthogonal k=" + std::to_string(k));
    std::size_t defects = rep.homomorphism_defects(group());
    o.require(defects == 0, "homomorphism k=" + std::to_string(k));
    o.notes << " k=" << k << ":3600 products, " << defects << " defects";
  }
}

void criterion_4(Outcome& o) {
  for (int k : {6, 16, 31}) {
    const auto& d = data(k);
    std::map<std::string, bool> checks;
    for (const auto& c : d.run_checks(group())) checks[c.name] = c.ok;
    for (const char* name : {"coordinate_gram_scalar", "pi_symmetric", "pi_idempotent", "pi_trace_3", "equivariance_pi",
                             "embed_basis_vectors"})
      o.require(checks.count(name) && checks[name], std::string(name) + " k=" + std::to_string(k));
    // explicit restatement of the embedding identity
    for (std::size_t i = 0; i < d.k(); ++i) {
      std::vector<long> n(d.k(), 0);
      n[i] = 1;
      o.require(d.physical_embed(n) == d.cluster()[i], "physical_embed(eps_i) = e_i");
    }
  }
  o.notes << " k=6,16,31";
}

void criterion_5(Outcome& o) {
  for (int k : {6, 16, 31}) {
    const auto& d = data(k);
    const auto& p = d.pi().entries;
    const auto& pp = d.pi_prime().entries;
    o.require((p * pp).is_zero() && (pp * p).is_zero(), "pi pi' = pi' pi = 0 k=" + std::to_string(k));
    GnMatrix sum = p + pp;
    bool rational = true;
    for (std::size_t i = 0; i < d.k(); ++i)
      for (std::size_t j = 0; j < d.k(); ++j) rational = rational && sum(i, j).is_rational();
    o.require(rational, "pi + pi' rational k=" + std::to_string(k));
    for (int a = 0; a < 3; ++a) {
      PhysVector s;
      for (std::size_t i = 0; i < d.k(); ++i) s += d.cluster()[i][a] * d.conj()[i];
      o.require(s.is_zero(), "Schur zero, unit " + std::to_string(a));
    }
  }
  o.notes << " k=6,16,31";
}

void criterion_7(Outcome& o) {
  auto m6 = decompose_character(data(6).rep().character(group()));
  o.require(m6 == std::array<long, 5>{0, 1, 1, 0, 0}, "k=6 multiplicities (0,1,1,0,0)");
  o.notes << " k6=(" << m6[0] << "," << m6[1] << "," << m6[2] << "," << m6[3] << "," << m6[4] << ")";
  for (int k : {6, 10, 15, 16, 31}) {
    auto m = decompose_character(data(k).rep().character(group()));
    o.require(m[1] >= 1, "m2 >= 1 for k=" + std::to_string(k));
  }
}

// The generation runs; strip exhaustive and msm with neighbour masks.
void generate(int k, std::size_t threads) {
  auto& r = runs();
  auto t0 = Clock::now();
  StripOptions so;
  so.threads = threads;
  r.strip[k] = generate_strip(data(k), radius(), {}, so);
  r.scheme.emplace(k, MsmScheme::build(data(k), {}, threads));
  MsmOptions mo;
  mo.threads = threads;
  r.msm[k] = generate_msm(r.scheme.at(k), radius(), mo);
  r.seconds[k] = std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion_8(Outcome& o) {
  double total = 0;
  for (int k : {6, 16}) {
    generate(k, 1);
    const auto& a = runs().strip[k];
    const auto& b = runs().msm[k];
    auto only_a = difference(a, b), only_b = difference(b, a);
    o.require(only_a.empty() && only_b.empty(), "exact set equality k=" + std::to_string(k));
    o.require(a.size() >= 100 && b.size() >= 100, "at least 100 points k=" + std::to_string(k));
    o.notes << " k=" << k << ": strip=" << a.size() << " msm=" << b.size() << " diff=" << only_a.size() + only_b.size();
    total += runs().seconds[k];
  }
  o.require(total < 300, "runtime < 5 min");
}

void criterion_6(Outcome& o) {
  std::size_t runs_seen = 0, coll = 0;
  for (auto* m : {&runs().strip, &runs().msm, &runs().bfs})
    for (const auto& [k, p] : *m) {
      ++runs_seen;
      coll += p.collisions;
    }
  o.require(runs_seen >= 6, "all generation runs present");
  o.require(coll == 0, "zero physical-key collisions");
  // pi'((pi + pi') kappa eps_j) = e'_j
  for (int k : {6, 16, 31}) {
    const auto& d = data(k);
    for (std::size_t j = 0; j < d.k(); ++j) {
      std::vector<long> n(d.k(), 0);
      n[j] = 1;
      auto lift = d.lift(n);
      std::vector<GoldenNumber> y(lift.begin(), lift.end());
      o.require(d.conjugate_embed(y) == d.conj()[j], "density generator identity k=" + std::to_string(k));
    }
  }
  o.notes << " runs=" << runs_seen << " collisions=" << coll;
}

void criterion_9(Outcome& o) {
  auto t0 = Clock::now();
  for (int k : {6, 16}) {
    StripOptions so;
    so.mode = StripMode::bfs;
    so.with_occupancy = false;
    runs().bfs[k] = generate_strip(data(k), radius(), {}, so);
    const auto& a = runs().bfs[k];
    const auto& b = runs().strip[k];
    bool eq = difference(a, b).empty() && difference(b, a).empty();
    o.require(eq && a.accepted == b.accepted, "bfs = exhaustive k=" + std::to_string(k));
    o.notes << " k=" << k << ": " << a.size() << (eq ? " equal" : " differ");
  }
  double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(s < 120, "runtime < 2 min");
}

void criterion_10(Outcome& o) {
  for (int k : {6, 16}) {
    const auto& d = data(k);
    const auto& ps = runs().strip[k];
    const auto& pm = runs().msm[k];
    std::size_t agree = 0, full = 0, n = 0;
    for (const auto& [x, pt] : ps.points) {
      ++n;
      bool all = pt.occupied_count() == 2 * d.k();
      bool win = fully_occupied(pt.source, d);
      const auto& other = pm.points.at(x);
      agree += win == all && other.neighbor_mask == pt.neighbor_mask;
      full += win;
    }
    o.require(agree == n, "window intersection = 2k-neighbour membership k=" + std::to_string(k));
    o.require(full < n, "fully-occupied fraction < 1 k=" + std::to_string(k));
    o.notes << " k=" << k << ": " << agree << "/" << n << " agree, full=" << full;
  }
}

void criterion_11(Outcome& o, const nlohmann::json& g) {
  auto t0 = Clock::now();
  const auto& s = runs().scheme.at(6);
  const auto& c = s.cosets().at(0);
  Hull h = surface_vertices(s, c);
  Hull shadow = oracle::cube_shadow(data(6));
  o.require(h.dim == 3, "convex polytope");
  o.require(h.vertices.size() == 32, "32 vertices");
  o.require(h.vertices.size() == g["k6"]["surface"]["vertices"].get<std::size_t>(), "golden vertex count");
  o.require(h.vertices == shadow.vertices, "vertex set equals the cube-shadow hull");
  o.require(h.facets.size() == 30, "30 facets");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> u(-40, 40);
  std::size_t agree = 0, inside = 0;
  for (int it = 0; it < 100; ++it) {
    PhysVector q{{Rational(u(rng), 16), Rational(u(rng), 16), Rational(u(rng), 16)}};
    bool a = h.contains(q), b = surface_contains(s, c, q);
    agree += a == b;
    inside += a;
  }
  o.require(agree == 100, "hull membership = FM membership on 100 probes");
  double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(sec < 30, "runtime < 30 s");
  o.notes << " vertices=" << h.vertices.size() << " facets=" << h.facets.size() << " probes=" << agree
          << "/100 (inside " << inside << ")";
}

void criterion_12(Outcome& o, const nlohmann::json& g) {
  auto t0 = Clock::now();
  auto lat = sublattice_basis(data(16));
  GnMatrix bm(16, 6);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 6; ++j) bm(i, j) = GoldenNumber(Rational(lat.basis[i][j], mpz_class(1)));
  o.require(rank(bm) == 6, "sublattice rank 6");
  const auto& s = runs().scheme.at(16);
  std::size_t routed = 0;
  for (const auto& [x, pt] : runs().strip[16].points) routed += s.route(pt.source).has_value();
  o.require(routed == runs().strip[16].size(), "every strip point has an enumerated coset");
  std::size_t residues = oracle::residue_count(s);
  o.require(s.index() == mpz_class(static_cast<unsigned long>(residues)), "index = residue-count oracle");
  const auto& gs = g["k16"]["scheme"];
  o.require(s.cosets().size() == gs["cosets"].get<std::size_t>(), "golden |cosets|");
  o.require(s.m() == gs["m"].get<std::size_t>(), "golden m");
  o.require(s.index().get_str() == gs["index"].get<std::string>(), "golden index");
  double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  // the scheme itself was built inside the criterion-8 run; count that time too
  double build = runs().seconds[16];
  o.require(sec < 120, "runtime < 2 min");
  o.notes << " cosets=" << s.cosets().size() << " m=" << s.m() << " lower=" << s.cosets().size() - s.m()
          << " index=" << s.index().get_str() << " residues=" << residues << " routed=" << routed << "/"
          << runs().strip[16].size();
  o.notes.precision(1);
  o.notes << std::fixed << " (checks " << sec << " s, scheme built during the generation run of " << build << " s)";
}

void criterion_13(Outcome& o, const nlohmann::json& g) {
  for (int k : {6, 16}) {
    std::string s1 = pattern_csv(runs().strip[k]), m1 = pattern_csv(runs().msm[k]);
    StripOptions so;
    so.threads = 4;
    Pattern ps = generate_strip(data(k), radius(), {}, so);
    MsmScheme sc = MsmScheme::build(data(k), {}, 4);
    MsmOptions mo;
    mo.threads = 4;
    Pattern pm = generate_msm(sc, radius(), mo);
    std::string s4 = pattern_csv(ps), m4 = pattern_csv(pm);
    o.require(s1 == s4 && m1 == m4, "byte-identical CSV at 1 and 4 threads k=" + std::to_string(k));
    o.require(s1 == m1, "strip and msm CSV identical k=" + std::to_string(k));
    std::string hash = sha256_hex(pattern_csv_body(runs().strip[k]));
    const auto& gk = g["k" + std::to_string(k)]["strip"]["25"];
    o.require(hash == gk["sha256"].get<std::string>(), "golden CSV hash k=" + std::to_string(k));
    o.notes << " k=" << k << ": " << hash.substr(0, 16);
  }
}

}  // namespace

int main() {
  nlohmann::json goldens;
  try {
    goldens = load_goldens();
  } catch (const std::exception& e) {
    std::cout << "FAIL setup: " << e.what() << '\n';
    return 1;
  }

  struct Entry {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
  };
  // 6 reports on the generation runs, so it goes after 9.
  std::vector<Entry> plan = {
      {1, "group structure", criterion_1},
      {2, "orbit taxonomy", criterion_2},
      {3, "signed-permutation representation", criterion_3},
      {4, "Gram scalarity, projector pi, embedding", criterion_4},
      {5, "pi pi' = 0, rationality of pi + pi', Schur zero", criterion_5},
      {7, "representation content", criterion_7},
      {8, "strip = multi-component model set (k=6, 16)", criterion_8},
      {9, "bfs = exhaustive (k=6, 16)", criterion_9},
      {6, "injectivity and density generator identity", criterion_6},
      {10, "full-occupancy equivalence", criterion_10},
      {11, "k=6 atomic surface", [&](Outcome& o) { criterion_11(o, goldens); }},
      {12, "scheme arithmetic k=16", [&](Outcome& o) { criterion_12(o, goldens); }},
      {13, "determinism across thread counts", [&](Outcome& o) { criterion_13(o, goldens); }},
  };

  std::map<int, std::string> lines;
  bool all = true;
  for (auto& e : plan) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.ok = false;
      o.notes << " [exception: " << ex.what() << "]";
    }
    double sec = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.title << " |" << o.notes.str() << " ("
         << std::fixed;
    line.precision(2);
    line << sec << " s)";
    std::cout << line.str() << std::endl;
    lines[e.id] = line.str();
    all = all && o.ok;
  }
  std::cout << "\nsummary (criterion order)\n";
  for (const auto& [id, l] : lines) std::cout << l.substr(0, l.find(" |")) << '\n';
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << '\n';
  return all ? 0 : 1;
}
