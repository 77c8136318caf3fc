// mcms command-line driver: info, verify, gen, compare, surfaces.

#include <CLI11.hpp>
#include <json.hpp>

#include "mcms/checks.hpp"
#include "mcms/cluster.hpp"
#include "mcms/errors.hpp"
#include "mcms/group.hpp"
#include "mcms/msm.hpp"
#include "mcms/strip.hpp"
#include "mcms/superspace.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using Report = nlohmann::ordered_json;
using namespace mcms;

constexpr int exit_ok = 0;
constexpr int exit_check = 1;
constexpr int exit_config = 2;
constexpr int exit_internal = 3;

std::string scalar_text(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render(const Report& r, std::ostream& out, const std::string& indent = "") {
  for (auto it = r.begin(); it != r.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << indent << it.key() << ":\n";
      render(v, out, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << it.key() << ":\n";
      for (const auto& row : v) {
        out << indent << "  -";
        for (auto f = row.begin(); f != row.end(); ++f) out << ' ' << f.key() << '=' << scalar_text(f.value());
        out << '\n';
      }
    } else if (v.is_array()) {
      out << indent << it.key() << ":";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << scalar_text(v[i]);
      out << '\n';
    } else {
      out << indent << it.key() << ": " << scalar_text(v) << '\n';
    }
  }
}

void emit(const Report& r, bool json) {
  if (json) std::cout << r.dump(2) << '\n';
  else render(r, std::cout);
}

Report lattice_json(const LatticePoint& n) {
  Report a = Report::array();
  for (long v : n) a.push_back(v);
  return a;
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

GoldenNumber parse_golden(const std::string& text, const std::string& what) {
  auto g = GoldenNumber::parse(text);
  if (!g) throw ConfigError(what + ": cannot parse '" + text + "'");
  return *g;
}

// Whitespace-separated GoldenNumber tokens, '#' to end of line is a comment.
Offset load_offset(const std::string& path, std::size_t k) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open offset file " + path);
  Offset g;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) g.push_back(parse_golden(tok, "offset file"));
  }
  if (g.size() != k)
    throw ConfigError("offset file has " + std::to_string(g.size()) + " entries, cluster has k = " + std::to_string(k));
  return g;
}

GoldenNumber parse_radius(const std::string& text) {
  GoldenNumber r = parse_golden(text, "--radius-sq");
  if (r.sign() <= 0) throw ConfigError("--radius-sq must be positive");
  return r;
}

struct Common {
  std::string cluster_path;
  bool json = false;
};

struct Loaded {
  IcosaGroup group;
  Cluster cluster;
};

Loaded load(const Common& c) {
  Loaded l{IcosaGroup::build(), {}};
  l.cluster = load_cluster_config(c.cluster_path, l.group);
  return l;
}

std::string goldens_path() {
  const char* env = std::getenv("ICOSA_MCMS_SEEDED_GOLDENS");
  return env && *env ? env : "tests/goldens.json";
}

void merge_into(Report& r, const Report& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) r[it.key()] = it.value();
}

Report scheme_summary(const MsmScheme& s) {
  Report r;
  r["index"] = s.index().get_str();
  r["cosets"] = s.cosets().size();
  r["m"] = s.m();
  r["lower_dim"] = s.cosets().size() - s.m();
  return r;
}

// ---- info ---------------------------------------------------------------

struct InfoArgs {
  Common c;
  bool scheme = false;
  std::string offset;
};

int cmd_info(const InfoArgs& a) {
  Loaded l = load(a.c);
  SuperspaceData data = SuperspaceData::build(l.group, l.cluster);
  Report r;
  r["k"] = data.k();
  r["kappa_sq"] = data.kappa_sq().str();
  r["kappa_sq_conj"] = data.kappa_sq_conj().str();
  r["trace_pi"] = data.pi().entries.trace().str();
  r["trace_pi_prime"] = data.pi_prime().entries.trace().str();
  r["trace_pi_second"] = data.pi_second().entries.trace().str();

  Character chi = data.rep().character(l.group);
  Report ch = Report::array();
  for (const auto& x : chi) ch.push_back(x.str());
  r["character"] = ch;
  auto mult = decompose_character(chi);
  r["multiplicities"] = Report(std::vector<long>(mult.begin(), mult.end()));

  std::size_t passed = 0;
  bool rational = false, equi = true;
  auto checks = data.run_checks(l.group);
  for (const auto& c : checks) {
    passed += c.ok;
    if (c.name == "pi_plus_pi_prime_rational") rational = c.ok;
    if (c.name.rfind("equivariance", 0) == 0) equi = equi && c.ok;
  }
  r["pi_second_rational"] = rational;
  r["equivariance"] = equi ? "commutes with all " + std::to_string(l.group.order()) + " elements" : "FAILED";
  r["identities"] = std::to_string(passed) + "/" + std::to_string(checks.size());

  if (data.k() <= 16 || a.scheme) {
    MsmScheme s = MsmScheme::build(data, load_offset(a.offset, data.k()));
    merge_into(r, scheme_summary(s));
  } else {
    r["index"] = scheme_index(sublattice_basis(data), data).get_str();
    r["cosets"] = "skipped (k > 16, pass --scheme)";
  }
  emit(r, a.c.json);
  return exit_ok;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  Common c;
  bool goldens = false;
};

// Frozen scheme values for this cluster size, when the goldens file has them.
void golden_checks(const SuperspaceData& data, std::vector<CheckResult>& out) {
  std::ifstream in(goldens_path());
  if (!in) throw ConfigError("cannot open goldens file " + goldens_path());
  nlohmann::json g;
  try {
    g = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("goldens file is not valid JSON: ") + e.what());
  }
  const std::string key = "k" + std::to_string(data.k());
  if (!g.contains(key) || !g[key].contains("scheme")) return;
  const auto& want = g[key]["scheme"];
  MsmScheme s = MsmScheme::build(data);
  Report got = scheme_summary(s);
  for (const char* f : {"index", "cosets", "m", "lower_dim"}) {
    if (!want.contains(f)) continue;
    std::string w = scalar_text(want[f]), h = scalar_text(got[f]);
    out.push_back({std::string("golden_") + f, w == h, "expected " + w + ", got " + h});
  }
}

int cmd_verify(const VerifyArgs& a) {
  Loaded l = load(a.c);
  auto results = verify_suite(l.group, l.cluster);
  if (a.goldens && !first_failure(results)) golden_checks(SuperspaceData::build(l.group, l.cluster), results);

  const CheckResult* bad = first_failure(results);
  if (a.c.json) {
    Report r;
    r["k"] = l.cluster.k();
    Report arr = Report::array();
    for (const auto& c : results) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    r["checks"] = arr;
    r["passed"] = bad == nullptr;
    if (bad) r["first_failure"] = bad->name;
    emit(r, true);
  } else {
    for (const auto& c : results)
      std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << (c.ok || c.detail.empty() ? "" : ": " + c.detail) << '\n';
    if (bad) std::cout << "first failure: " << bad->name << (bad->detail.empty() ? "" : " (" + bad->detail + ")") << '\n';
    else std::cout << "all " << results.size() << " checks passed\n";
  }
  return bad ? exit_check : exit_ok;
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
  Common c;
  std::string method = "strip";
  std::string radius_sq;
  std::string mode;
  std::string offset;
  std::string out;
  std::size_t threads = 1;
  bool full_dim_only = false;
  std::string seed;
};

StripMode parse_mode(const std::string& m) {
  if (m.empty() || m == "exhaustive") return StripMode::exhaustive;
  if (m == "bfs") return StripMode::bfs;
  throw ConfigError("--mode must be bfs or exhaustive");
}

LatticePoint parse_seed(const std::string& text, std::size_t k) {
  LatticePoint n;
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      n.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("--seed: bad integer '" + tok + "'");
    }
  }
  if (n.size() != k) throw ConfigError("--seed needs k = " + std::to_string(k) + " integers");
  return n;
}

Report pattern_report(const std::string& method, const Pattern& p, std::size_t full) {
  Report r;
  r["method"] = method;
  r["k"] = p.k;
  r["radius_sq"] = p.radius_sq.str();
  r["points"] = p.size();
  r["accepted"] = p.accepted;
  r["merged"] = p.merged;
  r["collisions"] = p.collisions;
  r["fully_occupied"] = full;
  r["sha256"] = sha256_hex(pattern_csv_body(p));
  return r;
}

std::size_t count_full(const Pattern& p) {
  std::size_t n = 0;
  for (const auto& [x, pt] : p.points) n += pt.occupied_count() == 2 * p.k;
  return n;
}

int cmd_gen(const GenArgs& a) {
  if (a.method != "strip" && a.method != "msm") throw ConfigError("--method must be strip or msm");
  if (a.method == "msm" && !a.mode.empty()) throw ConfigError("--mode applies to --method strip only");
  if (a.method == "strip" && a.full_dim_only) throw ConfigError("--full-dim-only applies to --method msm only");
  if (a.method == "msm" && !a.seed.empty()) throw ConfigError("--seed applies to --method strip only");
  if (a.threads == 0) throw ConfigError("--threads must be positive");
  Loaded l = load(a.c);
  GoldenNumber r2 = parse_radius(a.radius_sq);
  SuperspaceData data = SuperspaceData::build(l.group, l.cluster);
  Offset gamma = load_offset(a.offset, data.k());

  Pattern p;
  Report extra;
  if (a.method == "strip") {
    StripOptions opt;
    opt.mode = parse_mode(a.mode);
    opt.threads = a.threads;
    if (!a.seed.empty()) opt.seed = parse_seed(a.seed, data.k());
    p = generate_strip(data, r2, gamma, opt);
    extra["mode"] = opt.mode == StripMode::bfs ? "bfs" : "exhaustive";
  } else {
    MsmScheme s = MsmScheme::build(data, gamma, a.threads);
    MsmOptions opt;
    opt.threads = a.threads;
    opt.full_dim_only = a.full_dim_only;
    p = generate_msm(s, r2, opt);
    extra = scheme_summary(s);
    extra["full_dim_only"] = a.full_dim_only;
  }
  std::string csv = pattern_csv(p);
  Report r = pattern_report(a.method, p, count_full(p));
  merge_into(r, extra);
  if (!a.out.empty()) {
    write_file_atomic(a.out, csv);
    r["out"] = a.out;
  }
  emit(r, a.c.json);
  if (p.collisions != 0) {
    std::cerr << "injectivity failure: " << p.collisions << " physical-key collisions\n";
    return exit_check;
  }
  return exit_ok;
}

// ---- compare ------------------------------------------------------------

struct CompareArgs {
  Common c;
  std::string radius_sq;
  std::string mode;
  std::string offset;
  std::size_t threads = 1;
  bool full_dim_only = false;
  std::string perturb;  // test hook: added to gamma_1 on the strip side only
};

int cmd_compare(const CompareArgs& a) {
  if (a.threads == 0) throw ConfigError("--threads must be positive");
  Loaded l = load(a.c);
  GoldenNumber r2 = parse_radius(a.radius_sq);
  SuperspaceData data = SuperspaceData::build(l.group, l.cluster);
  Offset gamma = load_offset(a.offset, data.k());

  Offset strip_gamma = gamma;
  if (!a.perturb.empty()) {
    if (strip_gamma.empty()) strip_gamma.assign(data.k(), GoldenNumber(0));
    strip_gamma[0] += parse_golden(a.perturb, "--perturb-strip-offset");
  }
  StripOptions so;
  so.mode = parse_mode(a.mode);
  so.threads = a.threads;
  so.with_occupancy = false;
  Pattern ps = generate_strip(data, r2, strip_gamma, so);

  MsmScheme s = MsmScheme::build(data, gamma, a.threads);
  MsmOptions mo;
  mo.threads = a.threads;
  mo.full_dim_only = a.full_dim_only;
  mo.with_occupancy = false;
  Pattern pm = generate_msm(s, r2, mo);

  auto only_strip = difference(ps, pm);
  auto only_msm = difference(pm, ps);
  const bool equal = only_strip.empty() && only_msm.empty();

  Report r;
  r["k"] = data.k();
  r["radius_sq"] = r2.str();
  r["strip_points"] = ps.size();
  r["msm_points"] = pm.size();
  r["strip_collisions"] = ps.collisions;
  r["msm_collisions"] = pm.collisions;
  merge_into(r, scheme_summary(s));
  r["only_strip"] = only_strip.size();
  r["only_msm"] = only_msm.size();
  r["equal"] = equal;
  Report diff = Report::array();
  auto add = [&](const Pattern& p, const std::vector<PhysVector>& xs, const char* src) {
    for (const auto& x : xs) {
      if (diff.size() >= 20) return;
      const auto& pt = p.points.at(x);
      diff.push_back({{"source", src}, {"phys", x.str()}, {"n", lattice_json(pt.source)},
                      {"label", join(data.second_projection(pt.source))}});
    }
  };
  add(ps, only_strip, "strip");
  add(pm, only_msm, "msm");
  if (!diff.empty()) r["difference"] = diff;
  emit(r, a.c.json);
  return equal && ps.collisions == 0 && pm.collisions == 0 ? exit_ok : exit_check;
}

// ---- surfaces -----------------------------------------------------------

struct SurfacesArgs {
  Common c;
  std::string offset;
  std::string coset;
  std::string out;
  bool list = false;
  std::size_t max_k = 16;
};

std::size_t pick_coset(const MsmScheme& s, const std::string& text) {
  if (text.find(',') == std::string::npos && text.find('/') == std::string::npos) {
    try {
      std::size_t used = 0;
      unsigned long i = std::stoul(text, &used);
      if (used == text.size()) {
        if (i >= s.cosets().size())
          throw ConfigError("coset index " + text + " out of range (" + std::to_string(s.cosets().size()) + " cosets)");
        return i;
      }
    } catch (const std::logic_error&) {
    }
  }
  std::vector<Rational> label;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    auto q = Rational::parse(tok);
    if (!q) throw ConfigError("--coset: cannot parse '" + tok + "'");
    label.push_back(*q);
  }
  auto i = s.find(label);
  if (!i) throw ConfigError("--coset: no coset with label " + text);
  return *i;
}

int cmd_surfaces(const SurfacesArgs& a) {
  Loaded l = load(a.c);
  SuperspaceData data = SuperspaceData::build(l.group, l.cluster);
  MsmScheme s = MsmScheme::build(data, load_offset(a.offset, data.k()));
  Report r;
  r["k"] = data.k();
  merge_into(r, scheme_summary(s));
  if (a.list) {
    Report arr = Report::array();
    for (std::size_t i = 0; i < s.cosets().size(); ++i) {
      const auto& c = s.cosets()[i];
      arr.push_back({{"index", i}, {"label", c.label()}, {"status", to_string(c.surface_status)}});
    }
    r["list"] = arr;
  }
  if (!a.coset.empty()) {
    std::size_t i = pick_coset(s, a.coset);
    const auto& c = s.cosets()[i];
    Hull h = surface_vertices(s, c, a.max_k);
    Report cr;
    cr["index"] = i;
    cr["label"] = c.label();
    cr["status"] = to_string(c.surface_status);
    cr["representative"] = lattice_json(c.z);
    cr["hull_dim"] = h.dim;
    cr["vertices"] = h.vertices.size();
    cr["facets"] = h.facets.size();
    if (auto b = surface_bounds(s, c)) {
      cr["bbox_min"] = b->first.str();
      cr["bbox_max"] = b->second.str();
    }
    if (!a.out.empty()) {
      write_file_atomic(a.out, hull_obj(h, "atomic surface, coset " + std::to_string(i) + " label " + c.label()));
      cr["out"] = a.out;
    }
    r["coset"] = cr;
  } else if (!a.out.empty()) {
    throw ConfigError("--out needs --coset");
  }
  emit(r, a.c.json);
  return exit_ok;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--cluster", c.cluster_path, "cluster config (JSON)")->required();
  sub->add_flag("--json", c.json, "machine-readable report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Icosahedral strip projection and multi-component model sets"};
  app.require_subcommand(1);

  InfoArgs info;
  auto* s_info = app.add_subcommand("info", "cluster summary: scale, traces, character, scheme counts");
  add_common(s_info, info.c);
  s_info->add_flag("--scheme", info.scheme, "enumerate cosets even for k > 16");
  s_info->add_option("--offset", info.offset, "window offset file");

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "run the exact identity suite");
  add_common(s_verify, verify.c);
  s_verify->add_flag("--goldens", verify.goldens, "also compare scheme counts with the goldens file");

  GenArgs gen;
  auto* s_gen = app.add_subcommand("gen", "generate a pattern patch as CSV");
  add_common(s_gen, gen.c);
  s_gen->add_option("--method", gen.method, "strip or msm");
  s_gen->add_option("--radius-sq", gen.radius_sq, "squared radius (GoldenNumber)")->required();
  s_gen->add_option("--mode", gen.mode, "bfs or exhaustive (strip)");
  s_gen->add_option("--offset", gen.offset, "window offset file");
  s_gen->add_option("--out", gen.out, "CSV output path");
  s_gen->add_option("--threads", gen.threads, "worker threads");
  s_gen->add_flag("--full-dim-only", gen.full_dim_only, "skip cosets with lower-dimensional surfaces (msm)");
  s_gen->add_option("--seed", gen.seed, "BFS start lattice point, comma separated (strip bfs)");

  CompareArgs cmp;
  auto* s_cmp = app.add_subcommand("compare", "strip vs msm set equality");
  add_common(s_cmp, cmp.c);
  s_cmp->add_option("--radius-sq", cmp.radius_sq, "squared radius (GoldenNumber)")->required();
  s_cmp->add_option("--mode", cmp.mode, "strip mode, bfs or exhaustive");
  s_cmp->add_option("--offset", cmp.offset, "window offset file");
  s_cmp->add_option("--threads", cmp.threads, "worker threads");
  s_cmp->add_flag("--full-dim-only", cmp.full_dim_only, "msm side skips lower-dimensional surfaces");
  s_cmp->add_option("--perturb-strip-offset", cmp.perturb)->group("");

  SurfacesArgs surf;
  auto* s_surf = app.add_subcommand("surfaces", "atomic surfaces of the coset scheme");
  add_common(s_surf, surf.c);
  s_surf->add_option("--offset", surf.offset, "window offset file");
  s_surf->add_option("--coset", surf.coset, "coset index or comma-separated label");
  s_surf->add_option("--out", surf.out, "OBJ output path");
  s_surf->add_flag("--list", surf.list, "list every coset");
  s_surf->add_option("--max-k", surf.max_k, "refuse hull enumeration above this k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*s_info) return cmd_info(info);
    if (*s_verify) return cmd_verify(verify);
    if (*s_gen) return cmd_gen(gen);
    if (*s_cmp) return cmd_compare(cmp);
    if (*s_surf) return cmd_surfaces(surf);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return exit_check;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}
