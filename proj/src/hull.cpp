#include "mcms/hull.hpp"

#include "mcms/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mcms {

PhysVector cross(const PhysVector& a, const PhysVector& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

bool Hull::contains(const PhysVector& q) const {
  if (dim < 0) return false;
  for (const auto& e : equations)
    if (dot(e.normal, q) != e.offset) return false;
  for (const auto& f : facets)
    if ((f.offset - dot(f.normal, q)).sign() < 0) return false;
  return true;
}

namespace {

// Scales an oriented plane so its first nonzero normal entry is +-1.
Plane normalize(Plane p) {
  for (int c = 0; c < 3; ++c)
    if (!p.normal[c].is_zero()) {
      GoldenNumber s = *p.normal[c].abs().inverse();
      p.normal = s * p.normal;
      p.offset = s * p.offset;
      break;
    }
  return p;
}

Plane plane_through(const PhysVector& a, const PhysVector& b, const PhysVector& c) {
  PhysVector n = cross(b - a, c - a);
  return {n, dot(n, a)};
}

void add_unique(std::vector<Plane>& v, const Plane& p) {
  Plane q = normalize(p);
  if (std::find(v.begin(), v.end(), q) == v.end()) v.push_back(q);
}

// Hull of coplanar points with plane normal n (nonzero).
void polygon_hull(const std::vector<PhysVector>& pts, const PhysVector& n, Hull& h) {
  // Order along a fixed in-plane direction, then Andrew's monotone chain with
  // turns measured against n.
  PhysVector u = pts[1] - pts[0];
  for (const auto& p : pts)
    if (!(p - pts[0]).is_zero()) {
      u = p - pts[0];
      break;
    }
  PhysVector v = cross(n, u);
  std::vector<PhysVector> s = pts;
  std::sort(s.begin(), s.end(), [&](const PhysVector& a, const PhysVector& b) {
    auto ca = dot(a, u) <=> dot(b, u);
    if (ca != 0) return ca < 0;
    return dot(a, v) < dot(b, v);
  });
  auto turn = [&](const PhysVector& o, const PhysVector& a, const PhysVector& b) {
    return dot(cross(a - o, b - o), n).sign();
  };
  std::vector<PhysVector> lower, upper;
  for (const auto& p : s) {
    while (lower.size() >= 2 && turn(lower[lower.size() - 2], lower.back(), p) <= 0) lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    while (upper.size() >= 2 && turn(upper[upper.size() - 2], upper.back(), *it) <= 0) upper.pop_back();
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  std::vector<PhysVector> ring = lower;
  ring.insert(ring.end(), upper.begin(), upper.end());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const PhysVector& a = ring[i];
    const PhysVector& b = ring[(i + 1) % ring.size()];
    PhysVector out = cross(b - a, n);  // ring is counterclockwise about n
    add_unique(h.facets, {out, dot(out, a)});
  }
  h.vertices = ring;
}

}  // namespace

Hull convex_hull(std::vector<PhysVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Hull h;
  if (pts.empty()) return h;
  const PhysVector& p0 = pts[0];
  if (pts.size() == 1) {
    h.dim = 0;
    h.vertices = pts;
    for (int c = 0; c < 3; ++c) {
      PhysVector e{};
      e[c] = 1;
      h.equations.push_back({e, p0[c]});
    }
    return h;
  }
  const PhysVector d = pts[1] - p0;
  std::size_t i2 = 2;
  while (i2 < pts.size() && cross(d, pts[i2] - p0).is_zero()) ++i2;
  if (i2 == pts.size()) {
    // Collinear: sorted order is monotone along d.
    h.dim = 1;
    PhysVector a = pts.front(), b = pts.back();
    h.vertices = {a, b};
    PhysVector dir = b - a;
    add_unique(h.facets, {dir, dot(dir, b)});
    add_unique(h.facets, {-dir, -dot(dir, a)});
    for (int c = 0; c < 3; ++c) {
      PhysVector e{};
      e[c] = 1;
      PhysVector nrm = cross(dir, e);
      if (nrm.is_zero()) continue;
      Plane q = normalize({nrm, dot(nrm, a)});
      if (h.equations.size() < 2 &&
          (h.equations.empty() || !cross(h.equations[0].normal, q.normal).is_zero()))
        h.equations.push_back(q);
    }
    return h;
  }
  const PhysVector n = cross(d, pts[i2] - p0);
  std::size_t i3 = 0;
  while (i3 < pts.size() && dot(n, pts[i3] - p0).is_zero()) ++i3;
  if (i3 == pts.size()) {
    h.dim = 2;
    h.equations.push_back(normalize({n, dot(n, p0)}));
    polygon_hull(pts, n, h);
    std::sort(h.vertices.begin(), h.vertices.end());
    return h;
  }

  h.dim = 3;
  struct Face {
    std::size_t a, b, c;
    Plane pl;
    bool alive = true;
  };
  std::vector<Face> faces;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_face;
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    faces.push_back({a, b, c, plane_through(pts[a], pts[b], pts[c])});
    std::size_t f = faces.size() - 1;
    edge_face[{a, b}] = f;
    edge_face[{b, c}] = f;
    edge_face[{c, a}] = f;
  };
  std::size_t t[4] = {0, 1, i2, i3};
  bool flip = dot(n, pts[i3] - p0).sign() > 0;  // apex above (0,1,i2): reverse the base
  if (flip) std::swap(t[1], t[2]);
  add_face(t[0], t[1], t[2]);
  add_face(t[0], t[3], t[1]);
  add_face(t[1], t[3], t[2]);
  add_face(t[2], t[3], t[0]);
  for (const auto& f : faces)
    if ((dot(f.pl.normal, pts[t[3] == f.a || t[3] == f.b || t[3] == f.c ? t[0] : t[3]]) - f.pl.offset).sign() > 0)
      throw InternalError("convex_hull: inconsistent initial orientation");

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (p == t[0] || p == t[1] || p == t[2] || p == t[3]) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && (dot(faces[f].pl.normal, pts[p]) - faces[f].pl.offset).sign() > 0) {
        visible[f] = 1;
        any = true;
      }
    if (!any) continue;
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const Face& fc = faces[f];
      for (auto [a, b] : {std::pair{fc.a, fc.b}, std::pair{fc.b, fc.c}, std::pair{fc.c, fc.a}}) {
        auto it = edge_face.find({b, a});
        if (it == edge_face.end()) throw InternalError("convex_hull: open surface");
        if (!visible[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (std::size_t f = 0; f < visible.size(); ++f)
      if (visible[f]) {
        faces[f].alive = false;
        for (auto e : {std::pair{faces[f].a, faces[f].b}, std::pair{faces[f].b, faces[f].c},
                       std::pair{faces[f].c, faces[f].a}}) {
          auto it = edge_face.find(e);
          if (it != edge_face.end() && it->second == f) edge_face.erase(it);
        }
      }
    for (auto [a, b] : horizon) add_face(a, b, p);
  }

  std::map<std::size_t, std::vector<PhysVector>> incident;
  std::map<std::size_t, std::size_t> remap;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    add_unique(h.facets, f.pl);
    for (std::size_t v : {f.a, f.b, f.c}) {
      incident[v].push_back(f.pl.normal);
      remap.emplace(v, 0);
    }
  }
  std::size_t next = 0;
  for (auto& [v, idx] : remap) {
    idx = next++;
    h.points.push_back(pts[v]);
  }
  for (const auto& f : faces)
    if (f.alive) h.triangles.push_back({remap[f.a], remap[f.b], remap[f.c]});
  for (const auto& [v, normals] : incident) {
    GnMatrix m(normals.size(), 3);
    for (std::size_t r = 0; r < normals.size(); ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = normals[r][c];
    if (rank(m) == 3) h.vertices.push_back(pts[v]);
  }
  std::sort(h.vertices.begin(), h.vertices.end());
  return h;
}

}  // namespace mcms
