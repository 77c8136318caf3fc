#include "mcms/msm.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mcms/errors.hpp"
#include "mcms/parallel.hpp"
#include "mcms/strip.hpp"

namespace mcms {

std::string to_string(SurfaceStatus s) {
  switch (s) {
    case SurfaceStatus::empty: return "empty";
    case SurfaceStatus::lower_dim: return "lower_dim";
    case SurfaceStatus::full_dim: return "full_dim";
  }
  return "?";
}

std::vector<long> SixLattice::column(std::size_t j) const {
  std::vector<long> v(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i][j].fits_slong_p()) throw InternalError("lattice basis entry exceeds 64 bits");
    v[i] = basis[i][j].get_si();
  }
  return v;
}

std::string CosetRep::label() const {
  std::string s;
  for (std::size_t i = 0; i < second_proj.size(); ++i) {
    if (i) s += ',';
    s += second_proj[i].str();
  }
  return s;
}

namespace {

// D * a with D the lcm of all denominators.
IntMatrix clear_denominators(const std::vector<std::vector<Rational>>& a, mpz_class* scale = nullptr) {
  mpz_class d = 1;
  for (const auto& row : a)
    for (const auto& x : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.denominator().get_mpz_t());
  IntMatrix m = int_zero(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j].numerator() * (d / a[i][j].denominator());
  if (scale) *scale = d;
  return m;
}

std::vector<long> to_long(const std::vector<mpz_class>& v) {
  std::vector<long> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].fits_slong_p()) throw InternalError("lattice coordinate exceeds 64 bits");
    out[i] = v[i].get_si();
  }
  return out;
}

GoldenNumber gn(const mpz_class& x) { return GoldenNumber(Rational(x, mpz_class(1))); }

std::vector<GoldenNumber> shifted(const LatticePoint& z, const Offset& g) {
  std::vector<GoldenNumber> y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = GoldenNumber(z[i]) + offset_at(g, i);
  return y;
}

}  // namespace

SixLattice sublattice_basis(const SuperspaceData& data) {
  const std::size_t k = data.k();
  IntMatrix m = clear_denominators(data.pi_second_rational());
  IntMatrix ker = integer_kernel(m);
  const std::size_t r = ker.empty() ? 0 : ker[0].size();
  if (r != 6) throw CheckFailure("kernel of pi'' has rank " + std::to_string(r) + ", expected 6");
  SixLattice lat;
  lat.basis = lll_reduce(ker);
  const auto& ps = data.pi_second_rational();
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      Rational acc;
      for (std::size_t l = 0; l < k; ++l)
        if (lat.basis[l][j] != 0) acc += ps[i][l] * Rational(lat.basis[l][j], mpz_class(1));
      if (!acc.is_zero()) throw InternalError("reduced basis vector leaves the kernel of pi''");
    }
  lat.gram = GnMatrix(6, 6);
  std::vector<PhysVector> ph(6), cj(6);
  for (std::size_t j = 0; j < 6; ++j) {
    auto b = lat.column(j);
    ph[j] = data.physical_embed(b);
    cj[j] = data.conjugate_embed(b);
  }
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) lat.gram(a, b) = dot(ph[a], ph[b]) + dot(cj[a], cj[b]);
  return lat;
}

mpz_class scheme_index(const SixLattice& lattice, const SuperspaceData& data) {
  const std::size_t k = data.k();
  std::vector<std::vector<Rational>> p(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      GoldenNumber s = data.pi().entries(i, j) + data.pi_prime().entries(i, j);
      if (!s.is_rational()) throw CheckFailure("pi + pi' is not rational");
      p[i][j] = s.rat();
    }
  IntMatrix a = int_hcat(lattice.basis, integer_kernel(clear_denominators(p)));
  auto inv = smith_invariants(a);
  if (inv.size() != k) throw CheckFailure("sublattice and kernel of pi + pi' do not span");
  mpz_class idx = 1;
  for (const auto& d : inv) idx *= d;
  return idx;
}

namespace {

long det_small(std::vector<std::array<long, 6>> a) {
  // Bareiss on a 6 x 6 integer matrix
  __int128 m[6][6];
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m[i][j] = a[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (int c = 0; c < 5; ++c) {
    int p = c;
    while (p < 6 && m[p][c] == 0) ++p;
    if (p == 6) return 0;
    if (p != c) {
      for (int j = 0; j < 6; ++j) std::swap(m[p][j], m[c][j]);
      sign = -sign;
    }
    for (int i = c + 1; i < 6; ++i)
      for (int j = c + 1; j < 6; ++j) m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev;
    prev = m[c][c];
  }
  __int128 d = sign * m[5][5];
  if (d > LONG_MAX || d < LONG_MIN) throw InternalError("minor exceeds 64 bits");
  return static_cast<long>(d);
}

bool next_subset(std::vector<std::size_t>& sel, std::size_t n) {
  const std::size_t r = sel.size();
  std::size_t i = r;
  while (i > 0 && sel[i - 1] == n - r + i - 1) --i;
  if (i == 0) return false;
  ++sel[i - 1];
  for (std::size_t j = i; j < r; ++j) sel[j] = sel[j - 1] + 1;
  return true;
}

long floor_long(const GoldenNumber& x) {
  mpz_class f = x.floor();
  if (!f.fits_slong_p()) throw InternalError("bound exceeds 64 bits");
  return f.get_si();
}
long ceil_long(const GoldenNumber& x) {
  mpz_class f = x.ceil();
  if (!f.fits_slong_p()) throw InternalError("bound exceeds 64 bits");
  return f.get_si();
}

}  // namespace

CircuitWindow::CircuitWindow(const IntMatrix& basis, const Offset& offset) : k_(basis.size()) {
  const std::size_t k = k_;
  std::vector<std::array<long, 6>> b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      if (!basis[i][j].fits_slong_p()) throw InternalError("lattice basis entry exceeds 64 bits");
      b[i][j] = basis[i][j].get_si();
    }
  if (k < 7) return;
  std::set<std::vector<std::pair<std::size_t, long>>> seen;
  std::vector<std::size_t> sel(7);
  std::iota(sel.begin(), sel.end(), 0);
  do {
    // mu_r = (-1)^r det(B_{R \ r}) is orthogonal to the columns of B_R
    std::vector<std::pair<std::size_t, long>> mu;
    long g = 0;
    for (std::size_t r = 0; r < 7; ++r) {
      std::vector<std::array<long, 6>> sub;
      for (std::size_t q = 0; q < 7; ++q)
        if (q != r) sub.push_back(b[sel[q]]);
      long d = det_small(std::move(sub));
      if (r % 2) d = -d;
      if (d != 0) {
        mu.emplace_back(sel[r], d);
        g = std::gcd(g, d);
      }
    }
    if (mu.empty()) continue;
    if (mu[0].second < 0) g = -g;
    for (auto& t : mu) t.second /= g;
    seen.insert(std::move(mu));
  } while (next_subset(sel, k));

  for (const auto& mu : seen) {
    for (std::size_t j = 0; j < 6; ++j) {
      long s = 0;
      for (const auto& [i, v] : mu) s += v * b[i][j];
      if (s != 0) throw InternalError("circuit not orthogonal to the sublattice");
    }
    // mu . (n + gamma) in [sum of negative parts, sum of positive parts]
    GoldenNumber lo, hi;
    for (const auto& [i, v] : mu) {
      (v < 0 ? lo : hi) += GoldenNumber(v);
      GoldenNumber g = offset_at(offset, i);
      if (!g.is_zero()) {
        lo -= g * Rational(v);
        hi -= g * Rational(v);
      }
    }
    Circuit c;
    c.terms = mu;
    c.lo = ceil_long(lo);
    c.hi = floor_long(hi);
    c.lo_open = floor_long(lo) + 1;
    c.hi_open = ceil_long(hi) - 1;
    c.lo_tight_possible = lo.is_rational() && lo.rat().is_integer();
    c.hi_tight_possible = hi.is_rational() && hi.rat().is_integer();
    circuits_.push_back(std::move(c));
  }
}

long CircuitWindow::dot(const Circuit& c, std::span<const long> n) const {
  long s = 0;
  for (const auto& [i, v] : c.terms) s += v * n[i];
  return s;
}

bool CircuitWindow::contains(std::span<const long> n) const {
  for (const auto& c : circuits_) {
    long d = dot(c, n);
    if (d < c.lo || d > c.hi) return false;
  }
  return true;
}

bool CircuitWindow::interior(std::span<const long> n) const {
  for (const auto& c : circuits_) {
    long d = dot(c, n);
    if (d < c.lo_open || d > c.hi_open) return false;
  }
  return true;
}

std::vector<signed char> CircuitWindow::pinned(std::span<const long> n) const {
  if (!contains(n)) return {};
  std::vector<signed char> out(k_, -1);
  for (const auto& c : circuits_) {
    long d = dot(c, n);
    // tight at the lower end: y_i = 0 where mu_i > 0, 1 where mu_i < 0
    bool low = c.lo_tight_possible && d == c.lo;
    bool high = c.hi_tight_possible && d == c.hi;
    if (!low && !high) continue;
    for (const auto& [i, v] : c.terms) {
      signed char y = (v > 0) == high ? 1 : 0;
      if (out[i] >= 0 && out[i] != y) throw InternalError("inconsistent pinned window coordinate");
      out[i] = y;
    }
  }
  return out;
}

namespace {

// integer D pi'' with D clearing all denominators; D pi'' n is an exact label key
std::vector<std::vector<long>> label_matrix(const SuperspaceData& data) {
  IntMatrix m = clear_denominators(data.pi_second_rational());
  std::vector<std::vector<long>> out(m.size(), std::vector<long>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!m[i][j].fits_slong_p()) throw InternalError("projector entry exceeds 64 bits");
      out[i][j] = m[i][j].get_si();
    }
  return out;
}

SurfaceStatus classify(const std::vector<signed char>& pinned, const IntMatrix& b, const GnMatrix& conj_b) {
  std::vector<std::size_t> fixed;
  for (std::size_t i = 0; i < pinned.size(); ++i)
    if (pinned[i] >= 0) fixed.push_back(i);
  if (fixed.empty()) return SurfaceStatus::full_dim;
  GnMatrix a(fixed.size(), 6);
  for (std::size_t r = 0; r < fixed.size(); ++r)
    for (std::size_t j = 0; j < 6; ++j) a(r, j) = gn(b[fixed[r]][j]);
  GnMatrix dirs = null_space(a);
  if (dirs.cols() < 3) return SurfaceStatus::lower_dim;
  return rank(conj_b * dirs) == 3 ? SurfaceStatus::full_dim : SurfaceStatus::lower_dim;
}

}  // namespace

namespace {

std::vector<LatticePoint> lp_coset_points(const MsmScheme& s) {
  const auto& data = s.superspace();
  const std::size_t k = data.k();
  const IntMatrix& b = s.lattice().basis;
  ColumnHnf hnf = column_hnf(clear_denominators(data.pi_second_rational()));
  if (hnf.rank + 6 != k) throw CheckFailure("pi'' image has unexpected rank");
  const std::size_t r = hnf.rank;
  IntMatrix ul = int_columns(hnf.u, 0, r);

  // 0 <= (U_L c)_i + (B t)_i + gamma_i <= 1 in (c, t)
  LinearSystem sys(r + 6);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<GoldenNumber> row(r + 6);
    for (std::size_t j = 0; j < r; ++j) row[j] = gn(ul[i][j]);
    for (std::size_t j = 0; j < 6; ++j) row[r + j] = gn(b[i][j]);
    std::vector<GoldenNumber> neg(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    GoldenNumber g = offset_at(s.offset(), i);
    sys.add(std::move(row), GoldenNumber(1) - g);
    sys.add(std::move(neg), g);
  }
  std::vector<LatticePoint> out;
  enumerate_integer_prefix(sys, r, [&](std::span<const long> c) {
    std::vector<mpz_class> v(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) v[i] += ul[i][j] * c[j];
    out.push_back(to_long(v));
  });
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> coset_labels_by_lp(const MsmScheme& s) {
  std::vector<std::vector<Rational>> out;
  for (const auto& n : lp_coset_points(s)) out.push_back(s.superspace().second_projection(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CosetRep> coset_reps_impl(MsmScheme& s, std::size_t threads) {
  const std::size_t k = s.data_.k();
  const IntMatrix& b = s.lattice_.basis;
  CircuitWindow window(b, s.offset_);
  auto lm = label_matrix(s.data_);
  auto key_of = [&](const LatticePoint& n) {
    std::vector<long> key(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (n[j] != 0) key[i] += lm[i][j] * n[j];
    return key;
  };

  // Breadth-first search over cosets along +-eps_i. For a generic offset the
  // cosets meeting the window are the vertices of a connected tiling; a
  // singular offset gives a union of limits of such tilings, which all share
  // any coset meeting the open cube. Without such a coset the search falls
  // back to the exhaustive one.
  LatticePoint seed(k);
  for (std::size_t i = 0; i < k; ++i) seed[i] = ceil_long(-offset_at(s.offset_, i));
  if (!window.contains(seed)) throw InternalError("window seed rejected");
  std::set<std::vector<long>> tested{key_of(seed)};
  std::vector<LatticePoint> found{seed};
  bool any_interior = false;
  for (std::size_t head = 0; head < found.size(); ++head) {
    LatticePoint n = found[head];
    any_interior = any_interior || window.interior(n);
    for (int sgn : {1, -1})
      for (std::size_t i = 0; i < k; ++i) {
        n[i] += sgn;
        if (tested.insert(key_of(n)).second && window.contains(n)) found.push_back(n);
        n[i] -= sgn;
      }
  }
  if (!any_interior) found = lp_coset_points(s);

  NearestPlane reducer(b);
  std::vector<CosetRep> out(found.size());
  parallel_for(found.size(), threads, [&](std::size_t idx) {
    CosetRep& c = out[idx];
    std::vector<mpz_class> v(found[idx].begin(), found[idx].end());
    c.z = to_long(reducer.reduce(std::move(v)));
    c.second_proj = s.data_.second_projection(c.z);
    c.pinned = window.pinned(c.z);
    if (c.pinned.empty()) throw InternalError("reduced coset representative left the window");
    c.surface_status = classify(c.pinned, b, s.conj_b_);
  });
  std::sort(out.begin(), out.end(),
            [](const CosetRep& a, const CosetRep& b) { return a.second_proj < b.second_proj; });
  return out;
}

MsmScheme MsmScheme::build(const SuperspaceData& data, const Offset& offset, std::size_t threads) {
  validate_offset(offset, data.k());
  MsmScheme s;
  s.data_ = data;
  s.offset_ = offset;
  s.lattice_ = sublattice_basis(data);
  s.index_ = scheme_index(s.lattice_, data);
  const std::size_t k = data.k();

  s.conj_b_ = GnMatrix(3, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    PhysVector c = data.conjugate_embed(s.lattice_.column(j));
    for (int a = 0; a < 3; ++a) s.conj_b_(a, j) = c[a];
  }
  // three pivot columns of conj(B)
  std::vector<std::size_t> piv;
  for (std::size_t j = 0; j < 6 && piv.size() < 3; ++j) {
    GnMatrix t(3, piv.size() + 1);
    for (std::size_t c = 0; c <= piv.size(); ++c)
      for (int a = 0; a < 3; ++a) t(a, c) = s.conj_b_(a, c < piv.size() ? piv[c] : j);
    if (rank(t) == piv.size() + 1) piv.push_back(j);
  }
  if (piv.size() != 3) throw CheckFailure("conjugate image of the sublattice is not 3-dimensional");
  GnMatrix sq(3, 3);
  for (std::size_t c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) sq(a, c) = s.conj_b_(a, piv[c]);
  GnMatrix sq_inv = *inverse(sq);
  GnMatrix p(6, 3);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < 3; ++a) p(piv[c], a) = sq_inv(c, a);
  GnMatrix bm(k, 6);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 6; ++j) bm(i, j) = gn(s.lattice_.basis[i][j]);
  s.membership_.particular = bm * p;
  s.membership_.free = bm * null_space(s.conj_b_);

  s.cosets_ = coset_reps_impl(s, threads);
  for (std::size_t i = 0; i < s.cosets_.size(); ++i)
    if (!s.by_label_.emplace(s.cosets_[i].second_proj, i).second)
      throw InternalError("two coset representatives share a label");
  return s;
}

std::size_t MsmScheme::m() const {
  return static_cast<std::size_t>(std::count_if(cosets_.begin(), cosets_.end(), [](const CosetRep& c) {
    return c.surface_status == SurfaceStatus::full_dim;
  }));
}

std::optional<std::size_t> MsmScheme::find(const std::vector<Rational>& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MsmScheme::route(std::span<const long> n) const {
  return find(data_.second_projection(n));
}

LinearSystem MsmScheme::slice_system(const LatticePoint& z) const {
  const std::size_t k = data_.k();
  LinearSystem sys(6);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<GoldenNumber> row(6), neg(6);
    for (std::size_t j = 0; j < 6; ++j) {
      row[j] = gn(lattice_.basis[i][j]);
      neg[j] = -row[j];
    }
    GoldenNumber base = GoldenNumber(z[i]) + offset_at(offset_, i);
    sys.add(std::move(row), GoldenNumber(1) - base);
    sys.add(std::move(neg), base);
  }
  return sys;
}

const std::vector<CosetRep>& coset_reps(const MsmScheme& scheme) { return scheme.cosets(); }

bool surface_contains(const MsmScheme& scheme, const CosetRep& coset, const PhysVector& q) {
  const auto& data = scheme.superspace();
  const std::size_t k = data.k();
  auto base = shifted(coset.z, scheme.offset());
  PhysVector r = q - data.conjugate_embed(base);
  const auto& mp = scheme.membership();
  // y = z + gamma + B P r + B N s; s eliminated last-to-first
  LinearSystem sys(3);
  for (std::size_t i = 0; i < k; ++i) {
    GoldenNumber y0 = base[i];
    for (int a = 0; a < 3; ++a) y0 += mp.particular(i, a) * r[a];
    std::vector<GoldenNumber> row(3), neg(3);
    for (int a = 0; a < 3; ++a) {
      row[a] = mp.free(i, 2 - a);
      neg[a] = -row[a];
    }
    sys.add(std::move(row), GoldenNumber(1) - y0);
    sys.add(std::move(neg), y0);
  }
  return feasible(sys, false).feasible;
}

bool surface_membership(const MsmScheme& scheme, const CosetRep& coset, std::span<const long> n) {
  const auto& data = scheme.superspace();
  if (data.second_projection(n) != coset.second_proj)
    throw std::invalid_argument("lattice point is not in the fibre of coset " + coset.label());
  PhysVector q = data.conjugate_embed(n);
  for (std::size_t i = 0; i < data.k(); ++i) {
    GoldenNumber g = offset_at(scheme.offset(), i);
    if (!g.is_zero()) q += g * data.conj()[i];
  }
  return surface_contains(scheme, coset, q);
}

std::vector<bool> msm_occupancy(const MsmScheme& scheme, std::span<const long> n) {
  const std::size_t k = scheme.superspace().k();
  std::vector<bool> mask(2 * k);
  LatticePoint y(n.begin(), n.end());
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < k; ++i) {
      y[i] += s == 0 ? 1 : -1;
      auto c = scheme.route(y);
      mask[s * k + i] = c && surface_membership(scheme, scheme.cosets()[*c], y);
      y[i] = n[i];
    }
  return mask;
}

namespace {

// [lo, hi] of conj(B t) over the slice, per coordinate.
std::optional<std::pair<PhysVector, PhysVector>> conj_range(const MsmScheme& scheme, const CosetRep& coset) {
  LinearSystem slice = scheme.slice_system(coset.z);
  PhysVector lo, hi;
  for (int a = 0; a < 3; ++a) {
    std::vector<GoldenNumber> obj(6), neg(6);
    for (std::size_t j = 0; j < 6; ++j) {
      obj[j] = scheme.conj_basis()(a, j);
      neg[j] = -obj[j];
    }
    LpResult up = lp_max(slice, obj);
    if (up.status != LpStatus::optimal) {
      if (up.status == LpStatus::infeasible || !feasible(slice, false).feasible) return std::nullopt;
      throw InternalError("unbounded window slice");
    }
    LpResult dn = lp_max(slice, neg);
    if (dn.status != LpStatus::optimal) throw InternalError("window slice LP failed");
    hi[a] = up.value;
    lo[a] = -dn.value;
  }
  return std::make_pair(lo, hi);
}

}  // namespace

std::optional<std::pair<PhysVector, PhysVector>> surface_bounds(const MsmScheme& scheme, const CosetRep& coset) {
  auto r = conj_range(scheme, coset);
  if (!r) return r;
  PhysVector shift = scheme.superspace().conjugate_embed(shifted(coset.z, scheme.offset()));
  return std::make_pair(r->first + shift, r->second + shift);
}

namespace {

// Integer points m with G m inside an axis box (center +- width). The fibre
// range of each coordinate given a prefix comes from the facet normals of the
// projected parallelotope; the normals depend on G alone.
class BoxLattice {
 public:
  explicit BoxLattice(const GnMatrix& g) : ginv_(*inverse(g)) {
    for (std::size_t j = 1; j <= 6; ++j) {
      std::vector<std::size_t> q(j - 1);
      std::iota(q.begin(), q.end(), 0);
      do {
        GnMatrix a(j - 1, j);
        for (std::size_t r = 0; r + 1 < j; ++r)
          for (std::size_t c = 0; c < j; ++c) a(r, c) = ginv_(c, q[r]);
        GnMatrix ns = j == 1 ? GnMatrix::identity(1) : null_space(a);
        if (ns.cols() != 1 || ns(j - 1, 0).is_zero()) continue;
        Normal nm;
        for (std::size_t c = 0; c < j; ++c) nm.u.push_back(ns(c, 0));
        nm.inv_last = *nm.u.back().inverse();
        for (std::size_t l = 0; l < 6; ++l) {
          GoldenNumber s;
          for (std::size_t c = 0; c < j; ++c) s += nm.u[c] * ginv_(c, l);
          nm.absdot.push_back(s.abs());
        }
        levels_[j - 1].push_back(std::move(nm));
      } while (j > 1 && next_subset(q, 6));
    }
  }

  void enumerate(const std::vector<GoldenNumber>& center, const std::vector<GoldenNumber>& width,
                 const std::function<void(std::span<const long>)>& visit) const {
    std::vector<GoldenNumber> m0(6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t l = 0; l < 6; ++l)
        if (!center[l].is_zero()) m0[i] += ginv_(i, l) * center[l];
    std::array<std::vector<GoldenNumber>, 6> h;
    for (std::size_t j = 0; j < 6; ++j)
      for (const auto& nm : levels_[j]) {
        GoldenNumber s;
        for (std::size_t l = 0; l < 6; ++l)
          if (!width[l].is_zero()) s += width[l] * nm.absdot[l];
        h[j].push_back(s);
      }
    std::vector<long> x(6);
    std::vector<GoldenNumber> dx(6);  // x_i - m0_i
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == 6) {
        visit(x);
        return;
      }
      std::optional<GoldenNumber> lo, hi;
      for (std::size_t f = 0; f < levels_[j].size(); ++f) {
        const Normal& nm = levels_[j][f];
        GoldenNumber s;
        for (std::size_t i = 0; i < j; ++i)
          if (!nm.u[i].is_zero()) s += nm.u[i] * dx[i];
        GoldenNumber a = (h[j][f] - s) * nm.inv_last, b = (-h[j][f] - s) * nm.inv_last;
        if (a > b) std::swap(a, b);
        if (!lo || a > *lo) lo = a;
        if (!hi || b < *hi) hi = b;
      }
      long from = ceil_long(m0[j] + *lo), to = floor_long(m0[j] + *hi);
      for (long v = from; v <= to; ++v) {
        x[j] = v;
        dx[j] = GoldenNumber(v) - m0[j];
        rec(j + 1);
      }
    };
    rec(0);
  }

 private:
  struct Normal {
    std::vector<GoldenNumber> u;
    GoldenNumber inv_last;
    std::vector<GoldenNumber> absdot;
  };
  GnMatrix ginv_;
  std::array<std::vector<Normal>, 6> levels_;
};

}  // namespace

Pattern generate_msm(const MsmScheme& scheme, const GoldenNumber& radius_sq, const MsmOptions& options) {
  if (radius_sq.sign() <= 0) throw ConfigError("radius_sq must be positive");
  const auto& data = scheme.superspace();
  const std::size_t k = data.k();
  const GoldenNumber r_up(sqrt_upper(radius_sq));
  const IntMatrix& b = scheme.lattice().basis;

  GnMatrix g(6, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    PhysVector p = data.physical_embed(scheme.lattice().column(j));
    for (int a = 0; a < 3; ++a) {
      g(a, j) = p[a];
      g(3 + a, j) = scheme.conj_basis()(a, j);
    }
  }
  const BoxLattice box(g);
  PhysVector conj_gamma;
  for (std::size_t i = 0; i < k; ++i) {
    GoldenNumber gi = offset_at(scheme.offset(), i);
    if (!gi.is_zero()) conj_gamma += gi * data.conj()[i];
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < scheme.cosets().size(); ++i) {
    auto st = scheme.cosets()[i].surface_status;
    if (st == SurfaceStatus::full_dim || (st == SurfaceStatus::lower_dim && !options.full_dim_only)) todo.push_back(i);
  }

  std::vector<std::vector<LatticePoint>> found(todo.size());
  parallel_for(todo.size(), options.threads, [&](std::size_t t) {
    const CosetRep& c = scheme.cosets()[todo[t]];
    // conj(n) + conj(gamma) lies in the conjugate image of the cube face
    // selected by the pinned coordinates
    PhysVector lo = -conj_gamma, hi = -conj_gamma;
    for (std::size_t i = 0; i < k; ++i)
      for (int a = 0; a < 3; ++a) {
        const GoldenNumber& e = data.conj()[i][a];
        signed char y = c.pinned.empty() ? -1 : c.pinned[i];
        if (y == 1) {
          lo[a] += e;
          hi[a] += e;
        } else if (y < 0) {
          (e.sign() < 0 ? lo[a] : hi[a]) += e;
        }
      }
    PhysVector pz = data.physical_embed(c.z), cz = data.conjugate_embed(c.z);
    std::vector<GoldenNumber> center(6), width(6);
    const GoldenNumber half(Rational(1, 2));
    for (int a = 0; a < 3; ++a) {
      center[a] = -pz[a];
      width[a] = r_up;
      center[3 + a] = (lo[a] + hi[a]) * half - cz[a];
      width[3 + a] = (hi[a] - lo[a]) * half;
    }
    box.enumerate(center, width, [&](std::span<const long> m) {
      LatticePoint n = c.z;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          if (m[j] != 0) n[i] += b[i][j].get_si() * m[j];
      PhysVector p = data.physical_embed(n);
      if (dot(p, p) > radius_sq) return;
      if (surface_membership(scheme, c, n)) found[t].push_back(std::move(n));
    });
  });

  std::vector<LatticePoint> all;
  for (auto& f : found)
    for (auto& n : f) all.push_back(std::move(n));
  std::sort(all.begin(), all.end());

  Pattern pat;
  pat.k = k;
  pat.radius_sq = radius_sq;
  pat.offset = scheme.offset();
  for (auto& n : all) {
    PhysVector p = data.physical_embed(n);
    auto lift = data.lift(n);
    pat.insert(std::move(p), std::move(n), std::move(lift));
  }
  if (options.with_occupancy) {
    std::vector<PatternPoint*> pts;
    for (auto& [_, pp] : pat.points) pts.push_back(&pp);
    parallel_for(pts.size(), options.threads,
                 [&](std::size_t i) { pts[i]->neighbor_mask = msm_occupancy(scheme, pts[i]->source); });
  }
  return pat;
}

Hull surface_vertices(const MsmScheme& scheme, const CosetRep& coset, std::size_t max_k) {
  const auto& data = scheme.superspace();
  const std::size_t k = data.k();
  if (k > max_k)
    throw std::invalid_argument("surface_vertices: k = " + std::to_string(k) + " exceeds the guard " +
                                std::to_string(max_k));
  const IntMatrix& b = scheme.lattice().basis;
  auto base = shifted(coset.z, scheme.offset());

  std::set<std::vector<GoldenNumber>> verts;
  std::vector<std::size_t> sel(6);
  std::iota(sel.begin(), sel.end(), 0);
  std::vector<GoldenNumber> y(k);
  while (true) {
    GnMatrix bs(6, 6);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t j = 0; j < 6; ++j) bs(r, j) = gn(b[sel[r]][j]);
    if (auto inv = inverse(bs)) {
      for (unsigned sides = 0; sides < 64; ++sides) {
        std::vector<GoldenNumber> rhs(6);
        for (std::size_t r = 0; r < 6; ++r) rhs[r] = GoldenNumber((sides >> r) & 1u ? 1 : 0) - base[sel[r]];
        std::vector<GoldenNumber> t(6);
        for (std::size_t a = 0; a < 6; ++a)
          for (std::size_t j = 0; j < 6; ++j)
            if (!rhs[j].is_zero()) t[a] += (*inv)(a, j) * rhs[j];
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          GoldenNumber v = base[i];
          for (std::size_t j = 0; j < 6; ++j)
            if (b[i][j] != 0) v += t[j] * Rational(b[i][j], mpz_class(1));
          ok = v.sign() >= 0 && v <= GoldenNumber(1);
        }
        if (ok) verts.insert(std::move(t));
      }
    }
    // next 6-subset
    std::size_t i = 6;
    while (i > 0 && sel[i - 1] == k - 6 + i - 1) --i;
    if (i == 0) break;
    ++sel[i - 1];
    for (std::size_t j = i; j < 6; ++j) sel[j] = sel[j - 1] + 1;
  }

  PhysVector shift = data.conjugate_embed(base);
  std::vector<PhysVector> pts;
  for (const auto& t : verts) {
    PhysVector q = shift;
    for (int a = 0; a < 3; ++a)
      for (std::size_t j = 0; j < 6; ++j) q[a] += scheme.conj_basis()(a, j) * t[j];
    pts.push_back(q);
  }
  return convex_hull(std::move(pts));
}

std::string hull_obj(const Hull& hull, const std::string& title) {
  std::string out = "# " + title + "\n";
  out += "# dim " + std::to_string(hull.dim) + ", " + std::to_string(hull.vertices.size()) + " vertices, " +
         std::to_string(hull.facets.size()) + " facets\n";
  const std::vector<PhysVector>& vs = hull.dim == 3 ? hull.points : hull.vertices;
  char buf[128];
  for (const auto& v : vs) {
    out += "# exact " + v[0].str() + " " + v[1].str() + " " + v[2].str() + "\n";
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0].approx(), v[1].approx(), v[2].approx());
    out += buf;
  }
  if (hull.dim == 3) {
    for (const auto& t : hull.triangles) out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " +
                                              std::to_string(t[2] + 1) + "\n";
  } else if (hull.dim == 2) {
    // order the polygon by angle around the centroid (display only)
    double c[3] = {0, 0, 0};
    for (const auto& v : vs)
      for (int a = 0; a < 3; ++a) c[a] += v[a].approx() / static_cast<double>(vs.size());
    const PhysVector& n = hull.equations.at(0).normal;
    double nn[3] = {n[0].approx(), n[1].approx(), n[2].approx()};
    double u[3] = {vs[0][0].approx() - c[0], vs[0][1].approx() - c[1], vs[0][2].approx() - c[2]};
    double w[3] = {nn[1] * u[2] - nn[2] * u[1], nn[2] * u[0] - nn[0] * u[2], nn[0] * u[1] - nn[1] * u[0]};
    std::vector<std::pair<double, std::size_t>> ang;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      double d[3];
      for (int a = 0; a < 3; ++a) d[a] = vs[i][a].approx() - c[a];
      ang.emplace_back(std::atan2(d[0] * w[0] + d[1] * w[1] + d[2] * w[2], d[0] * u[0] + d[1] * u[1] + d[2] * u[2]), i);
    }
    std::sort(ang.begin(), ang.end());
    out += "f";
    for (const auto& [_, i] : ang) out += " " + std::to_string(i + 1);
    out += "\n";
  } else if (hull.dim == 1) {
    out += "l 1 2\n";
  }
  return out;
}

}  // namespace mcms
