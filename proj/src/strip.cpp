#include "mcms/strip.hpp"

#include "mcms/errors.hpp"
#include "mcms/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace mcms {

void validate_offset(const Offset& offset, std::size_t k) {
  if (!offset.empty() && offset.size() != k)
    throw ConfigError("offset has " + std::to_string(offset.size()) + " entries, expected " + std::to_string(k));
}

namespace {

// lo_i <= n_i + gamma_i - <w, e_i> <= hi_i
LinearSystem window_system(std::span<const long> n, const SuperspaceData& data, const Offset& offset,
                           std::span<const GoldenNumber> lo, std::span<const GoldenNumber> hi) {
  const auto& cl = data.cluster();
  LinearSystem sys(3);
  for (std::size_t i = 0; i < cl.k(); ++i) {
    const PhysVector& e = cl[i];
    GoldenNumber shift = GoldenNumber(n[i]) + offset_at(offset, i);
    sys.add({e[0], e[1], e[2]}, shift - lo[i]);
    sys.add({-e[0], -e[1], -e[2]}, hi[i] - shift);
  }
  return sys;
}

}  // namespace

LinearSystem strip_system(std::span<const long> n, const SuperspaceData& data, const Offset& offset) {
  if (n.size() != data.k()) throw std::invalid_argument("lattice point has wrong length");
  std::vector<GoldenNumber> lo(data.k(), GoldenNumber(0)), hi(data.k(), GoldenNumber(1));
  return window_system(n, data, offset, lo, hi);
}

bool in_strip(std::span<const long> n, const SuperspaceData& data, const Offset& offset) {
  return feasible(strip_system(n, data, offset), false).feasible;
}

std::vector<bool> occupancy(std::span<const long> n, const SuperspaceData& data, const Offset& offset) {
  const std::size_t k = data.k();
  std::vector<bool> mask(2 * k);
  LatticePoint y(n.begin(), n.end());
  for (std::size_t i = 0; i < k; ++i) {
    y[i] += 1;
    mask[i] = in_strip(y, data, offset);
    y[i] -= 2;
    mask[k + i] = in_strip(y, data, offset);
    y[i] += 1;
  }
  return mask;
}

bool fully_occupied(std::span<const long> n, const SuperspaceData& data, const Offset& offset) {
  const std::size_t k = data.k();
  if (n.size() != k) throw std::invalid_argument("lattice point has wrong length");
  std::vector<GoldenNumber> lo(k, GoldenNumber(0)), hi(k, GoldenNumber(1));
  if (!feasible(window_system(n, data, offset, lo, hi), false).feasible) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (int s : {1, -1}) {
      lo[i] = s;
      hi[i] = 1 + s;
      bool ok = feasible(window_system(n, data, offset, lo, hi), false).feasible;
      lo[i] = 0;
      hi[i] = 1;
      if (!ok) return false;
    }
  return true;
}

void fill_occupancy(Pattern& pattern, const SuperspaceData& data, std::size_t threads) {
  std::vector<PatternPoint*> pts;
  pts.reserve(pattern.points.size());
  for (auto& [_, p] : pattern.points) pts.push_back(&p);
  parallel_for(pts.size(), threads,
               [&](std::size_t i) { pts[i]->neighbor_mask = occupancy(pts[i]->source, data, pattern.offset); });
}

Rational sqrt_upper(const GoldenNumber& x) {
  if (x.sign() < 0) throw std::invalid_argument("sqrt_upper of a negative number");
  if (x.is_zero()) return Rational(0);
  double hi = x.enclosure().second;
  double r = std::nextafter(std::sqrt(hi), HUGE_VAL);
  Rational q = Rational::from_double(r);
  while (GoldenNumber(q * q) < x) q = q * Rational(1000001, 1000000);
  return q;
}

namespace {

GoldenNumber norm_sq(const PhysVector& p) { return dot(p, p); }

void check_radius(const GoldenNumber& radius_sq) {
  if (radius_sq.sign() <= 0) throw ConfigError("radius_sq must be positive, got " + radius_sq.str());
}

// Depth-first search over n_0, n_1, ... . At depth j the region in w holds
//  - the slabs of the fixed coordinates,
//  - |p_c| <= R for p = sum_{i<j} n_i e_i + sum_{i>=j} (<w,e_i> + t_i - gamma_i) e_i
//    with the unknown t_i in [0,1] folded into an interval,
//  - the depth-0 instance of that box, which keeps the region bounded.
// Every point of the ball satisfies all of these, so nothing is lost. The
// next coordinate ranges over the integers whose slab meets the exact range
// of <w, e_j> on the region (two exact LPs).
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const SuperspaceData& data, const GoldenNumber& radius_sq, const Offset& offset)
      : data_(data), offset_(offset), radius_sq_(radius_sq), k_(data.k()) {
    const auto& cl = data.cluster();
    radius_ = GoldenNumber(sqrt_upper(radius_sq));
    gram_.assign(k_ + 1, {});
    rest_lo_.assign(k_ + 1, {});
    rest_hi_.assign(k_ + 1, {});
    for (std::size_t j = k_; j-- > 0;) {
      gram_[j] = gram_[j + 1];
      rest_lo_[j] = rest_lo_[j + 1];
      rest_hi_[j] = rest_hi_[j + 1];
      const PhysVector& e = cl[j];
      GoldenNumber g = offset_at(offset, j);
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) gram_[j][c][d] += e[c] * e[d];
        GoldenNumber lo = -g * e[c], hi = (GoldenNumber(1) - g) * e[c];
        if (lo > hi) std::swap(lo, hi);
        rest_lo_[j][c] += lo;
        rest_hi_[j][c] += hi;
      }
    }
  }

  // Surviving prefixes of the given length, in lexicographic order.
  std::vector<LatticePoint> frontier(std::size_t depth) const {
    std::vector<LatticePoint> level{LatticePoint{}};
    for (std::size_t j = 0; j < depth && j < k_; ++j) {
      std::vector<LatticePoint> next;
      for (const auto& prefix : level)
        for (long v : child_values(prefix)) {
          LatticePoint c = prefix;
          c.push_back(v);
          next.push_back(std::move(c));
        }
      level = std::move(next);
    }
    return level;
  }

  void run(LatticePoint prefix, std::vector<LatticePoint>& out) const {
    if (prefix.size() == k_) {
      if (norm_sq(data_.physical_embed(prefix)) <= radius_sq_ && in_strip(prefix, data_, offset_))
        out.push_back(prefix);
      return;
    }
    descend(prefix, out);
  }

 private:
  void add_box(LinearSystem& sys, std::size_t level, const PhysVector& fixed) const {
    const auto& g = gram_[level];
    for (int c = 0; c < 3; ++c) {
      sys.add({g[c][0], g[c][1], g[c][2]}, radius_ - fixed[c] - rest_lo_[level][c]);
      sys.add({-g[c][0], -g[c][1], -g[c][2]}, radius_ + fixed[c] + rest_hi_[level][c]);
    }
  }

  LinearSystem region(const LatticePoint& prefix) const {
    const auto& cl = data_.cluster();
    const std::size_t j = prefix.size();
    LinearSystem sys(3);
    PhysVector fixed;
    add_box(sys, 0, fixed);
    for (std::size_t i = 0; i < j; ++i) {
      const PhysVector& e = cl[i];
      GoldenNumber shift = GoldenNumber(prefix[i]) + offset_at(offset_, i);
      sys.add({e[0], e[1], e[2]}, shift);
      sys.add({-e[0], -e[1], -e[2]}, GoldenNumber(1) - shift);
      fixed += GoldenNumber(prefix[i]) * e;
    }
    if (j > 0) add_box(sys, j, fixed);
    return sys;
  }

  std::vector<long> child_values(const LatticePoint& prefix) const {
    const std::size_t j = prefix.size();
    LinearSystem sys = region(prefix);
    const PhysVector& e = data_.cluster()[j];
    std::vector<GoldenNumber> obj{e[0], e[1], e[2]};
    std::vector<long> vals;
    LpResult hi = lp_max(sys, obj);
    if (hi.status != LpStatus::optimal) {
      if (hi.status == LpStatus::unbounded) throw InternalError("exhaustive search region is unbounded");
      return vals;
    }
    for (auto& x : obj) x = -x;
    LpResult lo = lp_max(sys, obj);
    if (lo.status != LpStatus::optimal) throw InternalError("inconsistent LP bounds in exhaustive search");
    // n_j + gamma_j - v in [0, 1] for some v in [-lo.value, hi.value].
    GoldenNumber g = offset_at(offset_, j);
    mpz_class a = (-lo.value - g).ceil(), b = (hi.value + GoldenNumber(1) - g).floor();
    for (mpz_class v = a; v <= b; ++v) {
      if (!v.fits_slong_p()) throw InternalError("lattice coordinate out of range");
      vals.push_back(v.get_si());
    }
    return vals;
  }

  void descend(LatticePoint& prefix, std::vector<LatticePoint>& out) const {
    const std::size_t j = prefix.size();
    for (long v : child_values(prefix)) {
      prefix.push_back(v);
      if (j + 1 == k_) {
        // The slab of n_j meets the region, so the full strip system is feasible.
        if (norm_sq(data_.physical_embed(prefix)) <= radius_sq_) out.push_back(prefix);
      } else {
        descend(prefix, out);
      }
      prefix.pop_back();
    }
  }

  const SuperspaceData& data_;
  const Offset& offset_;
  GoldenNumber radius_sq_;
  std::size_t k_;
  GoldenNumber radius_;
  std::vector<std::array<std::array<GoldenNumber, 3>, 3>> gram_;
  std::vector<std::array<GoldenNumber, 3>> rest_lo_, rest_hi_;
};

std::vector<LatticePoint> exhaustive_points(const SuperspaceData& data, const GoldenNumber& radius_sq,
                                            const Offset& offset, std::size_t threads) {
  std::vector<LatticePoint> roots;
  {
    ExhaustiveSearch s(data, radius_sq, offset);
    roots = s.frontier(threads > 1 ? 2 : 0);
  }
  std::vector<std::vector<LatticePoint>> found(roots.size());
  parallel_for(roots.size(), threads, [&](std::size_t i) {
    ExhaustiveSearch s(data, radius_sq, offset);
    s.run(roots[i], found[i]);
  });
  std::vector<LatticePoint> all;
  for (auto& f : found)
    for (auto& n : f) all.push_back(std::move(n));
  return all;
}

std::vector<LatticePoint> bfs_points(const SuperspaceData& data, const GoldenNumber& radius_sq, const Offset& offset,
                                     const LatticePoint& seed, std::size_t threads) {
  const std::size_t k = data.k();
  if (seed.size() != k) throw ConfigError("bfs seed has wrong length");
  if (!in_strip(seed, data, offset))
    throw ConfigError("bfs seed is not in the strip; supply another seed or use exhaustive mode");
  GoldenNumber max_e(0);
  for (std::size_t i = 0; i < k; ++i) max_e = std::max(max_e, norm_sq(data.cluster()[i]));
  GoldenNumber slack = radius_sq + GoldenNumber(4) * max_e;

  std::set<LatticePoint> seen{seed};
  std::vector<LatticePoint> accepted{seed}, frontier{seed};
  while (!frontier.empty()) {
    std::vector<LatticePoint> cand;
    for (const auto& n : frontier)
      for (std::size_t i = 0; i < k; ++i)
        for (long d : {1L, -1L}) {
          LatticePoint y = n;
          y[i] += d;
          if (seen.insert(y).second) cand.push_back(std::move(y));
        }
    std::sort(cand.begin(), cand.end());
    std::vector<char> ok(cand.size(), 0);
    parallel_for(cand.size(), threads, [&](std::size_t i) {
      ok[i] = norm_sq(data.physical_embed(cand[i])) <= slack && in_strip(cand[i], data, offset);
    });
    frontier.clear();
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (ok[i]) {
        accepted.push_back(cand[i]);
        frontier.push_back(std::move(cand[i]));
      }
  }
  std::vector<LatticePoint> out;
  for (auto& n : accepted)
    if (norm_sq(data.physical_embed(n)) <= radius_sq) out.push_back(std::move(n));
  return out;
}

}  // namespace

Pattern generate_strip(const SuperspaceData& data, const GoldenNumber& radius_sq, const Offset& offset,
                       const StripOptions& options) {
  check_radius(radius_sq);
  validate_offset(offset, data.k());
  std::size_t threads = std::max<std::size_t>(1, options.threads);
  std::vector<LatticePoint> pts =
      options.mode == StripMode::exhaustive
          ? exhaustive_points(data, radius_sq, offset, threads)
          : bfs_points(data, radius_sq, offset, options.seed.value_or(LatticePoint(data.k(), 0)), threads);
  std::sort(pts.begin(), pts.end());
  Pattern pat;
  pat.k = data.k();
  pat.radius_sq = radius_sq;
  pat.offset = offset;
  for (auto& n : pts) {
    PhysVector phys = data.physical_embed(n);
    std::vector<Rational> lift = data.lift(n);
    pat.insert(std::move(phys), std::move(n), std::move(lift));
  }
  if (options.with_occupancy) fill_occupancy(pat, data, threads);
  return pat;
}

}  // namespace mcms
