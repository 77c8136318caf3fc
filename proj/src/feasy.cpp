#include "mcms/feasy.hpp"

#include "mcms/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mcms {

void LinearSystem::add(std::vector<GoldenNumber> coeffs, GoldenNumber rhs, Relation rel) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("row has wrong number of coefficients");
  rows_.push_back({std::move(coeffs), std::move(rhs), rel});
}

void LinearSystem::add_bounds(std::size_t var, const GoldenNumber& lo, const GoldenNumber& hi) {
  std::vector<GoldenNumber> c(num_vars_);
  c[var] = 1;
  add(c, hi);
  c[var] = -1;
  add(c, -lo);
}

LinearSystem LinearSystem::strict() const {
  LinearSystem s = *this;
  for (auto& r : s.rows_) r.rel = Relation::lt;
  return s;
}

namespace {

bool row_holds(const Row& r, const GoldenNumber& lhs) {
  int s = (r.rhs - lhs).sign();
  return r.rel == Relation::le ? s >= 0 : s > 0;
}

// 0 (rel) rhs
bool constant_holds(const Row& r) {
  int s = r.rhs.sign();
  return r.rel == Relation::le ? s >= 0 : s > 0;
}

struct CoeffHash {
  std::size_t operator()(const std::vector<GoldenNumber>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 0x9e3779b97f4a7c15ULL ^ x.hash();
    return h;
  }
};

// Accumulates rows, keeping the tightest of parallel duplicates.
class RowSink {
 public:
  explicit RowSink(std::size_t num_vars) : out_(num_vars) {}

  // Returns false once an unsatisfiable constant row is seen.
  bool push(Row row) {
    std::size_t lead = 0;
    while (lead < row.coeffs.size() && row.coeffs[lead].is_zero()) ++lead;
    if (lead == row.coeffs.size()) {
      if (constant_holds(row)) return true;
      if (!infeasible_) {
        infeasible_ = true;
        rows_.push_back(std::move(row));
      }
      return false;
    }
    const GoldenNumber& c = row.coeffs[lead];
    if (!(c == GoldenNumber(1) || c == GoldenNumber(-1))) {
      GoldenNumber inv = *c.abs().inverse();
      for (std::size_t j = lead; j < row.coeffs.size(); ++j)
        if (!row.coeffs[j].is_zero()) row.coeffs[j] *= inv;
      row.rhs *= inv;
    }
    auto [it, inserted] = index_.try_emplace(row.coeffs, rows_.size());
    if (inserted) {
      rows_.push_back(std::move(row));
      return true;
    }
    Row& old = rows_[it->second];
    int s = (row.rhs - old.rhs).sign();
    if (s < 0 || (s == 0 && row.rel == Relation::lt)) {
      old.rhs = std::move(row.rhs);
      old.rel = row.rel;
    }
    return true;
  }

  bool infeasible() const { return infeasible_; }

  LinearSystem finish() {
    for (auto& r : rows_) out_.add(std::move(r));
    return std::move(out_);
  }

 private:
  LinearSystem out_;
  std::vector<Row> rows_;
  std::unordered_map<std::vector<GoldenNumber>, std::size_t, CoeffHash> index_;
  bool infeasible_ = false;
};

std::vector<GoldenNumber> drop(const std::vector<GoldenNumber>& v, std::size_t idx) {
  std::vector<GoldenNumber> r;
  r.reserve(v.size() - 1);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != idx) r.push_back(v[j]);
  return r;
}

// Rows scaled so the eliminated coefficient is +1 (pos) or -1 (neg).
LinearSystem eliminate_impl(const LinearSystem& system, std::size_t var, bool* infeasible) {
  if (var >= system.num_vars()) throw std::out_of_range("fm_eliminate: variable index out of range");
  RowSink sink(system.num_vars() - 1);
  std::vector<Row> pos, neg;
  for (const auto& r : system.rows()) {
    int s = r.coeffs[var].sign();
    if (s == 0) {
      sink.push({drop(r.coeffs, var), r.rhs, r.rel});
      continue;
    }
    Row scaled{drop(r.coeffs, var), r.rhs, r.rel};
    const GoldenNumber& c = r.coeffs[var];
    if (!(c == GoldenNumber(1) || c == GoldenNumber(-1))) {
      GoldenNumber inv = *c.abs().inverse();
      for (auto& x : scaled.coeffs)
        if (!x.is_zero()) x *= inv;
      scaled.rhs *= inv;
    }
    (s > 0 ? pos : neg).push_back(std::move(scaled));
  }
  for (const auto& p : pos)
    for (const auto& q : neg) {
      Row r{p.coeffs, p.rhs + q.rhs, (p.rel == Relation::lt || q.rel == Relation::lt) ? Relation::lt : Relation::le};
      for (std::size_t j = 0; j < r.coeffs.size(); ++j) r.coeffs[j] += q.coeffs[j];
      if (!sink.push(std::move(r)) && infeasible) {
        *infeasible = true;
        return sink.finish();
      }
    }
  if (infeasible) *infeasible = sink.infeasible();
  return sink.finish();
}

}  // namespace

bool satisfies(const LinearSystem& system, std::span<const GoldenNumber> point) {
  if (point.size() != system.num_vars()) throw std::invalid_argument("point has wrong dimension");
  for (const auto& r : system.rows()) {
    GoldenNumber lhs;
    for (std::size_t j = 0; j < point.size(); ++j)
      if (!r.coeffs[j].is_zero()) lhs += r.coeffs[j] * point[j];
    if (!row_holds(r, lhs)) return false;
  }
  return true;
}

LinearSystem fm_eliminate(const LinearSystem& system, std::size_t var_index) {
  return eliminate_impl(system, var_index, nullptr);
}

FeasibilityResult feasible(const LinearSystem& system, bool with_witness) {
  const std::size_t d = system.num_vars();
  for (const auto& r : system.rows()) {
    bool all_zero = true;
    for (const auto& c : r.coeffs) all_zero = all_zero && c.is_zero();
    if (all_zero && !constant_holds(r)) return {false, std::nullopt};
  }

  std::vector<LinearSystem> stages;
  stages.reserve(d + 1);
  stages.push_back(system);
  for (std::size_t j = 0; j < d; ++j) {
    bool bad = false;
    LinearSystem next = eliminate_impl(stages.back(), 0, &bad);
    if (bad) return {false, std::nullopt};
    if (with_witness) stages.push_back(std::move(next));
    else stages.back() = std::move(next);
  }
  for (const auto& r : stages.back().rows())
    if (!constant_holds(r)) return {false, std::nullopt};
  if (!with_witness) return {true, std::nullopt};

  // Back-substitution: stage j has variables j..d-1.
  std::vector<GoldenNumber> x(d);
  for (std::size_t jj = d; jj-- > 0;) {
    const LinearSystem& s = stages[jj];
    std::optional<GoldenNumber> lo, hi;
    for (const auto& r : s.rows()) {
      GoldenNumber rest = r.rhs;
      for (std::size_t l = 1; l < r.coeffs.size(); ++l)
        if (!r.coeffs[l].is_zero()) rest -= r.coeffs[l] * x[jj + l];
      const GoldenNumber& c = r.coeffs[0];
      int sc = c.sign();
      if (sc == 0) continue;
      GoldenNumber bound = rest / c;
      if (sc > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    if (lo && hi) x[jj] = (*lo + *hi) * Rational(1, 2);
    else if (lo) x[jj] = *lo + GoldenNumber(1);
    else if (hi) x[jj] = *hi - GoldenNumber(1);
    else x[jj] = 0;
  }
  if (!satisfies(system, x)) throw InternalError("Fourier-Motzkin witness violates the system");
  return {true, std::move(x)};
}

bool strictly_feasible(const LinearSystem& system) { return feasible(system.strict(), false).feasible; }

std::optional<Interval> project_range(const LinearSystem& system, std::size_t var) {
  const std::size_t d = system.num_vars();
  if (var >= d) throw std::out_of_range("project_range: variable index out of range");
  LinearSystem cur = system;
  std::size_t target = var;
  for (std::size_t step = 0; step + 1 < d; ++step) {
    std::size_t victim = target == 0 ? 1 : 0;
    bool bad = false;
    cur = eliminate_impl(cur, victim, &bad);
    if (bad) return std::nullopt;
    if (victim < target) --target;
  }
  Interval out;
  for (const auto& r : cur.rows()) {
    const GoldenNumber& c = r.coeffs[0];
    int sc = c.sign();
    if (sc == 0) {
      if (!constant_holds(r)) return std::nullopt;
      continue;
    }
    GoldenNumber b = r.rhs / c;
    bool open = r.rel == Relation::lt;
    if (sc > 0) {
      int cmp = out.hi ? (b - *out.hi).sign() : -1;
      if (cmp < 0) out.hi = b, out.hi_open = open;
      else if (cmp == 0) out.hi_open = out.hi_open || open;
    } else {
      int cmp = out.lo ? (b - *out.lo).sign() : 1;
      if (cmp > 0) out.lo = b, out.lo_open = open;
      else if (cmp == 0) out.lo_open = out.lo_open || open;
    }
  }
  if (out.lo && out.hi) {
    int s = (*out.hi - *out.lo).sign();
    if (s < 0 || (s == 0 && (out.lo_open || out.hi_open))) return std::nullopt;
  }
  return out;
}

}  // namespace mcms

namespace mcms {

namespace {

// Dual of max c.w s.t. A w <= b:  min b.l  s.t.  A^T l = c, l >= 0.
// Columns 0..m-1 are the rows of A, columns m..m+d-1 are phase-1
// artificials.
class DualSimplex {
 public:
  DualSimplex(const LinearSystem& sys, std::span<const GoldenNumber> c)
      : sys_(sys), d_(sys.num_vars()), m_(sys.size()), c_(c.begin(), c.end()) {
    sign_.resize(d_);
    for (std::size_t r = 0; r < d_; ++r) sign_[r] = c_[r].sign() < 0 ? -1 : 1;
    basis_.resize(d_);
    binv_.assign(d_, std::vector<GoldenNumber>(d_));
    x_.resize(d_);
    for (std::size_t r = 0; r < d_; ++r) {
      basis_[r] = m_ + r;
      binv_[r][r] = sign_[r];
      x_[r] = sign_[r] < 0 ? -c_[r] : c_[r];
    }
  }

  LpResult solve() {
    if (!iterate(true)) throw InternalError("phase 1 of the dual simplex is unbounded");
    for (std::size_t r = 0; r < d_; ++r)
      if (basis_[r] >= m_ && !x_[r].is_zero()) return {LpStatus::infeasible_or_unbounded, {}};
    drive_out_artificials();
    if (!iterate(false)) return {LpStatus::infeasible, {}};
    GoldenNumber v;
    for (std::size_t r = 0; r < d_; ++r)
      if (basis_[r] < m_) v += sys_.rows()[basis_[r]].rhs * x_[r];
    return {LpStatus::optimal, v};
  }

 private:
  GoldenNumber entry(std::size_t col, std::size_t r) const {
    if (col < m_) return sys_.rows()[col].coeffs[r];
    return col - m_ == r ? GoldenNumber(sign_[r]) : GoldenNumber(0);
  }

  GoldenNumber cost(std::size_t col, bool phase1) const {
    if (phase1) return col >= m_ ? GoldenNumber(1) : GoldenNumber(0);
    return sys_.rows()[col].rhs;
  }

  std::vector<GoldenNumber> column(std::size_t col) const {
    std::vector<GoldenNumber> u(d_);
    for (std::size_t r = 0; r < d_; ++r)
      for (std::size_t q = 0; q < d_; ++q) {
        GoldenNumber a = entry(col, q);
        if (!a.is_zero() && !binv_[r][q].is_zero()) u[r] += binv_[r][q] * a;
      }
    return u;
  }

  void pivot(std::size_t r, std::size_t col, const std::vector<GoldenNumber>& u) {
    GoldenNumber inv = *u[r].inverse();
    for (auto& v : binv_[r]) v *= inv;
    x_[r] *= inv;
    for (std::size_t q = 0; q < d_; ++q) {
      if (q == r || u[q].is_zero()) continue;
      for (std::size_t l = 0; l < d_; ++l)
        if (!binv_[r][l].is_zero()) binv_[q][l] -= u[q] * binv_[r][l];
      x_[q] -= u[q] * x_[r];
    }
    basis_[r] = col;
  }

  // Returns false when the objective is unbounded below.
  bool iterate(bool phase1) {
    const std::size_t ncols = phase1 ? m_ + d_ : m_;
    std::vector<char> in_basis(m_ + d_, 0);
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), 0);
      for (auto b : basis_) in_basis[b] = 1;
      std::vector<GoldenNumber> y(d_);
      for (std::size_t r = 0; r < d_; ++r) {
        GoldenNumber cb = basis_[r] < m_ || phase1 ? cost(basis_[r], phase1) : GoldenNumber(0);
        if (cb.is_zero()) continue;
        for (std::size_t q = 0; q < d_; ++q)
          if (!binv_[r][q].is_zero()) y[q] += cb * binv_[r][q];
      }
      std::size_t enter = ncols;
      for (std::size_t col = 0; col < ncols && enter == ncols; ++col) {
        if (in_basis[col]) continue;
        GoldenNumber red = cost(col, phase1);
        for (std::size_t q = 0; q < d_; ++q) {
          GoldenNumber a = entry(col, q);
          if (!a.is_zero() && !y[q].is_zero()) red -= y[q] * a;
        }
        if (red.sign() < 0) enter = col;
      }
      if (enter == ncols) return true;
      std::vector<GoldenNumber> u = column(enter);
      std::size_t leave = d_;
      GoldenNumber best;
      for (std::size_t r = 0; r < d_; ++r) {
        if (u[r].sign() <= 0) continue;
        GoldenNumber ratio = x_[r] / u[r];
        int cmp = leave == d_ ? -1 : (ratio - best).sign();
        if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == d_) return false;
      pivot(leave, enter, u);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < d_; ++r) {
      if (basis_[r] < m_) continue;
      for (std::size_t col = 0; col < m_; ++col) {
        if (std::find(basis_.begin(), basis_.end(), col) != basis_.end()) continue;
        std::vector<GoldenNumber> u = column(col);
        if (!u[r].is_zero()) {
          pivot(r, col, u);
          break;
        }
      }
      if (basis_[r] >= m_) throw InternalError("dual simplex: constraint matrix has deficient rank");
    }
  }

  const LinearSystem& sys_;
  std::size_t d_, m_;
  std::vector<GoldenNumber> c_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<GoldenNumber>> binv_;
  std::vector<GoldenNumber> x_;
};

}  // namespace

LpResult lp_max(const LinearSystem& system, std::span<const GoldenNumber> objective) {
  if (objective.size() != system.num_vars()) throw std::invalid_argument("objective has wrong dimension");
  for (const auto& r : system.rows()) {
    bool all_zero = true;
    for (const auto& c : r.coeffs) all_zero = all_zero && c.is_zero();
    if (all_zero && r.rhs.sign() < 0) return {LpStatus::infeasible, {}};
  }
  return DualSimplex(system, objective).solve();
}

}  // namespace mcms

namespace mcms {

LinearSystem fix_first(const LinearSystem& system, const GoldenNumber& value) {
  if (system.num_vars() == 0) throw std::invalid_argument("fix_first: no variables");
  LinearSystem out(system.num_vars() - 1);
  for (const auto& r : system.rows()) {
    std::vector<GoldenNumber> c(r.coeffs.begin() + 1, r.coeffs.end());
    GoldenNumber rhs = r.rhs;
    if (!r.coeffs[0].is_zero() && !value.is_zero()) rhs -= r.coeffs[0] * value;
    out.add(std::move(c), std::move(rhs), r.rel);
  }
  return out;
}

namespace {

void enumerate_rec(const LinearSystem& sys, std::size_t remaining, std::vector<long>& prefix,
                   const std::function<void(std::span<const long>)>& visit) {
  if (remaining == 0) {
    visit(prefix);
    return;
  }
  std::vector<GoldenNumber> obj(sys.num_vars());
  obj[0] = 1;
  LpResult hi = lp_max(sys, obj);
  if (hi.status == LpStatus::infeasible) return;
  if (hi.status != LpStatus::optimal) {
    // Bounded regions only: an empty system also lands here when the dual is
    // infeasible, so decide emptiness before complaining.
    if (!feasible(sys, false).feasible) return;
    throw InternalError("enumerate_integer_prefix: unbounded coordinate");
  }
  obj[0] = -1;
  LpResult lo = lp_max(sys, obj);
  if (lo.status != LpStatus::optimal) throw InternalError("enumerate_integer_prefix: unbounded coordinate");
  mpz_class a = (-lo.value).ceil(), b = hi.value.floor();
  for (mpz_class v = a; v <= b; ++v) {
    if (!v.fits_slong_p()) throw InternalError("enumerate_integer_prefix: coordinate out of range");
    long x = v.get_si();
    prefix.push_back(x);
    enumerate_rec(fix_first(sys, GoldenNumber(x)), remaining - 1, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void enumerate_integer_prefix(const LinearSystem& system, std::size_t num_int,
                              const std::function<void(std::span<const long>)>& visit) {
  if (num_int > system.num_vars()) throw std::invalid_argument("enumerate_integer_prefix: too many integer variables");
  std::vector<long> prefix;
  enumerate_rec(system, num_int, prefix, visit);
}

}  // namespace mcms
