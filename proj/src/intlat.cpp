#include "mcms/intlat.hpp"

#include "mcms/errors.hpp"

#include <stdexcept>
#include <utility>

namespace mcms {

IntMatrix int_zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, std::vector<mpz_class>(cols, 0)); }

IntMatrix int_identity(std::size_t n) {
  IntMatrix m = int_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  if (a[0].size() != k) throw std::invalid_argument("int_mul: shape mismatch");
  IntMatrix c = int_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IntMatrix int_transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t = int_zero(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMatrix int_columns(const IntMatrix& a, std::size_t from, std::size_t to) {
  IntMatrix r = int_zero(a.size(), to - from);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = from; j < to; ++j) r[i][j - from] = a[i][j];
  return r;
}

IntMatrix int_hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("int_hcat: row counts differ");
  IntMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i].insert(r[i].end(), b[i].begin(), b[i].end());
  return r;
}

namespace {

// Column operation on (A, U): [c_p, c_q] <- [c_p, c_q] * [[a, b], [c, d]].
void combine_columns(IntMatrix& a, std::size_t p, std::size_t q, const mpz_class& x, const mpz_class& y,
                     const mpz_class& z, const mpz_class& w) {
  for (auto& row : a) {
    mpz_class vp = row[p], vq = row[q];
    row[p] = vp * x + vq * z;
    row[q] = vp * y + vq * w;
  }
}

void add_column_multiple(IntMatrix& a, std::size_t dst, std::size_t src, const mpz_class& f) {
  if (f == 0) return;
  for (auto& row : a) row[dst] -= f * row[src];
}

void swap_columns(IntMatrix& a, std::size_t p, std::size_t q) {
  for (auto& row : a) std::swap(row[p], row[q]);
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

ColumnHnf column_hnf(const IntMatrix& m) {
  ColumnHnf out;
  out.h = m;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  out.u = int_identity(cols);
  std::size_t p = 0;
  for (std::size_t r = 0; r < rows && p < cols; ++r) {
    for (std::size_t j = p + 1; j < cols; ++j) {
      if (out.h[r][j] == 0) continue;
      mpz_class a = out.h[r][p], b = out.h[r][j], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      // [p, j] * [[s, -b/g], [t, a/g]] puts g in column p and 0 in column j.
      mpz_class bg = b / g, ag = a / g;
      combine_columns(out.h, p, j, s, -bg, t, ag);
      combine_columns(out.u, p, j, s, -bg, t, ag);
    }
    if (out.h[r][p] == 0) continue;
    if (out.h[r][p] < 0) {
      for (auto& row : out.h) row[p] = -row[p];
      for (auto& row : out.u) row[p] = -row[p];
    }
    for (std::size_t j = 0; j < p; ++j) {
      mpz_class f = floor_div(out.h[r][j], out.h[r][p]);
      add_column_multiple(out.h, j, p, f);
      add_column_multiple(out.u, j, p, f);
    }
    out.pivot_rows.push_back(r);
    ++p;
  }
  out.rank = p;
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  ColumnHnf h = column_hnf(m);
  return int_columns(h.u, h.rank, h.u.size());
}

std::vector<mpz_class> smith_invariants(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    // Pivot: smallest nonzero |entry| in the remaining block.
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
      if (pi == rows) {
        std::vector<mpz_class> out;
        for (auto& d : diag) out.push_back(d);
        return out;
      }
      std::swap(a[t], a[pi]);
      swap_columns(a, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        mpz_class q = floor_div(a[i][t], a[t][t]);
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        mpz_class q = floor_div(a[t][j], a[t][t]);
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t l = t; l < cols; ++l) a[t][l] += a[i][l];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

IntMatrix lll_reduce(const IntMatrix& basis) {
  const std::size_t n = basis.size(), d = n ? basis[0].size() : 0;
  std::vector<std::vector<mpz_class>> b(d, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) b[j][i] = basis[i][j];
  std::vector<std::vector<mpq_class>> mu(d, std::vector<mpq_class>(d));
  std::vector<mpq_class> bstar_sq(d);
  auto gram_schmidt = [&] {
    std::vector<std::vector<mpq_class>> bs(d, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t l = 0; l < n; ++l) bs[i][l] = b[i][l];
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (std::size_t l = 0; l < n; ++l) num += mpq_class(b[i][l]) * bs[j][l];
        mu[i][j] = num / bstar_sq[j];
        for (std::size_t l = 0; l < n; ++l) bs[i][l] -= mu[i][j] * bs[j][l];
      }
      bstar_sq[i] = 0;
      for (std::size_t l = 0; l < n; ++l) bstar_sq[i] += bs[i][l] * bs[i][l];
      if (bstar_sq[i] == 0) throw std::invalid_argument("lll_reduce: dependent columns");
    }
  };
  gram_schmidt();
  const mpq_class delta(3, 4);
  std::size_t k = 1;
  while (k < d) {
    for (std::size_t jj = k; jj-- > 0;) {
      mpq_class m = mu[k][jj];
      mpz_class q;
      {
        mpq_class shifted = m + mpq_class(1, 2);
        mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      }
      if (q != 0) {
        for (std::size_t l = 0; l < n; ++l) b[k][l] -= q * b[jj][l];
        for (std::size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
        mu[k][jj] -= q;
      }
    }
    if (bstar_sq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_sq[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = k > 1 ? k - 1 : 1;
    }
  }
  IntMatrix out = int_zero(n, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < n; ++l) out[l][i] = b[i][l];
  return out;
}

NearestPlane::NearestPlane(const IntMatrix& basis) : basis_(basis) {
  const std::size_t n = basis.size(), d = n ? basis[0].size() : 0;
  bs_.assign(d, std::vector<mpq_class>(n));
  norm_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = 0; l < n; ++l) bs_[i][l] = basis[l][i];
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (std::size_t l = 0; l < n; ++l) num += mpq_class(basis[l][i]) * bs_[j][l];
      mpq_class f = num / norm_[j];
      for (std::size_t l = 0; l < n; ++l) bs_[i][l] -= f * bs_[j][l];
    }
    norm_[i] = 0;
    for (std::size_t l = 0; l < n; ++l) norm_[i] += bs_[i][l] * bs_[i][l];
  }
}

std::vector<mpz_class> NearestPlane::reduce(std::vector<mpz_class> r) const {
  const std::size_t n = basis_.size();
  for (std::size_t i = bs_.size(); i-- > 0;) {
    mpq_class num = 0;
    for (std::size_t l = 0; l < n; ++l)
      if (r[l] != 0) num += r[l] * bs_[i][l];
    mpq_class c = num / norm_[i] + mpq_class(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    if (q != 0)
      for (std::size_t l = 0; l < n; ++l) r[l] -= q * basis_[l][i];
  }
  return r;
}

std::vector<mpz_class> size_reduce(const std::vector<mpz_class>& v, const IntMatrix& basis) {
  return NearestPlane(basis).reduce(v);
}

}  // namespace mcms
