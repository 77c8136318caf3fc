#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace mcms {

/// Dense integer matrix, row-major.
using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix int_zero(std::size_t rows, std::size_t cols);
IntMatrix int_identity(std::size_t n);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_transpose(const IntMatrix& a);
/// Columns [from, to) of a.
IntMatrix int_columns(const IntMatrix& a, std::size_t from, std::size_t to);
/// Side-by-side concatenation [a | b].
IntMatrix int_hcat(const IntMatrix& a, const IntMatrix& b);

/// H = M U with U unimodular and H in column echelon form: the first `rank`
/// columns carry strictly increasing pivot rows with positive pivots, entries
/// left of a pivot reduced into [0, pivot), and the remaining columns are
/// zero. The last n - rank columns of U are a basis of the integer kernel.
struct ColumnHnf {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnHnf column_hnf(const IntMatrix& m);

/// Basis (as columns) of {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Nonzero Smith invariants d_1 | d_2 | ... (all positive).
std::vector<mpz_class> smith_invariants(const IntMatrix& m);

/// LLL-reduced basis (delta = 3/4) of the lattice spanned by the columns.
/// The columns must be linearly independent; the span is unchanged.
IntMatrix lll_reduce(const IntMatrix& basis);

/// Babai nearest-plane reduction against a fixed basis (Gram-Schmidt data
/// computed once). reduce(v) depends only on v modulo the lattice.
class NearestPlane {
 public:
  explicit NearestPlane(const IntMatrix& basis);
  std::vector<mpz_class> reduce(std::vector<mpz_class> v) const;

 private:
  IntMatrix basis_;
  std::vector<std::vector<mpq_class>> bs_;
  std::vector<mpq_class> norm_;
};

/// Replaces v by v - B c with c from Babai's nearest-plane rounding against
/// the columns of B (B LLL-reduced, independent columns).
std::vector<mpz_class> size_reduce(const std::vector<mpz_class>& v, const IntMatrix& basis);

}  // namespace mcms
