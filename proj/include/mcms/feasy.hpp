#pragma once

#include "mcms/golden.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mcms {

enum class Relation { le, lt };

/// sum_j coeffs[j] * w_j (<= or <) rhs
struct Row {
  std::vector<GoldenNumber> coeffs;
  GoldenNumber rhs;
  Relation rel = Relation::le;

  friend bool operator==(const Row&, const Row&) = default;
};

/// Conjunction of linear inequalities over the ordered field Q[tau].
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws std::invalid_argument when coeffs has the wrong length.
  void add(std::vector<GoldenNumber> coeffs, GoldenNumber rhs, Relation rel = Relation::le);
  void add(Row row) { add(std::move(row.coeffs), std::move(row.rhs), row.rel); }

  /// lo <= w_var <= hi as two rows.
  void add_bounds(std::size_t var, const GoldenNumber& lo, const GoldenNumber& hi);

  /// Copy with every relation made strict.
  LinearSystem strict() const;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Row> rows_;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<std::vector<GoldenNumber>> witness;
};

/// Exact check of one point against every row.
bool satisfies(const LinearSystem& system, std::span<const GoldenNumber> point);

/// One Fourier-Motzkin step: removes variable var_index, combining every
/// positive/negative coefficient pair. A combined row is strict iff a parent
/// is. Rows are scaled so their first nonzero coefficient is +-1; parallel
/// duplicates keep only the tightest bound; trivially true constant rows are
/// dropped.
LinearSystem fm_eliminate(const LinearSystem& system, std::size_t var_index);

/// Eliminates variables in input order. When with_witness is set and the
/// system is feasible, back-substitution picks the midpoint of each exact
/// interval, and the witness is checked against every row.
FeasibilityResult feasible(const LinearSystem& system, bool with_witness = true);

/// Feasibility of the system with all relations strict; for a polytope this
/// decides whether it is full-dimensional.
bool strictly_feasible(const LinearSystem& system);

/// Exact projection of the feasible set onto one variable. An absent end is
/// unbounded; a strict end is open.
struct Interval {
  std::optional<GoldenNumber> lo, hi;
  bool lo_open = false, hi_open = false;
};

/// Eliminates every other variable; nullopt when the system is infeasible.
std::optional<Interval> project_range(const LinearSystem& system, std::size_t var);

enum class LpStatus { optimal, infeasible, unbounded, infeasible_or_unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  GoldenNumber value;
};

/// sup of objective . w over the closure of the system (strictness is
/// ignored). Exact revised simplex on the dual with Bland's rule. When the
/// dual is infeasible the primal is unbounded or empty; the two are not told
/// apart.
LpResult lp_max(const LinearSystem& system, std::span<const GoldenNumber> objective);

/// Calls visit(v) for every integer vector v of length num_int such that the
/// system with its first num_int variables fixed to v is feasible over the
/// closure (the remaining variables stay real). Visits in lexicographic
/// order. Each coordinate's range is the exact LP projection given the
/// prefix, so every visited prefix is feasible. Throws InternalError when a
/// projection is unbounded.
void enumerate_integer_prefix(const LinearSystem& system, std::size_t num_int,
                              const std::function<void(std::span<const long>)>& visit);

/// The system with variable 0 fixed to value (one variable fewer).
LinearSystem fix_first(const LinearSystem& system, const GoldenNumber& value);

}  // namespace mcms
