#pragma once

#include "mcms/feasy.hpp"
#include "mcms/pattern.hpp"
#include "mcms/superspace.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mcms {

enum class StripMode { bfs, exhaustive };

/// Rows 0 <= n_i + gamma_i - <w, e_i> <= 1 in the variables w (3 of them).
LinearSystem strip_system(std::span<const long> n, const SuperspaceData& data, const Offset& offset = {});

/// Exact strip test for x = kappa n.
bool in_strip(std::span<const long> n, const SuperspaceData& data, const Offset& offset = {});

struct StripOptions {
  StripMode mode = StripMode::exhaustive;
  std::size_t threads = 1;
  /// BFS start; defaults to n = 0.
  std::optional<LatticePoint> seed;
  /// Fill neighbor masks of the generated points.
  bool with_occupancy = true;
};

/// {pi x : x in the strip, |pi x|^2 <= R^2}. Throws ConfigError for a
/// non-positive radius, a wrong offset length, or a BFS seed outside the strip.
Pattern generate_strip(const SuperspaceData& data, const GoldenNumber& radius_sq, const Offset& offset = {},
                       const StripOptions& options = {});

/// in_strip(n + eps_i) for i < k, then in_strip(n - eps_i).
std::vector<bool> occupancy(std::span<const long> n, const SuperspaceData& data, const Offset& offset = {});

/// Window-intersection form: the point lies in K and in every translate
/// K +- pi_perp(kappa eps_i), each decided on its own shifted window.
bool fully_occupied(std::span<const long> n, const SuperspaceData& data, const Offset& offset = {});

/// Computes neighbor masks for every point of the pattern.
void fill_occupancy(Pattern& pattern, const SuperspaceData& data, std::size_t threads = 1);

/// Rational r >= 0 with r^2 >= x (x >= 0), computed from an outward float
/// bound and checked exactly.
Rational sqrt_upper(const GoldenNumber& x);

/// Throws ConfigError unless offset is empty or has length k.
void validate_offset(const Offset& offset, std::size_t k);

}  // namespace mcms
