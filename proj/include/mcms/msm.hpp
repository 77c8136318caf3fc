#pragma once

#include "mcms/feasy.hpp"
#include "mcms/hull.hpp"
#include "mcms/intlat.hpp"
#include "mcms/pattern.hpp"
#include "mcms/superspace.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcms {

enum class SurfaceStatus { empty, lower_dim, full_dim };
std::string to_string(SurfaceStatus s);

/// Integer preimage of L = L_k cap (E + E'): the integer solutions of
/// pi'' n = 0.
struct SixLattice {
  /// k x 6, columns b_1..b_6 (LLL-reduced).
  IntMatrix basis;
  /// <b_i, b_j> measured as sum of physical and conjugate inner products.
  GnMatrix gram;

  std::vector<long> column(std::size_t j) const;
};

struct CosetRep {
  LatticePoint z;
  /// pi'' z, the coset label.
  std::vector<Rational> second_proj;
  SurfaceStatus surface_status = SurfaceStatus::empty;
  /// Window coordinates y_i stuck on a cube face over the whole slice (0 or
  /// 1), -1 otherwise. Other coordinates may still be constant on a
  /// degenerate slice, at values strictly inside (0, 1). All -1 for a slice
  /// meeting the open cube.
  std::vector<signed char> pinned;

  /// Comma-separated label entries.
  std::string label() const;
};

/// Exact integer kernel basis of pi''; throws CheckFailure unless the rank is 6.
SixLattice sublattice_basis(const SuperspaceData& data);

/// [L_6 : L] via Smith invariants of [kernel of pi'' | kernel of pi + pi'].
mpz_class scheme_index(const SixLattice& lattice, const SuperspaceData& data);

class MsmScheme {
 public:
  /// Builds the lattice, every coset with a nonempty window slice (for the
  /// given window offset) and the index.
  static MsmScheme build(const SuperspaceData& data, const Offset& offset = {}, std::size_t threads = 1);

  const SuperspaceData& superspace() const { return data_; }
  const SixLattice& lattice() const { return lattice_; }
  const Offset& offset() const { return offset_; }
  const std::vector<CosetRep>& cosets() const { return cosets_; }
  std::size_t m() const;
  const mpz_class& index() const { return index_; }

  /// Coset whose label equals pi'' n, if enumerated.
  std::optional<std::size_t> route(std::span<const long> n) const;
  std::optional<std::size_t> find(const std::vector<Rational>& label) const;

  /// Rows 0 <= z_i + gamma_i + (B t)_i <= 1 in t (6 variables).
  LinearSystem slice_system(const LatticePoint& z) const;

  /// conj(B t) as a 3 x 6 matrix.
  const GnMatrix& conj_basis() const { return conj_b_; }

  /// Internal: the 3-variable membership parametrization.
  struct Membership {
    GnMatrix particular;  // k x 3: y - (z + gamma) for target r, as B P r
    GnMatrix free;        // k x 3: B N
  };
  const Membership& membership() const { return membership_; }

 private:
  SuperspaceData data_;
  SixLattice lattice_;
  Offset offset_;
  std::vector<CosetRep> cosets_;
  std::map<std::vector<Rational>, std::size_t> by_label_;
  mpz_class index_;
  GnMatrix conj_b_;
  Membership membership_;

  friend std::vector<CosetRep> coset_reps_impl(MsmScheme&, std::size_t);
};

/// Exact H-description of the pi''-shadow of the shifted cube, one pair of
/// integer inequalities per circuit of the row space of pi'' (minimal-support
/// vectors orthogonal to the sublattice). A coset meets the window iff its
/// representative satisfies every pair.
class CircuitWindow {
 public:
  CircuitWindow(const IntMatrix& basis, const Offset& offset);

  std::size_t size() const { return circuits_.size(); }
  /// {0 <= n + gamma + B t <= 1} is nonempty.
  bool contains(std::span<const long> n) const;
  /// ... and meets the open cube.
  bool interior(std::span<const long> n) const;
  /// Coordinates stuck on a cube face over the slice (see CosetRep::pinned);
  /// empty when the slice is empty.
  std::vector<signed char> pinned(std::span<const long> n) const;

 private:
  struct Circuit {
    std::vector<std::pair<std::size_t, long>> terms;
    long lo, hi;                 // closed range of mu . n
    long lo_open, hi_open;       // range for the open cube
    bool lo_tight_possible, hi_tight_possible;
  };
  long dot(const Circuit& c, std::span<const long> n) const;
  std::size_t k_ = 0;
  std::vector<Circuit> circuits_;
};

/// Oracle: coset labels found by exhaustive LP-pruned search over the image
/// lattice of pi'' (no connectivity assumption). Slow for k = 16.
std::vector<std::vector<Rational>> coset_labels_by_lp(const MsmScheme& scheme);

/// Cosets of the scheme (already computed by build).
const std::vector<CosetRep>& coset_reps(const MsmScheme& scheme);

/// q in E' coordinates (conjugate embedding): is q in pi'(K cap E_i)?
bool surface_contains(const MsmScheme& scheme, const CosetRep& coset, const PhysVector& q);

/// pi' x in the coset's atomic surface, for x = kappa n. Throws
/// std::invalid_argument when pi'' n differs from the coset label.
bool surface_membership(const MsmScheme& scheme, const CosetRep& coset, std::span<const long> n);

struct MsmOptions {
  std::size_t threads = 1;
  bool full_dim_only = false;
  bool with_occupancy = true;
};

/// The pattern as a union over cosets of model sets, with the ball cutoff.
Pattern generate_msm(const MsmScheme& scheme, const GoldenNumber& radius_sq, const MsmOptions& options = {});

/// Neighbour masks through coset routing and surface_membership.
std::vector<bool> msm_occupancy(const MsmScheme& scheme, std::span<const long> n);

/// Hull of the atomic surface in E' coordinates. Throws std::invalid_argument
/// when k exceeds max_k.
Hull surface_vertices(const MsmScheme& scheme, const CosetRep& coset, std::size_t max_k = 16);

/// Exact bounding box of the atomic surface (E' coordinates); empty for an
/// empty slice.
std::optional<std::pair<PhysVector, PhysVector>> surface_bounds(const MsmScheme& scheme, const CosetRep& coset);

/// Wavefront OBJ text for a hull; exact vertex coordinates go in comments.
std::string hull_obj(const Hull& hull, const std::string& title);

}  // namespace mcms
