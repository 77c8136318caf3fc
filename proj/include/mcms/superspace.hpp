#pragma once

#include "mcms/cluster.hpp"
#include "mcms/group.hpp"
#include "mcms/linalg.hpp"
#include "mcms/repk.hpp"

#include <span>
#include <string>
#include <vector>

namespace mcms {

struct ProjectorMatrix {
  GnMatrix entries;
  std::size_t rank_expected = 0;
};

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Exact superspace data for a cluster: the conjugate cluster, the squared
/// lattice scale kappa^2 and the three mutually orthogonal projectors.
///
/// Lattice points are integer vectors n standing for x = kappa n; kappa
/// itself is never formed.
class SuperspaceData {
 public:
  /// Builds and verifies every projector identity; throws CheckFailure on
  /// the first violation (and CheckFailure from RepK for non-invariant input).
  static SuperspaceData build(const IcosaGroup& group, const Cluster& cluster);

  /// Builds without running the identity suite.
  static SuperspaceData build_unchecked(const IcosaGroup& group, const Cluster& cluster);

  /// The named identity suite (projectors, equivariance, Schur zero, ...).
  std::vector<CheckResult> run_checks(const IcosaGroup& group) const;

  std::size_t k() const { return cluster_.k(); }
  const Cluster& cluster() const { return cluster_; }
  const std::vector<PhysVector>& conj() const { return conj_; }
  const RepK& rep() const { return rep_; }

  /// kappa^2 = sum_l e_{l1}^2.
  const GoldenNumber& kappa_sq() const { return kappa_sq_; }
  /// phi(kappa^2), the scale of the conjugate cluster.
  const GoldenNumber& kappa_sq_conj() const { return kappa_sq_conj_; }

  const ProjectorMatrix& pi() const { return pi_; }
  const ProjectorMatrix& pi_prime() const { return pi_prime_; }
  const ProjectorMatrix& pi_second() const { return pi_second_; }

  /// pi'' as a rational matrix (its entries have no tau part).
  const std::vector<std::vector<Rational>>& pi_second_rational() const { return pi_second_q_; }

  /// sum_i n_i e_i, the physical image of x = kappa n.
  PhysVector physical_embed(std::span<const long> n) const;
  PhysVector physical_embed(std::span<const GoldenNumber> y) const;
  /// (pi + pi') n = n - pi'' n, the image of x = kappa n in the 6-dimensional
  /// lattice (in units of kappa; rational by construction).
  std::vector<Rational> lift(std::span<const long> n) const;
  /// pi'' n, the coset label.
  std::vector<Rational> second_projection(std::span<const long> n) const;
  /// sum_i n_i e'_i, the internal (star) image.
  PhysVector conjugate_embed(std::span<const long> n) const;
  PhysVector conjugate_embed(std::span<const GoldenNumber> y) const;

 private:
  Cluster cluster_;
  std::vector<PhysVector> conj_;
  RepK rep_;
  GoldenNumber kappa_sq_;
  GoldenNumber kappa_sq_conj_;
  ProjectorMatrix pi_;
  ProjectorMatrix pi_prime_;
  ProjectorMatrix pi_second_;
  std::vector<std::vector<Rational>> pi_second_q_;
};

/// Componentwise Galois conjugate of the cluster vectors.
std::vector<PhysVector> conjugate_cluster(const Cluster& cluster);

}  // namespace mcms
