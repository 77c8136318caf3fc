#pragma once

#include "mcms/cluster.hpp"
#include "mcms/group.hpp"

#include <cstdint>
#include <vector>

namespace mcms {

/// Signed permutation j -> perm[j] with signs indexed by the target slot:
/// T_g e_j = signs[perm[j]] * e_{perm[j]}.
struct SignedPermutation {
  std::vector<std::size_t> perm;
  std::vector<int8_t> signs;

  static SignedPermutation identity(std::size_t k);

  std::size_t size() const { return perm.size(); }

  /// (this o other): apply `other` first.
  SignedPermutation compose(const SignedPermutation& other) const;

  /// Action on coordinates: (g x)_{g(j)} = s_{g(j)} x_j.
  template <typename T>
  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> r(x.size());
    for (std::size_t j = 0; j < perm.size(); ++j) r[perm[j]] = signs[perm[j]] < 0 ? T(-x[j]) : x[j];
    return r;
  }

  /// Dense matrix: column j has signs[perm[j]] in row perm[j].
  std::vector<std::vector<int>> matrix() const;

  bool is_bijection() const;
  long trace() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Finds the signed permutation induced by g on the cluster. Throws
/// CheckFailure when T_g e_j matches no +-e_l.
SignedPermutation signed_permutation(const Mat3& g, const Cluster& cluster);

/// Representation of Y on E_k by signed permutations, one per group element.
class RepK {
 public:
  static RepK build(const IcosaGroup& group, const Cluster& cluster);

  std::size_t k() const { return k_; }
  const SignedPermutation& operator[](std::size_t g) const { return maps_[g]; }
  const std::vector<SignedPermutation>& maps() const { return maps_; }

  /// Traces on the class representatives (e, a, b, ab, a^2).
  Character character(const IcosaGroup& group) const;

  /// Number of (g, h) pairs with rep(gh) != rep(g) o rep(h); 0 for a homomorphism.
  std::size_t homomorphism_defects(const IcosaGroup& group) const;

 private:
  std::size_t k_ = 0;
  std::vector<SignedPermutation> maps_;
};

}  // namespace mcms
