#pragma once

#include "mcms/linalg.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mcms {

/// Rotation T_a of the three-dimensional representation Gamma_2.
Mat3 generator_a();
/// Rotation T_b = diag(-1, -1, 1).
Mat3 generator_b();

struct GroupElement {
  Mat3 matrix;
  std::string word;  // shortest word over {a, b}; "e" for the identity
};

/// Conjugacy classes are stored in the column order of the character table.
enum class ClassLabel : std::size_t { e = 0, a = 1, b = 2, ab = 3, a2 = 4 };

struct ConjugacyClass {
  std::string name;
  std::size_t representative = 0;
  std::vector<std::size_t> members;
};

/// The icosahedral rotation group Y = 235 generated by T_a and T_b.
class IcosaGroup {
 public:
  /// Closure of {T_a, T_b}; throws InternalError if the closure is not 60 elements.
  static IcosaGroup build();

  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }
  const std::array<ConjugacyClass, 5>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }

  std::size_t identity() const { return 0; }
  std::size_t gen_a() const { return gen_a_; }
  std::size_t gen_b() const { return gen_b_; }

  /// Index of g*h.
  std::size_t product(std::size_t g, std::size_t h) const { return table_[g * order() + h]; }
  std::size_t inverse(std::size_t g) const { return inverse_[g]; }

  /// Index of a matrix, or order() if it is not an element.
  std::size_t find(const Mat3& m) const;

 private:
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> class_of_;
  std::array<ConjugacyClass, 5> classes_;
  std::size_t gen_a_ = 0;
  std::size_t gen_b_ = 0;
};

using Character = std::array<GoldenNumber, 5>;

/// Character table of Y: rows Gamma_1..Gamma_5, columns e, a, b, ab, a^2.
struct CharacterTable {
  std::array<Character, 5> rows;
  std::array<int, 5> class_sizes{1, 12, 15, 20, 12};
  std::array<int, 5> dims{1, 3, 3, 4, 5};

  static const CharacterTable& get();

  /// (1/60) sum_c size_c chi_c psi_c, exact.
  GoldenNumber inner(const Character& chi, const Character& psi) const;
};

/// Multiplicities m_1..m_5 of the irreducibles in chi. Throws CheckFailure
/// when a multiplicity is not a non-negative integer.
std::array<long, 5> decompose_character(const Character& chi);

}  // namespace mcms
