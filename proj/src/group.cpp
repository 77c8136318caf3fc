#include "mcms/group.hpp"

#include "mcms/errors.hpp"

#include <deque>
#include <map>

namespace mcms {

namespace {

GoldenNumber half(const GoldenNumber& x) { return x * Rational(1, 2); }

}  // namespace

Mat3 generator_a() {
  const GoldenNumber t = GoldenNumber::tau();
  const GoldenNumber one = 1;
  Mat3 r;
  r.m = {{{half(t - one), half(-t), half(one)},
          {half(t), half(one), half(t - one)},
          {half(-one), half(t - one), half(t)}}};
  return r;
}

Mat3 generator_b() {
  Mat3 r;
  r.m[0][0] = -1;
  r.m[1][1] = -1;
  r.m[2][2] = 1;
  return r;
}

IcosaGroup IcosaGroup::build() {
  IcosaGroup g;
  auto less = [](const Mat3& x, const Mat3& y) { return structural_less(x, y); };
  std::map<Mat3, std::size_t, decltype(less)> index(less);

  const Mat3 gens[2] = {generator_a(), generator_b()};
  const char names[2] = {'a', 'b'};
  g.elements_.push_back({Mat3::identity(), "e"});
  index.emplace(Mat3::identity(), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (int s = 0; s < 2; ++s) {
      Mat3 next = g.elements_[cur].matrix * gens[s];
      if (index.count(next)) continue;
      std::string word = cur == 0 ? std::string(1, names[s]) : g.elements_[cur].word + names[s];
      index.emplace(next, g.elements_.size());
      queue.push_back(g.elements_.size());
      g.elements_.push_back({next, word});
      if (g.elements_.size() > 60) throw InternalError("group closure exceeded 60 elements");
    }
  }
  if (g.elements_.size() != 60) throw InternalError("group closure is not 60 elements");

  const std::size_t n = g.elements_.size();
  auto lookup = [&](const Mat3& m) {
    auto it = index.find(m);
    if (it == index.end()) throw InternalError("group not closed under multiplication");
    return it->second;
  };
  g.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.table_[i * n + j] = lookup(g.elements_[i].matrix * g.elements_[j].matrix);
  g.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.inverse_[i] = lookup(g.elements_[i].matrix.transpose());
  g.gen_a_ = lookup(gens[0]);
  g.gen_b_ = lookup(gens[1]);

  // Brute-force conjugacy classes.
  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::size_t>> raw;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t c = g.product(g.product(y, x), g.inverse_[y]);
      if (cls[c] == n) {
        cls[c] = raw.size();
        members.push_back(c);
      }
    }
    raw.push_back(std::move(members));
  }
  if (raw.size() != 5) throw InternalError("expected 5 conjugacy classes");

  const std::size_t reps[5] = {0, g.gen_a_, g.gen_b_, g.product(g.gen_a_, g.gen_b_), g.product(g.gen_a_, g.gen_a_)};
  const char* labels[5] = {"e", "a", "b", "ab", "a2"};
  g.class_of_.assign(n, 0);
  for (std::size_t col = 0; col < 5; ++col) {
    const auto& members = raw[cls[reps[col]]];
    g.classes_[col] = {labels[col], reps[col], members};
    for (auto m : members) g.class_of_[m] = col;
  }
  std::size_t total = 0;
  for (const auto& c : g.classes_) total += c.members.size();
  if (total != n) throw InternalError("class representatives are not in distinct classes");
  return g;
}

std::size_t IcosaGroup::find(const Mat3& m) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].matrix == m) return i;
  return elements_.size();
}

const CharacterTable& CharacterTable::get() {
  static const CharacterTable table = [] {
    const GoldenNumber t = GoldenNumber::tau();
    const GoldenNumber tc = t.conjugate();
    CharacterTable ct;
    ct.rows = {{{1, 1, 1, 1, 1},
                {3, t, -1, 0, tc},
                {3, tc, -1, 0, t},
                {4, -1, 0, 1, -1},
                {5, 0, 1, -1, 0}}};
    return ct;
  }();
  return table;
}

GoldenNumber CharacterTable::inner(const Character& chi, const Character& psi) const {
  GoldenNumber s;
  for (std::size_t c = 0; c < 5; ++c) s += chi[c] * psi[c] * GoldenNumber(class_sizes[c]);
  return s * Rational(1, 60);
}

std::array<long, 5> decompose_character(const Character& chi) {
  const auto& table = CharacterTable::get();
  std::array<long, 5> mult{};
  for (std::size_t j = 0; j < 5; ++j) {
    GoldenNumber m = table.inner(chi, table.rows[j]);
    if (!m.is_rational() || !m.rat().is_integer() || m.sign() < 0)
      throw CheckFailure("multiplicity of Gamma_" + std::to_string(j + 1) + " is " + m.str() +
                         ", not a non-negative integer");
    mult[j] = m.rat().numerator().get_si();
  }
  return mult;
}

}  // namespace mcms
