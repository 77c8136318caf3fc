#include "mcms/superspace.hpp"

#include <stdexcept>

#include "mcms/errors.hpp"

namespace mcms {

std::vector<PhysVector> conjugate_cluster(const Cluster& cluster) {
  std::vector<PhysVector> r;
  r.reserve(cluster.k());
  for (const auto& e : cluster.half()) r.push_back(e.conjugate());
  return r;
}

namespace {

GnMatrix scaled_gram(const std::vector<PhysVector>& v, const GoldenNumber& inv_scale) {
  const std::size_t k = v.size();
  GnMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      m(i, j) = dot(v[i], v[j]) * inv_scale;
      m(j, i) = m(i, j);
    }
  return m;
}

// M_g P == P M_g for the signed permutation matrix M_g.
bool commutes(const SignedPermutation& g, const GnMatrix& p) {
  const std::size_t k = g.size();
  std::vector<std::size_t> inv(k);
  for (std::size_t j = 0; j < k; ++j) inv[g.perm[j]] = j;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      GoldenNumber lhs = p(inv[a], b);
      if (g.signs[a] < 0) lhs = -lhs;
      GoldenNumber rhs = p(a, g.perm[b]);
      if (g.signs[g.perm[b]] < 0) rhs = -rhs;
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace

SuperspaceData SuperspaceData::build_unchecked(const IcosaGroup& group, const Cluster& cluster) {
  if (cluster.k() == 0) throw ConfigError("empty cluster");
  SuperspaceData d;
  d.cluster_ = cluster;
  d.rep_ = RepK::build(group, cluster);
  d.conj_ = conjugate_cluster(cluster);
  for (const auto& e : cluster.half()) d.kappa_sq_ += e[0] * e[0];
  if (d.kappa_sq_.sign() <= 0) throw ConfigError("cluster has no vector with a nonzero first coordinate");
  d.kappa_sq_conj_ = d.kappa_sq_.conjugate();

  const std::size_t k = cluster.k();
  d.pi_ = {scaled_gram(cluster.half(), *d.kappa_sq_.inverse()), 3};
  d.pi_prime_ = {scaled_gram(d.conj_, *d.kappa_sq_conj_.inverse()), 3};
  d.pi_second_ = {GnMatrix::identity(k) - d.pi_.entries - d.pi_prime_.entries, k >= 6 ? k - 6 : 0};
  d.pi_second_q_.assign(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) d.pi_second_q_[i][j] = d.pi_second_.entries(i, j).rat();
  return d;
}

SuperspaceData SuperspaceData::build(const IcosaGroup& group, const Cluster& cluster) {
  SuperspaceData d = build_unchecked(group, cluster);
  for (const auto& c : d.run_checks(group))
    if (!c.ok) throw CheckFailure("superspace identity failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  return d;
}

std::vector<CheckResult> SuperspaceData::run_checks(const IcosaGroup& group) const {
  std::vector<CheckResult> out;
  const std::size_t k = this->k();
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  // sum_l e_la e_lb = delta_ab kappa^2 (orthonormal basis of E after scaling)
  {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < 3 && ok; ++a)
      for (int b = 0; b < 3 && ok; ++b) {
        GoldenNumber s;
        for (const auto& e : cluster_.half()) s += e[a] * e[b];
        GoldenNumber want = a == b ? kappa_sq_ : GoldenNumber(0);
        if (s != want) {
          ok = false;
          detail = "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + s.str();
        }
      }
    add("coordinate_gram_scalar", ok, detail);
  }

  const auto& p = pi_.entries;
  const auto& pp = pi_prime_.entries;
  const auto& ps = pi_second_.entries;
  GnMatrix p2 = p * p;
  GnMatrix pp2 = pp * pp;
  add("pi_symmetric", p.is_symmetric());
  add("pi_idempotent", p2 == p);
  add("pi_trace_3", p.trace() == GoldenNumber(3), "trace = " + p.trace().str());
  add("pi_prime_symmetric", pp.is_symmetric());
  add("pi_prime_idempotent", pp2 == pp);
  add("pi_prime_trace_3", pp.trace() == GoldenNumber(3), "trace = " + pp.trace().str());
  add("pi_pi_prime_zero", (p * pp).is_zero());
  add("pi_prime_pi_zero", (pp * p).is_zero());
  {
    bool rational = true;
    GnMatrix sum = p + pp;
    for (std::size_t i = 0; i < k && rational; ++i)
      for (std::size_t j = 0; j < k && rational; ++j) rational = sum(i, j).is_rational();
    add("pi_plus_pi_prime_rational", rational);
  }
  add("pi_second_idempotent", ps * ps == ps);
  add("pi_second_trace", ps.trace() == GoldenNumber(static_cast<long>(pi_second_.rank_expected)),
      "trace = " + ps.trace().str());

  {
    bool ok_pi = true, ok_pp = true;
    for (const auto& g : rep_.maps()) {
      ok_pi = ok_pi && commutes(g, p);
      ok_pp = ok_pp && commutes(g, pp);
    }
    add("equivariance_pi", ok_pi);
    add("equivariance_pi_prime", ok_pp);
  }

  // sum_i <u, e_i> e'_i = 0 for the unit vectors u
  {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < 3; ++a) {
      PhysVector s;
      for (std::size_t i = 0; i < k; ++i) s += cluster_[i][a] * conj_[i];
      if (!s.is_zero()) {
        ok = false;
        detail = "u = unit " + std::to_string(a) + " gives " + s.str();
      }
    }
    add("schur_zero", ok, detail);
  }

  // T'_g e'_j = s e'_{g(j)} with the same signed permutation as for e_j
  {
    bool ok = true;
    for (std::size_t g = 0; g < group.order() && ok; ++g) {
      Mat3 tc = group.element(g).matrix.conjugate();
      const auto& sp = rep_[g];
      for (std::size_t j = 0; j < k && ok; ++j) {
        PhysVector want = conj_[sp.perm[j]];
        if (sp.signs[sp.perm[j]] < 0) want = -want;
        ok = tc * conj_[j] == want;
      }
    }
    add("conjugate_cluster_invariance", ok);
  }

  {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      std::vector<long> n(k, 0);
      n[i] = 1;
      ok = physical_embed(n) == cluster_[i] && conjugate_embed(n) == conj_[i];
    }
    add("embed_basis_vectors", ok);
  }
  return out;
}

PhysVector SuperspaceData::physical_embed(std::span<const long> n) const {
  if (n.size() != k()) throw std::invalid_argument("lattice point has wrong length");
  PhysVector r;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    r += GoldenNumber(n[i]) * cluster_[i];
  }
  return r;
}

PhysVector SuperspaceData::physical_embed(std::span<const GoldenNumber> y) const {
  if (y.size() != k()) throw std::invalid_argument("coordinate vector has wrong length");
  PhysVector r;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!y[i].is_zero()) r += y[i] * cluster_[i];
  return r;
}

std::vector<Rational> SuperspaceData::second_projection(std::span<const long> n) const {
  if (n.size() != k()) throw std::invalid_argument("lattice point has wrong length");
  std::vector<Rational> out(k());
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = 0; j < k(); ++j)
      if (n[j] != 0 && !pi_second_q_[i][j].is_zero()) out[i] += pi_second_q_[i][j] * Rational(n[j]);
  return out;
}

std::vector<Rational> SuperspaceData::lift(std::span<const long> n) const {
  std::vector<Rational> out = second_projection(n);
  for (std::size_t i = 0; i < k(); ++i) out[i] = Rational(n[i]) - out[i];
  return out;
}

PhysVector SuperspaceData::conjugate_embed(std::span<const long> n) const {
  if (n.size() != k()) throw std::invalid_argument("lattice point has wrong length");
  PhysVector r;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    r += GoldenNumber(n[i]) * conj_[i];
  }
  return r;
}

PhysVector SuperspaceData::conjugate_embed(std::span<const GoldenNumber> y) const {
  if (y.size() != k()) throw std::invalid_argument("coordinate vector has wrong length");
  PhysVector r;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!y[i].is_zero()) r += y[i] * conj_[i];
  return r;
}

}  // namespace mcms
