#include "qfsplit/frobenius.hpp"

#include "qfsplit/witt.hpp"

#include <limits>
#include <unordered_map>

namespace qfsplit {

Polynomial FrobCoordinates::component(const Monomial& alpha) const {
  auto it = comps_.find(alpha);
  return it == comps_.end() ? Polynomial(ring_) : it->second;
}

void FrobCoordinates::add(const Monomial& alpha, const Polynomial& h) {
  if (h.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(alpha, h);
  if (!inserted) {
    it->second += h;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

FrobCoordinates FrobCoordinates::times(const Polynomial& s) const {
  FrobCoordinates out(ring_);
  if (s.is_zero()) return out;
  for (const auto& [alpha, h] : comps_) out.comps_.emplace(alpha, h * s);
  return out;
}

FrobCoordinates& FrobCoordinates::operator+=(const FrobCoordinates& other) {
  for (const auto& [alpha, h] : other.comps_) add(alpha, h);
  return *this;
}

FrobCoordinates& FrobCoordinates::operator-=(const FrobCoordinates& other) {
  for (const auto& [alpha, h] : other.comps_) add(alpha, -h);
  return *this;
}

bool FrobCoordinates::operator==(const FrobCoordinates& other) const {
  if (comps_.size() != other.comps_.size()) return false;
  auto a = comps_.begin();
  auto b = other.comps_.begin();
  for (; a != comps_.end(); ++a, ++b) {
    if (!(a->first == b->first) || !(a->second == b->second)) return false;
  }
  return true;
}

Monomial top_residue(const Ring& ring) {
  return uniform_monomial(ring.nvars(), static_cast<Monomial::Exponent>(ring.characteristic() - 1));
}

FrobCoordinates frobenius_decompose(const Polynomial& h) {
  const Ring& ring = h.ring();
  const auto p = static_cast<Monomial::Exponent>(ring.characteristic());
  const std::size_t n = ring.nvars();
  std::map<Monomial, std::vector<Term>, ResidueLess> parts;
  for (const Term& t : h.terms()) {
    Monomial alpha(n);
    Monomial q(n);
    for (std::size_t i = 0; i < n; ++i) {
      alpha.set(i, t.mono[i] % p);
      q.set(i, t.mono[i] / p);
    }
    // Over F_p the p-th root of a coefficient is the coefficient itself.
    parts[alpha].push_back({std::move(q), t.coeff});
  }
  FrobCoordinates out(h.ring_ptr());
  for (auto& [alpha, terms] : parts) {
    // x^(p q) order matches x^q order, and within one residue class the
    // grevlex order of p q + alpha matches that of q.
    out.add(alpha, Polynomial::from_sorted_terms(h.ring_ptr(), std::move(terms)));
  }
  return out;
}

Polynomial reconstruct(const FrobCoordinates& v) {
  Polynomial out(v.ring_ptr());
  for (const auto& [alpha, h] : v.components()) {
    out += frobenius_power(h).times_term(alpha, 1);
  }
  return out;
}

Polynomial u_map(const Polynomial& h) {
  const Ring& ring = h.ring();
  const auto p = static_cast<Monomial::Exponent>(ring.characteristic());
  const std::size_t n = ring.nvars();
  std::vector<Term> terms;
  for (const Term& t : h.terms()) {
    bool hit = true;
    for (std::size_t i = 0; i < n && hit; ++i) hit = t.mono[i] % p == p - 1;
    if (!hit) continue;
    Monomial q(n);
    for (std::size_t i = 0; i < n; ++i) q.set(i, t.mono[i] / p);
    terms.push_back({std::move(q), t.coeff});
  }
  return Polynomial::from_sorted_terms(h.ring_ptr(), std::move(terms));
}

Polynomial iterated_u(const Polynomial& h, unsigned r) {
  if (r == 0) throw std::invalid_argument("iterated_u needs r >= 1");
  Polynomial out = u_map(h);
  for (unsigned i = 1; i < r; ++i) out = u_map(out);
  return out;
}

Polynomial u_of_product(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_ptr(), b.ring_ptr())) throw std::invalid_argument("ring mismatch");
  const Ring& ring = a.ring();
  const PrimeField& field = ring.field;
  const auto p = static_cast<Monomial::Exponent>(ring.characteristic());
  const std::size_t n = ring.nvars();
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ptr());
  // Bucket b by residue so that each term of a meets only the matching class.
  std::map<Monomial, std::vector<const Term*>, ResidueLess> by_residue;
  for (const Term& t : b.terms()) {
    Monomial alpha(n);
    for (std::size_t i = 0; i < n; ++i) alpha.set(i, t.mono[i] % p);
    by_residue[alpha].push_back(&t);
  }
  std::unordered_map<Monomial, Coeff, MonomialHash> acc;
  Monomial want(n);
  for (const Term& s : a.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      want.set(i, ((p - 1) - s.mono[i] % p + p) % p);
    }
    auto it = by_residue.find(want);
    if (it == by_residue.end()) continue;
    for (const Term* t : it->second) {
      Monomial q(n);
      for (std::size_t i = 0; i < n; ++i) q.set(i, (s.mono[i] + t->mono[i]) / p);
      const Coeff c = field.mul(s.coeff, t->coeff);
      auto [pos, inserted] = acc.try_emplace(std::move(q), c);
      if (!inserted) pos->second = field.add(pos->second, c);
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, c});
  }
  return Polynomial::from_terms(a.ring_ptr(), std::move(terms));
}

Polynomial theta(const Polynomial& a, const Polynomial& delta) { return u_of_product(delta, a); }

ThetaMap::ThetaMap(Polynomial delta)
    : delta_(std::move(delta)), coords_(frobenius_decompose(delta_)), top_(top_residue(delta_.ring())) {}

Polynomial ThetaMap::on_basis(const Monomial& alpha) const {
  Monomial beta(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) beta.set(i, top_[i] - alpha[i]);
  return coords_.component(beta);
}

Polynomial ThetaMap::apply(const FrobCoordinates& v) const {
  Polynomial out(delta_.ring_ptr());
  for (const auto& [alpha, h] : v.components()) {
    const Polynomial t = on_basis(alpha);
    if (!t.is_zero()) out += h * t;
  }
  return out;
}

Ideal bracket_power(const Ideal& ideal, unsigned n) {
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const Polynomial& g : ideal.generators()) gens.push_back(frobenius_power(g, n));
  return Ideal(ideal.ring_ptr(), std::move(gens));
}

std::optional<Term> term_outside_frobenius_power(const Polynomial& a, unsigned n) {
  if (a.is_zero()) return std::nullopt;
  std::int64_t q = 1;
  const std::int64_t p = a.ring().characteristic();
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > std::numeric_limits<Monomial::Exponent>::max()) break;
  }
  for (const Term& t : a.terms()) {
    bool inside = false;
    for (std::size_t i = 0; i < t.mono.size() && !inside; ++i) inside = t.mono[i] >= q;
    if (!inside) return t;
  }
  return std::nullopt;
}

bool in_max_ideal_frobenius_power(const Polynomial& a, unsigned n) {
  return !term_outside_frobenius_power(a, n).has_value();
}

Polynomial psi2_eval(const Polynomial& f1, const Polynomial& f2, const WittInput& elem) {
  if (elem.kind == WittInput::Kind::Verschiebung) return iterated_u(f2 * elem.a, 2);
  Polynomial out = u_of_product(f1, elem.a);
  const Polynomial d = delta1(elem.a);
  if (!d.is_zero()) out += iterated_u(f2 * d, 2);
  return out;
}

}  // namespace qfsplit
