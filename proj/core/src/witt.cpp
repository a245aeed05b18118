#include "qfsplit/witt.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace qfsplit {
namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_ptr(), b.ring_ptr())) throw std::invalid_argument("W2 ring mismatch");
}

// sum_{i=1}^{p-1} (1/p) C(p,i) x^i y^{p-i}
Polynomial carry(const Polynomial& x, const Polynomial& y) {
  const PrimeField& field = x.field();
  const std::uint32_t p = field.characteristic();
  Polynomial acc(x.ring_ptr());
  if (x.is_zero() || y.is_zero()) return acc;
  std::vector<Polynomial> xp{Polynomial::constant(x.ring_ptr(), 1)};
  std::vector<Polynomial> yp{Polynomial::constant(x.ring_ptr(), 1)};
  for (std::uint32_t i = 1; i < p; ++i) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }
  for (std::uint32_t i = 1; i < p; ++i) {
    acc += (xp[i] * yp[p - i]).scaled(witt_carry_coefficient(field, i));
  }
  return acc;
}

}  // namespace

W2Element W2Element::lift(const Polynomial& a) { return {a, Polynomial(a.ring_ptr())}; }

W2Element W2Element::shift(const Polynomial& b) { return {Polynomial(b.ring_ptr()), b}; }

Coeff witt_carry_coefficient(const PrimeField& field, std::uint32_t i) {
  const std::uint32_t p = field.characteristic();
  if (i == 0 || i >= p) throw std::invalid_argument("carry index out of range");
  // C(p,i)/p = C(p-1,i-1)/i and C(p-1,i-1) = (-1)^(i-1) mod p.
  const Coeff sign = (i % 2 == 1) ? 1 : field.neg(1);
  return field.mul(sign, field.inv(i % p));
}

W2Element w2_add(const W2Element& x, const W2Element& y) {
  require_same_ring(x.w0, y.w0);
  return {x.w0 + y.w0, x.w1 + y.w1 - carry(x.w0, y.w0)};
}

W2Element w2_neg(const W2Element& x) {
  const std::uint32_t p = x.w0.field().characteristic();
  if (p != 2) return {-x.w0, -x.w1};
  // At p = 2 the ghost relation forces -(a, b) = (a, a^2 + b).
  return {x.w0, x.w1 + x.w0 * x.w0};
}

W2Element w2_sub(const W2Element& x, const W2Element& y) { return w2_add(x, w2_neg(y)); }

W2Element w2_mul(const W2Element& x, const W2Element& y) {
  require_same_ring(x.w0, y.w0);
  const std::uint32_t p = x.w0.field().characteristic();
  return {x.w0 * y.w0, power(x.w0, p) * y.w1 + power(y.w0, p) * x.w1};
}

Polynomial witt_sum_defect(std::span<const Polynomial> parts) {
  if (parts.empty()) throw std::invalid_argument("witt_sum_defect needs a ring");
  const RingPtr& ring = parts.front().ring_ptr();
  const PrimeField& field = ring->field;
  const std::uint32_t p = field.characteristic();

  std::vector<Coeff> kappa(p, 0);
  for (std::uint32_t i = 1; i < p; ++i) kappa[i] = witt_carry_coefficient(field, i);
  std::vector<std::vector<Coeff>> binom(p, std::vector<Coeff>(p, 0));
  for (std::uint32_t j = 0; j < p; ++j) {
    binom[j][0] = 1;
    for (std::uint32_t k = 1; k <= j; ++k) {
      binom[j][k] = field.add(binom[j - 1][k - 1], k <= j - 1 ? binom[j - 1][k] : 0);
    }
  }

  // Running W_2 sum (s0, s1) with cached powers s0^j, 1 <= j <= p-1.
  std::vector<Polynomial> s0pow(p, Polynomial(ring));
  s0pow[0] = Polynomial::constant(ring, 1);
  std::unordered_map<Monomial, Coeff, MonomialHash> s1;
  bool empty_sum = true;

  auto accumulate = [&](const Polynomial& poly, Coeff scale) {
    for (const Term& t : poly.terms()) {
      const Coeff c = field.mul(t.coeff, scale);
      auto [it, inserted] = s1.try_emplace(t.mono, c);
      if (!inserted) it->second = field.add(it->second, c);
    }
  };

  for (const Polynomial& t : parts) {
    if (!same_ring(ring, t.ring_ptr())) throw std::invalid_argument("W2 ring mismatch");
    if (t.is_zero()) continue;
    std::vector<Polynomial> tpow{Polynomial::constant(ring, 1)};
    for (std::uint32_t j = 1; j < p; ++j) tpow.push_back(tpow.back() * t);
    if (!empty_sum) {
      // s1 -= sum_i kappa_i s0^i t^{p-i}
      for (std::uint32_t i = 1; i < p; ++i) {
        if (s0pow[i].is_zero()) continue;
        accumulate(s0pow[i] * tpow[p - i], field.neg(kappa[i]));
      }
    }
    // (s0 + t)^j = sum_k C(j,k) s0^k t^{j-k}, updated from the top down.
    for (std::uint32_t j = p - 1; j >= 1; --j) {
      Polynomial next = tpow[j];
      for (std::uint32_t k = 1; k <= j; ++k) {
        if (s0pow[k].is_zero()) continue;
        const Polynomial& tk = tpow[j - k];
        next += (tk.size() == 1 ? s0pow[k].times_term(tk.leading_term().mono, tk.leading_term().coeff)
                                : s0pow[k] * tk)
                    .scaled(binom[j][k]);
      }
      s0pow[j] = std::move(next);
    }
    empty_sum = false;
  }

  // The fold yields sum (t_i, 0) = (a, s1); the defect is -s1.
  std::vector<Term> terms;
  terms.reserve(s1.size());
  for (auto& [m, c] : s1) {
    if (c != 0) terms.push_back({m, field.neg(c)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

Polynomial delta1(const Polynomial& a) {
  if (a.size() <= 1) return Polynomial(a.ring_ptr());
  std::vector<Polynomial> parts;
  parts.reserve(a.size());
  for (const Term& t : a.terms()) parts.push_back(Polynomial::monomial(a.ring_ptr(), t.mono, t.coeff));
  return witt_sum_defect(parts);
}

Polynomial delta1_grouped(const Polynomial& a, std::size_t leading_vars) {
  if (leading_vars > a.ring().nvars()) throw std::invalid_argument("leading_vars out of range");
  std::map<std::vector<Monomial::Exponent>, std::vector<Term>> groups;
  for (const Term& t : a.terms()) {
    std::vector<Monomial::Exponent> key(t.mono.exponents().begin(),
                                        t.mono.exponents().begin() + static_cast<std::ptrdiff_t>(leading_vars));
    groups[key].push_back(t);
  }
  if (groups.size() <= 1) return Polynomial(a.ring_ptr());
  std::vector<Polynomial> parts;
  parts.reserve(groups.size());
  for (auto& [key, terms] : groups) parts.push_back(Polynomial::from_terms(a.ring_ptr(), std::move(terms)));
  return witt_sum_defect(parts);
}

}  // namespace qfsplit
