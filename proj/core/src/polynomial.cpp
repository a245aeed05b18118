#include "qfsplit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qfsplit {
namespace {

bool term_greater(const Term& a, const Term& b) {
  return grevlex_compare(a.mono, b.mono) > 0;
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw std::invalid_argument("polynomial ring mismatch");
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Merge of two canonical term lists: a + sign * b.
std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, bool subtract,
                              const PrimeField& field) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = grevlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      Term t = b[j++];
      if (subtract) t.coeff = field.neg(t.coeff);
      out.push_back(std::move(t));
    } else {
      const Coeff v = subtract ? field.sub(a[i].coeff, b[j].coeff)
                               : field.add(a[i].coeff, b[j].coeff);
      if (v != 0) out.push_back({a[i].mono, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    Term t = b[j];
    if (subtract) t.coeff = field.neg(t.coeff);
    out.push_back(std::move(t));
  }
  return out;
}

bool within_cap(const Monomial& m, const Monomial& cap) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > cap[i]) return false;
  }
  return true;
}

Polynomial product_impl(const Polynomial& a, const Polynomial& b, const Monomial* cap) {
  require_same_ring(a.ring_ptr(), b.ring_ptr());
  const PrimeField& field = a.field();
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ptr());
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1 && cap == nullptr) {
    return large.times_term(small.leading_term().mono, small.leading_term().coeff);
  }
  std::unordered_map<Monomial, Coeff, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(small.size() * large.size(), 1u << 20));
  for (const Term& s : small.terms()) {
    for (const Term& l : large.terms()) {
      Monomial m = s.mono * l.mono;
      if (cap != nullptr && !within_cap(m, *cap)) continue;
      const Coeff c = field.mul(s.coeff, l.coeff);
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second = field.add(it->second, c);
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, c});
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  return Polynomial::from_sorted_terms(a.ring_ptr(), std::move(terms));
}

}  // namespace

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::uint32_t p, std::vector<std::string> variables) {
  PrimeField field(p);
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (!valid_identifier(v)) throw InputError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw InputError("duplicate variable name '" + v + "'");
  }
  return std::make_shared<const Ring>(Ring{field, std::move(variables)});
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("null ring");
}

Polynomial Polynomial::constant(RingPtr ring, Coeff c) {
  return monomial(ring, Monomial(ring->nvars()), c);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Coeff c) {
  Polynomial p(std::move(ring));
  if (m.size() != p.ring().nvars()) throw std::invalid_argument("monomial arity mismatch");
  c %= p.field().characteristic();
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Monomial m(ring->nvars());
  m.set(index, 1);
  return monomial(std::move(ring), std::move(m), 1);
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  const PrimeField& field = p.field();
  for (auto& t : terms) {
    if (t.mono.size() != p.ring().nvars()) throw std::invalid_argument("monomial arity mismatch");
    t.coeff %= field.characteristic();
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

std::int64_t Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.front().mono.degree();
}

Monomial Polynomial::max_exponents() const {
  Monomial m(ring_->nvars());
  for (const Term& t : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (t.mono[i] > m[i]) m.set(i, t.mono[i]);
    }
  }
  return m;
}

Coeff Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return grevlex_compare(t.mono, key) > 0;
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(ring_, other.ring_);
  terms_ = merge_terms(terms_, other.terms_, false, field());
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(ring_, other.ring_);
  terms_ = merge_terms(terms_, other.terms_, true, field());
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = product_impl(*this, other, nullptr);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return product_impl(a, b, nullptr); }

Polynomial Polynomial::scaled(Coeff c) const {
  c %= field().characteristic();
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, Coeff c) const {
  c %= field().characteristic();
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grevlex order.
  for (const Term& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
  return r;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (!same_ring(ring_, other.ring_) || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != other.terms_[i].coeff || !(terms_[i].mono == other.terms_[i].mono)) {
      return false;
    }
  }
  return true;
}

std::string monomial_to_string(const Monomial& m, const Ring& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables[i];
    if (m[i] != 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.mono.is_one()) {
      out += std::to_string(t.coeff);
    } else {
      if (t.coeff != 1) out += std::to_string(t.coeff) + '*';
      out += monomial_to_string(t.mono, *ring_);
    }
  }
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) { return product_impl(a, b, nullptr); }

Polynomial capped_multiply(const Polynomial& a, const Polynomial& b, const Monomial& cap) {
  if (cap.size() != a.ring().nvars()) throw std::invalid_argument("cap arity mismatch");
  return product_impl(a, b, &cap);
}

Polynomial box_filter(const Polynomial& a, const Monomial& floor, const Monomial& cap) {
  std::vector<Term> kept;
  for (const Term& t : a.terms()) {
    bool ok = true;
    for (std::size_t i = 0; i < t.mono.size() && ok; ++i) {
      ok = t.mono[i] >= floor[i] && t.mono[i] <= cap[i];
    }
    if (ok) kept.push_back(t);
  }
  return Polynomial::from_sorted_terms(a.ring_ptr(), std::move(kept));
}

Polynomial frobenius_power(const Polynomial& a, unsigned k) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= a.field().characteristic();
    if (q > static_cast<std::uint64_t>(std::numeric_limits<Monomial::Exponent>::max())) {
      throw std::overflow_error("Frobenius power exponent overflow");
    }
  }
  std::vector<Term> terms;
  terms.reserve(a.size());
  // Scaling all exponents by q preserves grevlex order.
  for (const Term& t : a.terms()) terms.push_back({t.mono.pow(q), t.coeff});
  return Polynomial::from_sorted_terms(a.ring_ptr(), std::move(terms));
}

Polynomial power(const Polynomial& a, std::uint64_t e) {
  const Monomial maxe = a.max_exponents();
  for (std::size_t i = 0; i < maxe.size(); ++i) {
    if (maxe[i] != 0 &&
        e > static_cast<std::uint64_t>(std::numeric_limits<Monomial::Exponent>::max()) / maxe[i]) {
      throw std::overflow_error("predicted degree of power exceeds exponent range");
    }
  }
  const std::uint32_t p = a.field().characteristic();
  Polynomial result = Polynomial::constant(a.ring_ptr(), 1);
  if (e == 0) return result;
  // a^e = prod_i (a^{d_i})^{p^i} over the base-p digits d_i of e.
  unsigned k = 0;
  while (e != 0) {
    const std::uint64_t digit = e % p;
    if (digit != 0) {
      Polynomial part = Polynomial::constant(a.ring_ptr(), 1);
      Polynomial base = a;
      std::uint64_t d = digit;
      while (d != 0) {
        if (d & 1) part = part * base;
        d >>= 1;
        if (d != 0) base = base * base;
      }
      result = result * frobenius_power(part, k);
    }
    e /= p;
    ++k;
  }
  return result;
}

Polynomial capped_power(const Polynomial& a, std::uint64_t e, const Monomial& cap) {
  Polynomial result = Polynomial::constant(a.ring_ptr(), 1);
  Polynomial base = box_filter(a, Monomial(cap.size()), cap);
  while (e != 0) {
    if (e & 1) result = capped_multiply(result, base, cap);
    e >>= 1;
    if (e != 0) base = capped_multiply(base, base, cap);
  }
  return result;
}

Coeff coefficient_of(const Polynomial& a, const Monomial& m) { return a.coefficient(m); }

Polynomial derivative(const Polynomial& a, std::size_t index) {
  if (index >= a.ring().nvars()) throw std::invalid_argument("derivative variable out of range");
  const PrimeField& field = a.field();
  std::vector<Term> terms;
  for (const Term& t : a.terms()) {
    const auto e = t.mono[index];
    if (e == 0) continue;
    const Coeff c = field.mul(t.coeff, field.from_int(e));
    if (c == 0) continue;
    Monomial m = t.mono;
    m.set(index, e - 1);
    terms.push_back({std::move(m), c});
  }
  return Polynomial::from_terms(a.ring_ptr(), std::move(terms));
}

Coeff evaluate(const Polynomial& a, std::span<const Coeff> point) {
  if (point.size() != a.ring().nvars()) throw std::invalid_argument("point arity mismatch");
  const PrimeField& field = a.field();
  Coeff acc = 0;
  for (const Term& t : a.terms()) {
    Coeff v = t.coeff;
    for (std::size_t i = 0; i < point.size() && v != 0; ++i) {
      if (t.mono[i] != 0) v = field.mul(v, field.pow(point[i], static_cast<std::uint64_t>(t.mono[i])));
    }
    acc = field.add(acc, v);
  }
  return acc;
}

Polynomial substitute(const Polynomial& a, std::span<const std::size_t> indices, std::span<const Coeff> values) {
  if (indices.size() != values.size()) throw std::invalid_argument("substitution arity mismatch");
  const PrimeField& field = a.field();
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const Term& t : a.terms()) {
    Coeff v = t.coeff;
    Monomial m = t.mono;
    for (std::size_t k = 0; k < indices.size() && v != 0; ++k) {
      const auto e = m[indices[k]];
      if (e == 0) continue;
      v = field.mul(v, field.pow(values[k], static_cast<std::uint64_t>(e)));
      m.set(indices[k], 0);
    }
    if (v != 0) terms.push_back({std::move(m), v});
  }
  return Polynomial::from_terms(a.ring_ptr(), std::move(terms));
}

Monomial uniform_monomial(std::size_t nvars, Monomial::Exponent e) {
  Monomial m(nvars);
  for (std::size_t i = 0; i < nvars; ++i) m.set(i, e);
  return m;
}

Grading::Grading(std::vector<std::vector<std::int64_t>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InputError("grading needs at least one row");
  const std::size_t n = rows_.front().size();
  for (const auto& r : rows_) {
    if (r.size() != n) throw InputError("grading rows have different lengths");
    for (auto w : r) {
      if (w < 0) throw InputError("grading weights must be nonnegative");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool nonzero = false;
    for (const auto& r : rows_) nonzero = nonzero || r[i] != 0;
    if (!nonzero) throw InputError("grading column " + std::to_string(i) + " is zero");
  }
}

Grading Grading::standard(std::size_t nvars) {
  return Grading({std::vector<std::int64_t>(nvars, 1)});
}

std::vector<std::int64_t> Grading::degree(const Monomial& m) const {
  std::vector<std::int64_t> d(rows_.size(), 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t i = 0; i < m.size(); ++i) d[r] += rows_[r][i] * m[i];
  }
  return d;
}

std::vector<std::int64_t> Grading::variable_degree_sum() const {
  std::vector<std::int64_t> d(rows_.size(), 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (auto w : rows_[r]) d[r] += w;
  }
  return d;
}

Homogeneity check_homogeneous(const Polynomial& a, const Grading& g) {
  Homogeneity h;
  if (g.nvars() != a.ring().nvars()) throw InputError("grading arity does not match the ring");
  if (a.is_zero()) return h;
  h.degree = g.degree(a.leading_term().mono);
  for (const Term& t : a.terms()) {
    if (g.degree(t.mono) != h.degree) {
      h.homogeneous = false;
      h.offending = std::make_pair(a.leading_term().mono, t.mono);
      break;
    }
  }
  return h;
}

}  // namespace qfsplit
