#include "qfsplit/groebner.hpp"

#include "gb_engine.hpp"

#include <algorithm>

namespace qfsplit {
namespace detail {

TermVec to_ordered(const Polynomial& a, const MonomialOrder& order) {
  TermVec out(a.terms().begin(), a.terms().end());
  if (order.kind() != MonomialOrder::Kind::Grevlex) {
    std::sort(out.begin(), out.end(),
              [&](const Term& x, const Term& y) { return order.compare(x.mono, y.mono) > 0; });
  }
  return out;
}

Polynomial from_ordered(const RingPtr& ring, TermVec terms, const MonomialOrder& order) {
  if (order.kind() == MonomialOrder::Kind::Grevlex) {
    return Polynomial::from_sorted_terms(ring, std::move(terms));
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

void merge_sub(const TermVec& a, std::size_t a_from, Coeff c, const Monomial& q, const TermVec& g,
               std::size_t g_from, const PrimeField& field, const MonomialOrder& order, TermVec& out) {
  out.clear();
  out.reserve(a.size() - a_from + g.size() - g_from);
  std::size_t i = a_from;
  std::size_t j = g_from;
  const Coeff negc = field.neg(c);
  bool have_next = j < g.size();
  Monomial next = have_next ? g[j].mono * q : Monomial();
  while (i < a.size() && have_next) {
    const int cmp = order.compare(a[i].mono, next);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(next), field.mul(negc, g[j].coeff)});
      ++j;
      have_next = j < g.size();
      if (have_next) next = g[j].mono * q;
    } else {
      const Coeff v = field.sub(a[i].coeff, field.mul(c, g[j].coeff));
      if (v != 0) out.push_back({a[i].mono, v});
      ++i;
      ++j;
      have_next = j < g.size();
      if (have_next) next = g[j].mono * q;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  if (have_next) {
    out.push_back({std::move(next), field.mul(negc, g[j].coeff)});
    for (++j; j < g.size(); ++j) out.push_back({g[j].mono * q, field.mul(negc, g[j].coeff)});
  }
}

void check_postcondition(const std::vector<TermVec>& basis, const RingPtr& ring,
                         const MonomialOrder& order) {
  detail::GbEngine<detail::NoPayload> eng(ring, order, GbOptions{~std::uint64_t{0}, false});
  // Load the basis verbatim, no interreduction.
  for (const TermVec& g : basis) eng.elements().push_back({g, {}, g.front().mono.support_mask(), false});
  const PrimeField& field = ring->field;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Monomial& li = basis[i].front().mono;
      const Monomial& lj = basis[j].front().mono;
      const Monomial l = lcm(li, lj);
      const Monomial qi = l.quotient(li);
      const Monomial qj = l.quotient(lj);
      TermVec left;
      for (std::size_t k = 1; k < basis[i].size(); ++k) left.push_back({basis[i][k].mono * qi, basis[i][k].coeff});
      TermVec s;
      detail::merge_sub(left, 0, 1, qj, basis[j], 1, field, order, s);
      detail::NoPayload none;
      eng.reduce(s, none);
      if (!s.empty()) throw std::logic_error("Groebner postcondition violated: S-polynomial does not reduce to zero");
    }
  }
}

}  // namespace detail

namespace {

using detail::TermVec;

}  // namespace

GbOptions& gb_process_defaults() {
  static GbOptions options;
  return options;
}

GbOptions& gb_defaults() {
  thread_local GbOptions options = gb_process_defaults();
  return options;
}

GbStats& gb_stats() {
  thread_local GbStats stats;
  return stats;
}

GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> generators,
                         MonomialOrder order, const GbOptions& options) {
  std::vector<TermVec> inputs;
  for (const Polynomial& g : generators) {
    if (!same_ring(ring, g.ring_ptr())) throw std::invalid_argument("generator ring mismatch");
    if (!g.is_zero()) inputs.push_back(detail::to_ordered(g, order));
  }
  std::stable_sort(inputs.begin(), inputs.end(), [&](const TermVec& a, const TermVec& b) {
    if (a.front().mono.degree() != b.front().mono.degree()) {
      return a.front().mono.degree() < b.front().mono.degree();
    }
    return order.compare(a.front().mono, b.front().mono) < 0;
  });
  detail::GbEngine<detail::NoPayload> eng(ring, order, options);
  for (TermVec& t : inputs) eng.add(std::move(t), {});
  eng.run();
  std::vector<TermVec> basis = eng.reduced_basis();
  if (options.verify_postcondition) detail::check_postcondition(basis, ring, order);
  ++gb_stats().bases;
  GroebnerBasis gb{ring, order, {}};
  for (TermVec& t : basis) gb.elements.push_back(detail::from_ordered(ring, std::move(t), order));
  return gb;
}

Term leading_term(const Polynomial& a, const MonomialOrder& order) {
  if (a.is_zero()) throw std::invalid_argument("leading term of zero");
  if (order.kind() == MonomialOrder::Kind::Grevlex) return a.leading_term();
  const Term* best = &a.terms().front();
  for (const Term& t : a.terms()) {
    if (order.compare(t.mono, best->mono) > 0) best = &t;
  }
  return *best;
}

Polynomial normal_form(const Polynomial& a, const GroebnerBasis& gb) {
  if (!same_ring(a.ring_ptr(), gb.ring)) throw std::invalid_argument("normal_form ring mismatch");
  detail::GbEngine<detail::NoPayload> eng(gb.ring, gb.order, GbOptions{~std::uint64_t{0}, false});
  for (const Polynomial& g : gb.elements) {
    TermVec t = detail::to_ordered(g, gb.order);
    const std::uint64_t mask = t.front().mono.support_mask();
    eng.elements().push_back({std::move(t), {}, mask, false});
  }
  TermVec f = detail::to_ordered(a, gb.order);
  detail::NoPayload none;
  eng.reduce(f, none);
  return detail::from_ordered(a.ring_ptr(), std::move(f), gb.order);
}

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (Polynomial& g : generators) {
    if (!same_ring(ring_, g.ring_ptr())) throw std::invalid_argument("generator ring mismatch");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

const GroebnerBasis& Ideal::groebner() const {
  if (!gb_) gb_ = std::make_shared<const GroebnerBasis>(buchberger(ring_, generators_));
  return *gb_;
}

bool Ideal::contains(const Polynomial& a) const {
  if (a.is_zero()) return true;
  if (generators_.empty()) return false;
  return normal_form(a, groebner()).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::is_unit() const {
  const auto& els = groebner().elements;
  return els.size() == 1 && els.front().is_constant();
}

Ideal Ideal::reduced() const {
  Ideal out(ring_, groebner().elements);
  out.gb_ = gb_;
  return out;
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring_ptr(), std::move(gens));
}

Ideal operator*(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> gens;
  for (const Polynomial& x : a.generators()) {
    for (const Polynomial& y : b.generators()) gens.push_back(x * y);
  }
  return Ideal(a.ring_ptr(), std::move(gens));
}

bool ideal_membership(const Polynomial& a, const Ideal& ideal) { return ideal.contains(a); }

bool ideal_equal(const Ideal& a, const Ideal& b) {
  const auto& ga = a.groebner().elements;
  const auto& gb = b.groebner().elements;
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    if (!(ga[i] == gb[i])) return false;
  }
  return true;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const PrimeField& field = a.field();
  const Term& lb = b.leading_term();
  const Coeff inv = field.inv(lb.coeff);
  const MonomialOrder order = MonomialOrder::grevlex();
  TermVec rest(a.terms().begin(), a.terms().end());
  TermVec bterms(b.terms().begin(), b.terms().end());
  TermVec buf;
  std::vector<Term> quotient;
  while (!rest.empty()) {
    const Term& lt = rest.front();
    if (!lb.mono.divides(lt.mono)) throw std::invalid_argument("polynomial division is not exact");
    const Monomial q = lt.mono.quotient(lb.mono);
    const Coeff c = field.mul(lt.coeff, inv);
    quotient.push_back({q, c});
    detail::merge_sub(rest, 1, c, q, bterms, 1, field, order, buf);
    std::swap(rest, buf);
  }
  return Polynomial::from_sorted_terms(a.ring_ptr(), std::move(quotient));
}

namespace {

// Ring with one extra variable appended (name chosen to avoid clashes).
RingPtr extended_ring(const Ring& ring) {
  std::vector<std::string> vars = ring.variables;
  std::string name = "_t";
  while (ring.index_of(name)) name += "_";
  vars.push_back(name);
  return make_ring(ring.characteristic(), std::move(vars));
}

Polynomial embed(const Polynomial& a, const RingPtr& target) {
  std::vector<Term> terms;
  terms.reserve(a.size());
  const std::size_t n = target->nvars();
  for (const Term& t : a.terms()) {
    Monomial m(n);
    for (std::size_t i = 0; i < t.mono.size(); ++i) m.set(i, t.mono[i]);
    terms.push_back({std::move(m), t.coeff});
  }
  // Appending a zero exponent keeps grevlex order.
  return Polynomial::from_sorted_terms(target, std::move(terms));
}

Polynomial restrict_to(const Polynomial& a, const RingPtr& target) {
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const Term& t : a.terms()) {
    terms.push_back({Monomial(t.mono.exponents().first(target->nvars())), t.coeff});
  }
  return Polynomial::from_sorted_terms(target, std::move(terms));
}

}  // namespace

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (a.is_zero() || b.is_zero()) return Ideal(a.ring_ptr());
  const RingPtr ext = extended_ring(a.ring());
  const std::size_t t_index = ext->nvars() - 1;
  const Polynomial t = Polynomial::variable(ext, t_index);
  const Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;
  std::vector<Polynomial> gens;
  for (const Polynomial& g : a.generators()) gens.push_back(t * embed(g, ext));
  for (const Polynomial& g : b.generators()) gens.push_back(one_minus_t * embed(g, ext));
  const GroebnerBasis gb = buchberger(ext, gens, MonomialOrder::eliminate_last(1));
  std::vector<Polynomial> out;
  for (const Polynomial& g : gb.elements) {
    const bool free_of_t = std::all_of(g.terms().begin(), g.terms().end(),
                                       [&](const Term& term) { return term.mono[t_index] == 0; });
    if (free_of_t) out.push_back(restrict_to(g, a.ring_ptr()));
  }
  return Ideal(a.ring_ptr(), std::move(out));
}

Ideal colon_ideal(const Ideal& a, const Polynomial& g) {
  if (g.is_zero()) return Ideal(a.ring_ptr(), {Polynomial::constant(a.ring_ptr(), 1)});
  const Ideal meet = intersect(a, Ideal(a.ring_ptr(), {g}));
  std::vector<Polynomial> gens;
  for (const Polynomial& h : meet.generators()) gens.push_back(divide_exact(h, g));
  return Ideal(a.ring_ptr(), std::move(gens)).reduced();
}

Ideal colon_ideal(const Ideal& a, const Ideal& b) {
  if (b.is_zero()) return Ideal(a.ring_ptr(), {Polynomial::constant(a.ring_ptr(), 1)});
  std::optional<Ideal> acc;
  for (const Polynomial& g : b.generators()) {
    Ideal q = colon_ideal(a, g);
    acc = acc ? intersect(*acc, q).reduced() : q;
  }
  return *acc;
}

namespace {

struct Cofactors {
  std::vector<Polynomial> c;

  Cofactors times_term(Coeff k, const Monomial& m) const {
    Cofactors out;
    out.c.reserve(c.size());
    for (const Polynomial& x : c) out.c.push_back(x.times_term(m, k));
    return out;
  }
  void sub_scaled(Coeff k, const Monomial& m, const Cofactors& other) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!other.c[i].is_zero()) c[i] -= other.c[i].times_term(m, k);
    }
  }
  void scale(Coeff k) {
    for (Polynomial& x : c) x = x.scaled(k);
  }
};

}  // namespace

std::optional<std::vector<Polynomial>> lift(const Polynomial& a, std::span<const Polynomial> tracked,
                                            std::span<const Polynomial> untracked,
                                            const GbOptions& options) {
  const RingPtr& ring = a.ring_ptr();
  const MonomialOrder order = MonomialOrder::grevlex();
  detail::GbEngine<Cofactors> eng(ring, order, options);
  const Cofactors zero{std::vector<Polynomial>(tracked.size(), Polynomial(ring))};
  for (const Polynomial& g : untracked) {
    if (!g.is_zero()) eng.add(detail::to_ordered(g, order), zero);
  }
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    if (tracked[i].is_zero()) continue;
    Cofactors unit = zero;
    unit.c[i] = Polynomial::constant(ring, 1);
    eng.add(detail::to_ordered(tracked[i], order), std::move(unit));
  }
  eng.run();
  if (options.verify_postcondition) detail::check_postcondition(eng.basis_polys(), ring, order);
  TermVec f = detail::to_ordered(a, order);
  Cofactors acc = zero;
  eng.reduce(f, acc);
  if (!f.empty()) return std::nullopt;
  for (Polynomial& x : acc.c) x = -x;
  return acc.c;
}

}  // namespace qfsplit
