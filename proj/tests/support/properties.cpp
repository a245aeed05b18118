#include "properties.hpp"

#include "oracles.hpp"

#include "qfsplit/certificate_json.hpp"
#include "qfsplit/frobenius.hpp"
#include "qfsplit/groebner.hpp"
#include "qfsplit/strata.hpp"
#include "qfsplit/witt.hpp"

#include <random>
#include <sstream>

namespace props {

using namespace qfsplit;

std::string Outcome::summary() const {
  std::ostringstream out;
  out << name << ": " << cases << " cases, " << failures << " failures";
  if (failures) out << " (first: " << first_failure << ")";
  return out.str();
}

namespace {

const std::vector<std::string> kVars{"x", "y", "z", "w", "u", "s"};

RingPtr ring_for(std::uint32_t p, std::size_t n) {
  return make_ring(p, std::vector<std::string>(kVars.begin(), kVars.begin() + n));
}

std::uint32_t pick_prime(std::mt19937_64& rng, std::initializer_list<std::uint32_t> ps) {
  std::vector<std::uint32_t> v(ps);
  return v[rng() % v.size()];
}

std::string show(const W2Element& x) { return "(" + x.w0.to_string() + ", " + x.w1.to_string() + ")"; }

}  // namespace

Outcome w2_ring_axioms(std::size_t cases, std::uint64_t seed) {
  Outcome out{"W2 ring axioms vs ghost components"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::uint32_t p = pick_prime(rng, {2, 2, 3, 3, 5, 7});
    RingPtr r = ring_for(p, 2 + rng() % 2);
    const int e = p == 7 ? 2 : 3;
    auto rnd = [&] {
      return W2Element{oracle::random_poly(r, rng, rng() % 4, e), oracle::random_poly(r, rng, rng() % 4, e)};
    };
    W2Element x = rnd(), y = rnd(), z = rnd();
    ++out.cases;
    if (!(w2_add(x, y) == oracle::ghost_add(x, y))) out.fail("sum of " + show(x) + " and " + show(y));
    if (!(w2_mul(x, y) == oracle::ghost_mul(x, y))) out.fail("product of " + show(x) + " and " + show(y));
    if (!(w2_neg(x) == oracle::ghost_neg(x))) out.fail("negation of " + show(x));
    if (!(w2_add(w2_add(x, y), z) == w2_add(x, w2_add(y, z)))) out.fail("associativity of +");
    if (!(w2_mul(w2_mul(x, y), z) == w2_mul(x, w2_mul(y, z)))) out.fail("associativity of *");
    if (!(w2_add(x, y) == w2_add(y, x)) || !(w2_mul(x, y) == w2_mul(y, x))) out.fail("commutativity");
    if (!(w2_mul(x, w2_add(y, z)) == w2_add(w2_mul(x, y), w2_mul(x, z)))) out.fail("distributivity at " + show(x));
    const W2Element zero{Polynomial(r), Polynomial(r)};
    if (!(w2_add(x, w2_neg(x)) == zero) || !(w2_sub(x, x) == zero)) out.fail("additive inverse of " + show(x));
    if (!(w2_mul(x, W2Element::lift(Polynomial::constant(r, 1))) == x)) out.fail("unit");
  }
  return out;
}

Outcome delta1_identity(std::size_t cases, std::uint64_t seed) {
  Outcome out{"Delta_1 defining identity"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::uint32_t p = pick_prime(rng, {2, 2, 3, 3, 5, 7});
    RingPtr r = ring_for(p, 2 + rng() % 2);
    Polynomial a = oracle::random_poly(r, rng, 1 + rng() % (p == 7 ? 4 : 6), 3);
    ++out.cases;
    const Polynomial d = delta1(a);
    W2Element rhs = W2Element::lift(a);
    for (const Term& t : a.terms()) rhs = w2_sub(rhs, W2Element::lift(Polynomial::monomial(r, t.mono, t.coeff)));
    if (!(rhs == W2Element::shift(d))) out.fail("W2 identity for " + a.to_string());
    if (!(d == oracle::delta1_ghost(a))) out.fail("ghost oracle for " + a.to_string());
    if (a.size() <= 4 && !(d == oracle::delta1_multinomial(a))) out.fail("multinomial oracle for " + a.to_string());
    // Grouping on all variables is the plain decomposition.
    if (!(delta1_grouped(a, r->nvars()) == d)) out.fail("full grouping for " + a.to_string());
    // Grouping on the first variable: each group lifted whole.
    std::map<int, Polynomial> groups;
    for (const Term& t : a.terms()) {
      auto it = groups.try_emplace(t.mono[0], Polynomial(r)).first;
      it->second += Polynomial::monomial(r, t.mono, t.coeff);
    }
    W2Element grhs = W2Element::lift(a);
    for (const auto& [e, g] : groups) grhs = w2_sub(grhs, W2Element::lift(g));
    if (!(grhs == W2Element::shift(delta1_grouped(a, 1)))) out.fail("grouped identity for " + a.to_string());
  }
  return out;
}

Outcome frobenius_round_trip(std::size_t cases, std::uint64_t seed) {
  Outcome out{"Frobenius decomposition round trip"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::uint32_t p = pick_prime(rng, {2, 3, 5});
    RingPtr r = ring_for(p, 1 + rng() % 4);
    Polynomial h = oracle::random_poly(r, rng, rng() % 10, 2 * static_cast<int>(p) + 1);
    ++out.cases;
    FrobCoordinates v = frobenius_decompose(h);
    if (!(reconstruct(v) == h)) out.fail("reconstruct(decompose(h)) for " + h.to_string());
    for (const auto& [alpha, comp] : v.components()) {
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0 || alpha[i] >= static_cast<int>(p)) out.fail("residue out of range");
      }
      if (comp.is_zero()) out.fail("stored zero component");
    }
    if (!(v.component(top_residue(*r)) == u_map(h))) out.fail("u is the top component for " + h.to_string());
    Polynomial s = oracle::random_poly(r, rng, 1 + rng() % 3, 2);
    if (!(u_map(frobenius_power(s) * h) == s * u_map(h))) out.fail("u is S-linear");
    Polynomial b = oracle::random_poly(r, rng, 1 + rng() % 5, 2 * static_cast<int>(p));
    if (!(u_of_product(h, b) == u_map(h * b))) out.fail("u_of_product for " + h.to_string());
    ThetaMap tmap(b);
    if (!(tmap.apply(v) == qfsplit::theta(h, b))) out.fail("ThetaMap on coordinates");
    if (!(qfsplit::theta(h, b) == u_map(b * h))) out.fail("theta definition");
  }
  return out;
}

Outcome capped_product(std::size_t cases, std::uint64_t seed) {
  Outcome out{"capped vs full products"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::uint32_t p = pick_prime(rng, {2, 3, 5, 101});
    const std::size_t n = 1 + rng() % 3;
    RingPtr r = ring_for(p, n);
    Polynomial a = oracle::random_poly(r, rng, 1 + rng() % 8, 5);
    Polynomial b = oracle::random_poly(r, rng, 1 + rng() % 8, 5);
    Monomial cap(n), floor(n);
    for (std::size_t i = 0; i < n; ++i) cap.set(i, static_cast<int>(rng() % 9));
    ++out.cases;
    if (!(capped_multiply(a, b, cap) == box_filter(oracle::naive_multiply(a, b), floor, cap))) {
      out.fail("capped product of " + a.to_string() + " and " + b.to_string());
    }
    const unsigned e = 1 + rng() % 4;
    Polynomial full = Polynomial::constant(r, 1);
    for (unsigned k = 0; k < e; ++k) full = oracle::naive_multiply(full, a);
    if (!(capped_power(a, e, cap) == box_filter(full, floor, cap))) out.fail("capped power of " + a.to_string());
  }
  return out;
}

Outcome groebner_postcondition(std::size_t cases, std::uint64_t seed) {
  Outcome out{"Groebner bases vs linear algebra"};
  std::mt19937_64 rng(seed);
  GbOptions checked = gb_defaults();
  checked.verify_postcondition = true;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::uint32_t p = pick_prime(rng, {2, 3, 7});
    const std::size_t n = 3;
    RingPtr r = ring_for(p, n);
    std::vector<Polynomial> gens;
    const std::size_t k = 2 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(oracle::random_form(r, rng, 2 + rng() % 3, 2 + rng() % 2));
    ++out.cases;
    GroebnerBasis gb;
    try {
      gb = buchberger(r, gens, MonomialOrder::grevlex(), checked);
    } catch (const std::logic_error& e) {
      out.fail(e.what());
      continue;
    }
    for (const Polynomial& g : gens) {
      if (!normal_form(g, gb).is_zero()) out.fail("generator does not reduce to zero");
    }
    for (const Polynomial& g : gb.elements) {
      if (!oracle::homogeneous_member(g, gens)) out.fail("basis element outside the ideal: " + g.to_string());
    }
    Ideal ideal(r, gens);
    for (int t = 0; t < 4; ++t) {
      const int d = 3 + static_cast<int>(rng() % 2);
      Polynomial b = oracle::random_form(r, rng, 1 + rng() % 4, d);
      if (ideal.contains(b) != oracle::homogeneous_member(b, gens)) out.fail("membership of " + b.to_string());
      Polynomial combo(r);
      for (const Polynomial& g : gens) {
        if (g.degree() <= d) combo += g * oracle::random_form(r, rng, 2, d - static_cast<int>(g.degree()));
      }
      if (!ideal.contains(combo)) out.fail("combination not recognized: " + combo.to_string());
    }
  }
  return out;
}

std::vector<CyItem> cy_corpus() {
  std::vector<CyItem> out;
  std::mt19937_64 rng(20240917);
  auto add = [&](std::uint32_t p, std::size_t n, const std::string& text) {
    RingPtr r = ring_for(p, n);
    out.push_back({r, parse_polynomial(text, r)});
  };
  auto add_random = [&](std::uint32_t p, std::size_t n, std::size_t count, std::size_t terms) {
    RingPtr r = ring_for(p, n);
    for (std::size_t i = 0; i < count; ++i) {
      Polynomial f(r);
      while (f.is_zero()) {
        f = terms ? oracle::random_form(r, rng, terms, static_cast<int>(n))
                  : oracle::random_dense_form(r, rng, static_cast<int>(n));
      }
      out.push_back({r, f});
    }
  };
  add(2, 3, "x^3+y^3+z^3");
  add(2, 3, "x^3+y^3+z^3+x*y*z");
  add_random(2, 3, 8, 0);
  add(3, 3, "x^3+y^3+z^3");
  add_random(3, 3, 6, 0);
  add_random(5, 3, 3, 0);
  add_random(7, 3, 2, 0);
  add(2, 4, "x^4+y^4+z^4+w^4");
  add(2, 4, "x^3*y+y^3*z+z^3*w+w^3*x");
  add_random(2, 4, 3, 6);
  add_random(3, 4, 3, 6);
  return out;
}

Outcome route_agreement(const std::vector<CyItem>& corpus, unsigned n_max) {
  Outcome out{"graded vs local route"};
  for (const CyItem& item : corpus) {
    Problem problem(item.ring, {item.f});
    ++out.cases;
    const HeightResult graded = height_graded_cy(problem, Grading::standard(item.ring->nvars()), n_max);
    LocalOptions lo;
    lo.n_max = n_max;
    lo.extract_chain = false;
    const HeightResult local = height_local(problem, lo);
    const bool gf = graded.verdict == Verdict::Finite, lf = local.verdict == Verdict::Finite;
    if (gf != lf || (gf && graded.n != local.n)) {
      out.fail("p=" + std::to_string(problem.p()) + " " + item.f.to_string() + ": graded " + describe(graded) +
               ", local " + describe(local));
    }
  }
  return out;
}

std::optional<unsigned> height_value(const HeightResult& r) {
  if (r.verdict == Verdict::Finite) return r.n;
  if (r.verdict == Verdict::Infinite) return kInfiniteHeight;
  return std::nullopt;
}

Outcome coefficient_shortcut(const std::vector<CyItem>& corpus, unsigned max_level) {
  Outcome out{"coefficient shortcut"};
  for (const CyItem& item : corpus) {
    Problem problem(item.ring, {item.f});
    const std::uint32_t p = problem.p();
    const HeightResult graded = height_graded_cy(problem, Grading::standard(item.ring->nvars()), max_level);
    const unsigned top = graded.verdict == Verdict::Finite ? graded.n : max_level;
    // Large levels blow up at p > 2; the first two are enough there.
    const unsigned levels = std::min(top, p == 2 ? max_level : 2u);
    ++out.cases;
    for (unsigned n = 1; n <= levels; ++n) {
      const Polynomial fn = cy_chain_polynomial(item.f, n, false);
      const Polynomial pruned = cy_chain_polynomial(item.f, n, true);
      std::uint64_t q = 1;
      for (unsigned i = 0; i < n; ++i) q *= p;
      const Monomial target = uniform_monomial(item.ring->nvars(), static_cast<int>(q - 1));
      const Coeff c = coefficient_of(fn, target);
      if (in_max_ideal_frobenius_power(fn, n) != (c == 0)) {
        out.fail("level " + std::to_string(n) + " of " + item.f.to_string());
      }
      if (coefficient_of(pruned, target) != c) out.fail("pruned coefficient at level " + std::to_string(n));
      const bool expect_nonzero = graded.verdict == Verdict::Finite && n == graded.n;
      if ((c != 0) != expect_nonzero) out.fail("graded route disagrees at level " + std::to_string(n));
    }
  }
  return out;
}

namespace {

/// f with x_last replaced by sum c_i x_i, as a form in the other variables.
Polynomial hyperplane_section(const Polynomial& f, const RingPtr& target, const std::vector<Coeff>& c) {
  const std::size_t n = target->nvars();
  std::vector<Term> lin;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m.set(i, 1);
    lin.push_back({m, c[i]});
  }
  const Polynomial l = Polynomial::from_terms(target, lin);
  Polynomial out(target);
  for (const Term& t : f.terms()) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, t.mono[i]);
    out += Polynomial::monomial(target, m, t.coeff) * power(l, static_cast<std::uint64_t>(t.mono[n]));
  }
  return out;
}

}  // namespace

Outcome inversion_of_adjunction(std::size_t cases, std::uint64_t seed) {
  Outcome out{"inversion of adjunction sampling"};
  std::mt19937_64 rng(seed);
  RingPtr big = ring_for(2, 4);
  RingPtr small = ring_for(2, 3);
  std::size_t attempts = 0;
  while (out.cases < cases && attempts++ < 50 * cases) {
    const Polynomial f = oracle::random_dense_form(big, rng, 3);
    std::vector<Coeff> c{static_cast<Coeff>(rng() % 2), static_cast<Coeff>(rng() % 2), static_cast<Coeff>(rng() % 2)};
    const Polynomial g = hyperplane_section(f, small, c);
    if (f.is_zero() || g.is_zero()) continue;
    const auto hx = height_value(height(Problem(big, {f})));
    const auto hy = height_value(height(Problem(small, {g})));
    ++out.cases;
    if (!hx || !hy) {
      out.fail("undecided height for " + f.to_string());
    } else if (*hy < *hx) {
      out.fail("section of " + f.to_string() + " has height " + std::to_string(*hy) + " < " + std::to_string(*hx));
    }
  }
  return out;
}

bool smooth_over_closure(const Polynomial& f) {
  const RingPtr& r = f.ring_ptr();
  std::vector<Polynomial> gens{f};
  for (std::size_t i = 0; i < r->nvars(); ++i) gens.push_back(derivative(f, i));
  const GroebnerBasis gb = Ideal(r, gens).groebner();
  for (std::size_t i = 0; i < r->nvars(); ++i) {
    bool pure = false;
    for (const Polynomial& g : gb.elements) {
      const Monomial& m = g.leading_term().mono;
      if (m[i] > 0 && m.degree() == m[i]) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

Outcome elliptic_oracle(std::uint32_t p, std::size_t samples, std::uint64_t seed) {
  Outcome out{"elliptic curves over F_" + std::to_string(p)};
  std::mt19937_64 rng(seed);
  RingPtr r = ring_for(p, 3);
  std::size_t attempts = 0;
  while (out.cases < samples && attempts++ < 100 * samples) {
    const Polynomial f = oracle::random_dense_form(r, rng, 3);
    if (f.is_zero() || !smooth_over_closure(f)) continue;
    const std::uint64_t points = oracle::projective_point_count(f);
    const bool supersingular = points % p == 1 % p;
    const HeightResult res = height(Problem(r, {f}));
    ++out.cases;
    const unsigned want = supersingular ? 2 : 1;
    if (res.verdict != Verdict::Finite || res.n != want) {
      out.fail(f.to_string() + " with " + std::to_string(points) + " points: " + describe(res));
    }
  }
  return out;
}

Outcome strata_consistency(std::size_t samples, std::uint64_t seed) {
  Outcome out{"strata consistency"};
  FamilyContext ctx(2, 3);
  const StrataPolynomials s = strata_polynomials(ctx, 3);
  const RingPtr& fr = ctx.family_ring();
  const std::size_t nx = 3;

  if (s.b.size() != 2) out.fail("expected b_1, b_2");
  const auto xyz = ctx.index_of(Monomial{1, 1, 1});
  if (!xyz || !(s.b.at(0) == Polynomial::variable(fr, nx + *xyz))) out.fail("b_1 is not a_xyz");
  for (std::size_t i = 0; i < s.b.size(); ++i) {
    const Polynomial& b = s.b[i];
    for (const Term& t : b.terms()) {
      int dx = 0;
      for (std::size_t k = 0; k < nx; ++k) dx += t.mono[k];
      if (dx != 0 || t.mono.degree() != (1 << (i + 1)) - 1) out.fail("b_" + std::to_string(i + 1) + " has a bad degree");
    }
  }

  // b_2 against the uncapped coefficient of (xyz)^3 in G * D(G), where D(G)
  // is the pairwise-product formula for p = 2.
  {
    const Polynomial& g = ctx.generic();
    std::vector<Polynomial> parts;
    for (const Term& t : g.terms()) parts.push_back(Polynomial::monomial(fr, t.mono, t.coeff));
    Polynomial d(fr);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) d += oracle::naive_multiply(parts[i], parts[j]);
    }
    const Polynomial g2 = oracle::naive_multiply(g, d);
    std::vector<Term> coeff;
    for (const Term& t : g2.terms()) {
      if (t.mono[0] == 3 && t.mono[1] == 3 && t.mono[2] == 3) coeff.push_back(t);
    }
    Polynomial b2(fr);
    for (const Term& t : coeff) {
      Monomial m = t.mono;
      for (std::size_t k = 0; k < nx; ++k) m.set(k, 0);
      b2 += Polynomial::monomial(fr, m, t.coeff);
    }
    if (s.b.size() > 1 && !(b2 == s.b[1])) out.fail("b_2 differs from the uncapped expansion");
  }

  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < samples; ++c) {
    std::vector<Coeff> pt(ctx.size());
    for (Coeff& v : pt) v = static_cast<Coeff>(rng() % 2);
    const Polynomial f = ctx.member(pt);
    ++out.cases;
    if (f.is_zero()) continue;
    const StrataProfile prof = specialize(ctx, s, pt);
    const HeightResult direct = height_graded_cy(Problem(ctx.base_ring(), {f}), Grading::standard(3), 4);
    if (prof.exact) {
      if (direct.verdict != Verdict::Finite || direct.n != prof.at_least) {
        out.fail("point " + f.to_string() + ": strata say " + std::to_string(prof.at_least) + ", direct " +
                 describe(direct));
      }
    } else if (direct.verdict == Verdict::Finite && direct.n < prof.at_least) {
      out.fail("point " + f.to_string() + " below its stratum");
    }
    // Each value is the target coefficient of the specialized f_i.
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
      const unsigned level = static_cast<unsigned>(i + 1);
      const Polynomial fi = cy_chain_polynomial(f, level, false);
      const Coeff want = coefficient_of(fi, uniform_monomial(3, (1 << level) - 1));
      if (prof.values[i] != want) out.fail("specialization of b_" + std::to_string(level) + " at " + f.to_string());
    }
    // Nesting: a point in the stratum for h+1 lies in the one for h.
    for (std::size_t k = 1; k <= s.b.size(); ++k) {
      StrataPolynomials prefix{std::vector<Polynomial>(s.b.begin(), s.b.begin() + k)};
      const StrataProfile pk = specialize(ctx, prefix, pt);
      if (pk.at_least > prof.at_least || (k < s.b.size() && pk.at_least < std::min<unsigned>(prof.at_least, k + 1))) {
        out.fail("nesting at " + f.to_string());
      }
    }
  }
  return out;
}

}  // namespace props
