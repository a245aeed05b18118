#include <doctest.h>

#include "oracles.hpp"

#include "qfsplit/polynomial.hpp"

#include <random>

using namespace qfsplit;

namespace {

Polynomial P(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

}  // namespace

TEST_SUITE("field_poly_core") {

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(PrimeField(4), InputError);

  PrimeField f(7);
  for (Coeff a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_int(-15) == 6);
  CHECK(f.to_signed(6) == -1);
  CHECK(f.pow(3, 6) == 1);

  PrimeField big(2147483647);
  CHECK(big.mul(2147483646, 2147483646) == 1);
  CHECK(big.add(2147483646, 2147483646) == 2147483645);
}

TEST_CASE("grevlex order") {
  // x > y > z; ties in degree go to the smaller power of the last variable.
  CHECK(grevlex_compare(Monomial{1, 0, 0}, Monomial{0, 1, 0}) > 0);
  CHECK(grevlex_compare(Monomial{0, 2, 0}, Monomial{1, 0, 1}) > 0);
  CHECK(grevlex_compare(Monomial{2, 0, 0}, Monomial{0, 0, 3}) < 0);
  CHECK(grevlex_compare(Monomial{1, 1, 1}, Monomial{1, 1, 1}) == 0);
  auto lex = MonomialOrder::lex();
  CHECK(lex.compare(Monomial{1, 0, 0}, Monomial{0, 5, 5}) > 0);
  auto elim = MonomialOrder::eliminate_last(1);
  CHECK(elim.compare(Monomial{0, 0, 1}, Monomial{9, 9, 0}) > 0);
}

TEST_CASE("monomial guards") {
  Monomial m{1, 2, 3};
  CHECK(m.degree() == 6);
  CHECK(m.divides(Monomial{1, 3, 3}));
  CHECK_FALSE(m.divides(Monomial{0, 3, 3}));
  CHECK(lcm(Monomial{1, 0, 2}, Monomial{0, 3, 1}) == Monomial{1, 3, 2});
  CHECK(coprime(Monomial{1, 0, 0}, Monomial{0, 1, 1}));
  CHECK_THROWS_AS(Monomial({2000000000, 0}).pow(2), std::overflow_error);
  CHECK_THROWS_AS(Monomial({-1, 0}), std::invalid_argument);
}

TEST_CASE("parsing and printing") {
  auto r = make_ring(5, {"x", "y", "z"});
  Polynomial a = P("(x+y)^2 - 3*x*y + 2", r);
  CHECK(a == P("x^2 - x*y + y^2 + 2", r));
  CHECK(a.to_string() == "x^2+4*x*y+y^2+2");
  CHECK(P(a.to_string(), r) == a);
  CHECK(P("-x", r) == P("4*x", r));
  CHECK(P("5*x + 1", r) == P("1", r));
  CHECK(P("0", r).is_zero());

  try {
    P("x + * y", r);
    FAIL("no parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(P("x + t", r), ParseError);
  CHECK_THROWS_AS(P("x^", r), ParseError);
  CHECK_THROWS_AS(P("(x + y", r), ParseError);
  CHECK_THROWS_AS(make_ring(5, {"x", "x"}), InputError);
  CHECK_THROWS_AS(make_ring(6, {"x"}), InputError);
}

TEST_CASE("multiplication matches schoolbook") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 7u, 65521u}) {
    auto r = make_ring(p, {"x", "y", "z", "w"});
    for (int i = 0; i < 25; ++i) {
      Polynomial a = oracle::random_poly(r, rng, 1 + rng() % 12, 5);
      Polynomial b = oracle::random_poly(r, rng, 1 + rng() % 12, 5);
      CHECK(a * b == oracle::naive_multiply(a, b));
      CHECK(a * b == b * a);
      CHECK((a + b) - b == a);
    }
  }
}

TEST_CASE("powers and Frobenius") {
  std::mt19937_64 rng(12);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
      Polynomial a = oracle::random_poly(r, rng, 1 + rng() % 5, 3);
      Polynomial repeated = Polynomial::constant(r, 1);
      for (std::uint32_t k = 0; k < p; ++k) repeated = oracle::naive_multiply(repeated, a);
      CHECK(power(a, p) == repeated);
      CHECK(frobenius_power(a) == repeated);
      CHECK(frobenius_power(a, 2) == power(repeated, p));
    }
  }
}

TEST_CASE("derivative, evaluation and substitution") {
  std::mt19937_64 rng(13);
  auto r = make_ring(7, {"x", "y", "z"});
  for (int i = 0; i < 20; ++i) {
    Polynomial a = oracle::random_poly(r, rng, 6, 4);
    Polynomial b = oracle::random_poly(r, rng, 6, 4);
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK(derivative(a * b, v) == derivative(a, v) * b + a * derivative(b, v));
    }
    std::vector<Coeff> pt{static_cast<Coeff>(rng() % 7), static_cast<Coeff>(rng() % 7), static_cast<Coeff>(rng() % 7)};
    CHECK(evaluate(a * b, pt) == r->field.mul(evaluate(a, pt), evaluate(b, pt)));
    std::vector<std::size_t> idx{0, 2};
    std::vector<Coeff> vals{pt[0], pt[2]};
    Polynomial s = substitute(a, idx, vals);
    CHECK(s.max_exponents()[0] == 0);
    CHECK(evaluate(s, pt) == evaluate(a, pt));
  }
  CHECK(derivative(P("x^7 + x*y", r), 0) == P("y", r));
}

TEST_CASE("capped products") {
  auto r = make_ring(2, {"x", "y"});
  Polynomial a = P("x^3 + x*y + y^2", r);
  Monomial cap{3, 3};
  Polynomial full = a * a;
  CHECK(capped_multiply(a, a, cap) == box_filter(full, Monomial{0, 0}, cap));
  CHECK(capped_power(a, 3, cap) == box_filter(power(a, 3), Monomial{0, 0}, cap));
  CHECK(coefficient_of(full, Monomial{2, 2}) == 1);
}

TEST_CASE("gradings and homogeneity") {
  auto r = make_ring(2, {"x", "y", "z", "w"});
  Grading g({{1, 1, 1, 2}});
  Homogeneity h = check_homogeneous(P("w^2+x^2*y*z+x*y^2*z+x*y*z^2", r), g);
  CHECK(h.homogeneous);
  CHECK(h.degree == std::vector<std::int64_t>{4});
  CHECK(g.variable_degree_sum() == std::vector<std::int64_t>{5});
  Homogeneity bad = check_homogeneous(P("w + x^2 + y", r), g);
  CHECK_FALSE(bad.homogeneous);
  CHECK(bad.offending.has_value());
  CHECK_THROWS_AS(Grading({{1, 0}, {0, 0}}), InputError);
  Grading bi({{1, 1, 0, 0}, {0, 0, 1, 1}});
  CHECK(check_homogeneous(P("x*z^2 + y*w^2", r), bi).degree == std::vector<std::int64_t>{1, 2});
}

}  // TEST_SUITE
