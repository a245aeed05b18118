#include <doctest.h>

#include "oracles.hpp"

#include "qfsplit/witt.hpp"

#include <random>

using namespace qfsplit;
using boost::multiprecision::cpp_int;

namespace {

Polynomial P(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

cpp_int binomial(unsigned n, unsigned k) {
  cpp_int b = 1;
  for (unsigned i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace

TEST_SUITE("witt_delta") {

TEST_CASE("carry coefficients are binomial(p, i) / p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u, 101u}) {
    PrimeField field(p);
    for (std::uint32_t i = 1; i < p; ++i) {
      cpp_int c = binomial(p, i) / p;
      CHECK(witt_carry_coefficient(field, i) == static_cast<Coeff>(c % p));
    }
  }
}

TEST_CASE("small defects by hand") {
  auto r2 = make_ring(2, {"x", "y", "z"});
  CHECK(delta1(P("x + y", r2)) == P("x*y", r2));
  CHECK(delta1(P("x + y + z", r2)) == P("x*y + x*z + y*z", r2));
  CHECK(delta1(P("x*y*z", r2)).is_zero());

  auto r3 = make_ring(3, {"x", "y"});
  // ((x + y)^3 - x^3 - y^3) / 3
  CHECK(delta1(P("x + y", r3)) == P("x^2*y + x*y^2", r3));
  // (2x)^3 = 8x^3 is one Teichmueller lift; nothing carries.
  CHECK(delta1(P("2*x", r3)).is_zero());
  // 2x + 2y lifted termwise: (8 (x+y)^3 - 8x^3 - 8y^3) / 3 = 8 (x^2 y + x y^2).
  CHECK(delta1(P("2*x + 2*y", r3)) == P("2*x^2*y + 2*x*y^2", r3));
}

TEST_CASE("negation at p = 2 carries") {
  auto r = make_ring(2, {"x"});
  W2Element a = W2Element::lift(P("x", r));
  // -[x] = (x, x^2) in W_2 over F_2, since [x] + (x, x^2) has ghost components (0, 0).
  CHECK(w2_neg(a) == W2Element{P("x", r), P("x^2", r)});
  CHECK(w2_neg(a) == oracle::ghost_neg(a));
  auto r3 = make_ring(3, {"x"});
  W2Element b = W2Element::lift(P("x", r3));
  CHECK(w2_neg(b) == W2Element{P("2*x", r3), Polynomial(r3)});
}

TEST_CASE("sum defect of several parts") {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
      std::vector<Polynomial> parts;
      Polynomial total(r);
      for (int k = 0; k < 3; ++k) {
        parts.push_back(oracle::random_poly(r, rng, 1 + rng() % 3, 3));
        total += parts.back();
      }
      W2Element rhs = W2Element::lift(total);
      for (const auto& q : parts) rhs = w2_sub(rhs, W2Element::lift(q));
      CHECK(rhs == W2Element::shift(witt_sum_defect(parts)));
    }
  }
}

TEST_CASE("grouped defect commutes with evaluating the trailing variables") {
  std::mt19937_64 rng(42);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y", "a", "b"});
    for (int i = 0; i < 20; ++i) {
      Polynomial g = oracle::random_poly(r, rng, 2 + rng() % 6, 2);
      std::vector<Coeff> vals{static_cast<Coeff>(rng() % p), static_cast<Coeff>(rng() % p)};
      std::vector<std::size_t> idx{2, 3};
      Polynomial lhs = substitute(delta1_grouped(g, 2), idx, vals);
      Polynomial rhs = delta1_grouped(substitute(g, idx, vals), 2);
      CHECK(lhs == rhs);
      // After evaluation only the x, y part is left, where grouping is the plain defect.
      CHECK(rhs == delta1(substitute(g, idx, vals)));
    }
  }
}

TEST_CASE("oracles agree on random inputs") {
  std::mt19937_64 rng(43);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto r = make_ring(p, {"x", "y"});
    for (int i = 0; i < 15; ++i) {
      Polynomial a = oracle::random_poly(r, rng, 1 + rng() % 4, 3);
      CHECK(delta1(a) == oracle::delta1_ghost(a));
      CHECK(delta1(a) == oracle::delta1_multinomial(a));
    }
  }
}

}  // TEST_SUITE
