#include <doctest.h>

#include "properties.hpp"

// Randomized suites at their full sizes.

namespace {

void require_ok(const props::Outcome& o) {
  INFO(o.summary());
  CHECK(o.ok());
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("W2 ring axioms") { require_ok(props::w2_ring_axioms(200, 1001)); }
TEST_CASE("Delta_1 identity") { require_ok(props::delta1_identity(300, 1002)); }
TEST_CASE("Frobenius round trip") { require_ok(props::frobenius_round_trip(500, 1003)); }
TEST_CASE("capped products") { require_ok(props::capped_product(100, 1004)); }
TEST_CASE("Groebner postcondition") { require_ok(props::groebner_postcondition(60, 1005)); }

TEST_CASE("Calabi-Yau corpus") {
  auto corpus = props::cy_corpus();
  REQUIRE(corpus.size() == 30);
  require_ok(props::route_agreement(corpus, 4));
  require_ok(props::coefficient_shortcut(corpus, 3));
}

TEST_CASE("inversion of adjunction") { require_ok(props::inversion_of_adjunction(20, 1006)); }

TEST_CASE("elliptic curves") {
  require_ok(props::elliptic_oracle(2, 25, 1007));
  require_ok(props::elliptic_oracle(3, 25, 1008));
}

}  // TEST_SUITE
