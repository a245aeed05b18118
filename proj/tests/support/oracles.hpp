#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the Witt, Frobenius or Groebner code under test.

#include "qfsplit/polynomial.hpp"
#include "qfsplit/witt.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <random>
#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;
using qfsplit::Polynomial;
using qfsplit::RingPtr;

/// Polynomial over Z with exact coefficients, keyed by exponent vector.
struct IntPoly {
  std::size_t nvars = 0;
  std::map<std::vector<int>, cpp_int> terms;

  static IntPoly lift(const Polynomial& a);
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scaled(const cpp_int& c) const;
  IntPoly pow(unsigned e) const;
  /// Exact division of every coefficient; throws std::logic_error if inexact.
  IntPoly divided_by(const cpp_int& d) const;
  Polynomial reduce(const RingPtr& ring) const;
};

/// W_2 sum, product and negation through ghost components over Z: lift,
/// combine w_0 = x_0, w_1 = x_0^p + p x_1, and solve back.
qfsplit::W2Element ghost_add(const qfsplit::W2Element& x, const qfsplit::W2Element& y);
qfsplit::W2Element ghost_mul(const qfsplit::W2Element& x, const qfsplit::W2Element& y);
qfsplit::W2Element ghost_neg(const qfsplit::W2Element& x);

/// ((sum of lifted terms)^p - sum of (lifted term)^p) / p mod p.
Polynomial delta1_ghost(const Polynomial& a);
/// Sum over compositions alpha of p into at most p-1 per term of
/// (p! / prod alpha_j!) / p * prod (c_j M_j)^alpha_j. Intended for few terms.
Polynomial delta1_multinomial(const Polynomial& a);

/// Schoolbook product with an ordered map.
Polynomial naive_multiply(const Polynomial& a, const Polynomial& b);

/// Homogeneous membership by linear algebra: a (homogeneous of degree d) lies
/// in the ideal of homogeneous generators iff it is in the span of all
/// m * g with deg(m) + deg(g) = d.
bool homogeneous_member(const Polynomial& a, const std::vector<Polynomial>& gens);

/// Rank of a matrix over F_p (rows are copied).
std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

/// All monomials of total degree d in n variables.
std::vector<qfsplit::Monomial> monomials_of_degree(std::size_t n, int d);

/// Number of F_p-points of the projective zero set of a form.
std::uint64_t projective_point_count(const Polynomial& f);

/// Random polynomial with up to `terms` terms, each exponent <= max_exp.
Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, std::size_t terms, int max_exp);
/// Random form of degree d with the given number of terms (at most).
Polynomial random_form(const RingPtr& ring, std::mt19937_64& rng, std::size_t terms, int d);
/// Random form with every coefficient drawn uniformly (possibly zero).
Polynomial random_dense_form(const RingPtr& ring, std::mt19937_64& rng, int d);

}  // namespace oracle
