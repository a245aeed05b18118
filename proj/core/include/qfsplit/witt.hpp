#pragma once

#include "qfsplit/polynomial.hpp"

#include <span>

namespace qfsplit {

/// Length-2 Witt vector (w0, w1) over a polynomial ring of characteristic p.
struct W2Element {
  Polynomial w0;
  Polynomial w1;

  /// Teichmueller-style lift (a, 0).
  static W2Element lift(const Polynomial& a);
  /// Verschiebung image (0, b).
  static W2Element shift(const Polynomial& b);

  bool operator==(const W2Element& other) const = default;
};

/// (1/p) * binomial(p, i) reduced mod p, for 0 < i < p.
Coeff witt_carry_coefficient(const PrimeField& field, std::uint32_t i);

W2Element w2_add(const W2Element& x, const W2Element& y);
W2Element w2_neg(const W2Element& x);
W2Element w2_sub(const W2Element& x, const W2Element& y);
W2Element w2_mul(const W2Element& x, const W2Element& y);

/// The defect D with (sum t_i, 0) - sum (t_i, 0) = (0, D) in W_2, computed by
/// folding the parts into a running W_2 sum.
Polynomial witt_sum_defect(std::span<const Polynomial> parts);

/// Delta_1 of the monomial decomposition a = sum c_j M_j, each c_j M_j lifted
/// as one Teichmueller element.
Polynomial delta1(const Polynomial& a);

/// Delta_1 relative to the first `leading_vars` variables: terms are grouped
/// by their exponents in those variables, and each group h_i * H_i (h_i in
/// the remaining variables) is lifted as one element. Evaluating the trailing
/// variables at field values commutes with this operator.
Polynomial delta1_grouped(const Polynomial& a, std::size_t leading_vars);

}  // namespace qfsplit
