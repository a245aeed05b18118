#pragma once

#include "qfsplit/groebner.hpp"
#include "qfsplit/polynomial.hpp"

#include <map>
#include <vector>

namespace qfsplit {

/// Lexicographic order on residue vectors, used only to key components.
struct ResidueLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                        b.exponents().begin(), b.exponents().end());
  }
};

/// Coordinates of F_*h in the basis F_*(x^alpha), 0 <= alpha_i <= p-1:
/// h = sum_alpha (h_alpha)^p x^alpha. Only nonzero components are stored.
/// The same shape serves as an element of the free S-module of rank p^N.
class FrobCoordinates {
 public:
  using Map = std::map<Monomial, Polynomial, ResidueLess>;

  explicit FrobCoordinates(RingPtr ring) : ring_(std::move(ring)) {}

  const RingPtr& ring_ptr() const { return ring_; }
  const Map& components() const { return comps_; }
  /// Zero when absent.
  Polynomial component(const Monomial& alpha) const;
  void add(const Monomial& alpha, const Polynomial& h);
  bool is_zero() const { return comps_.empty(); }
  std::size_t size() const { return comps_.size(); }

  /// S-module action: every component multiplied by s.
  FrobCoordinates times(const Polynomial& s) const;
  FrobCoordinates& operator+=(const FrobCoordinates& other);
  FrobCoordinates& operator-=(const FrobCoordinates& other);
  bool operator==(const FrobCoordinates& other) const;

 private:
  RingPtr ring_;
  Map comps_;
};

using FreeModuleVector = FrobCoordinates;

/// The residue (p-1, ..., p-1) indexing the u-component.
Monomial top_residue(const Ring& ring);

FrobCoordinates frobenius_decompose(const Polynomial& h);
/// sum_alpha h_alpha^p x^alpha.
Polynomial reconstruct(const FrobCoordinates& v);

/// u(F_*h): the coefficient of F_*((x_1...x_N)^(p-1)).
Polynomial u_map(const Polynomial& h);
/// u applied r times (r >= 1).
Polynomial iterated_u(const Polynomial& h, unsigned r);
/// u(F_*(a b)) without forming the full product.
Polynomial u_of_product(const Polynomial& a, const Polynomial& b);

/// theta(F_*a) = u(F_*(delta a)) with delta = Delta_1(f^(p-1)).
Polynomial theta(const Polynomial& a, const Polynomial& delta);

/// theta as an S-linear map on the free module: precomputes
/// theta(F_*x^alpha) = delta_(top - alpha) for every residue alpha.
class ThetaMap {
 public:
  explicit ThetaMap(Polynomial delta);

  const Polynomial& delta() const { return delta_; }
  /// theta(F_*x^alpha).
  Polynomial on_basis(const Monomial& alpha) const;
  Polynomial apply(const FrobCoordinates& v) const;
  Polynomial apply(const Polynomial& a) const { return theta(a, delta_); }

 private:
  Polynomial delta_;
  FrobCoordinates coords_;
  Monomial top_;
};

/// I^[p^n], generated by the p^n-th powers of the generators.
Ideal bracket_power(const Ideal& ideal, unsigned n);

/// Whether a lies in m^[p^n] = (x_1^(p^n), ..., x_N^(p^n)): every term needs
/// some exponent >= p^n.
bool in_max_ideal_frobenius_power(const Polynomial& a, unsigned n);
/// The first term of a outside m^[p^n], if any.
std::optional<Term> term_outside_frobenius_power(const Polynomial& a, unsigned n);

/// Input to the two-step splitting evaluator: [a] or V[a].
struct WittInput {
  enum class Kind { Teichmuller, Verschiebung };
  Kind kind;
  Polynomial a;
};

/// psi(F_*[a]) = u(F_*(f1 a)) + u^2(F^2_*(f2 Delta_1(a)));
/// psi(F_*V[a]) = u^2(F^2_*(f2 a)).
Polynomial psi2_eval(const Polynomial& f1, const Polynomial& f2, const WittInput& elem);

}  // namespace qfsplit
