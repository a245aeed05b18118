#pragma once

#include "qfsplit/monomial.hpp"
#include "qfsplit/prime_field.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfsplit {

/// Coefficient field plus ordered variable names.
struct Ring {
  PrimeField field;
  std::vector<std::string> variables;

  std::size_t nvars() const { return variables.size(); }
  std::uint32_t characteristic() const { return field.characteristic(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Ring&) const = default;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Validates names (non-empty identifiers, no duplicates) and the prime.
RingPtr make_ring(std::uint32_t p, std::vector<std::string> variables);

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Sparse polynomial over F_p. Terms are kept sorted descending in grevlex
/// with no zero coefficients, so equal polynomials have identical term lists.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, Coeff c);
  static Polynomial monomial(RingPtr ring, Monomial m, Coeff c = 1);
  static Polynomial variable(RingPtr ring, std::size_t index);
  /// Combines like terms and drops zeros; input order is irrelevant.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  /// Trusted constructor: terms already canonical (sorted, unique, nonzero).
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const PrimeField& field() const { return ring_->field; }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading_term() const { return terms_.front(); }
  /// Total degree; -1 for the zero polynomial.
  std::int64_t degree() const;
  /// Largest exponent of each variable across all terms.
  Monomial max_exponents() const;

  Coeff coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(Coeff c) const;
  Polynomial times_term(const Monomial& m, Coeff c) const;

  bool operator==(const Polynomial& other) const;

  /// Canonical text: grevlex-sorted terms, explicit '*' and '^'.
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);
Polynomial power(const Polynomial& a, std::uint64_t e);
/// Product with every term whose exponent in some variable exceeds `cap`
/// discarded. Sound for any query about monomials below the cap.
Polynomial capped_multiply(const Polynomial& a, const Polynomial& b, const Monomial& cap);
Polynomial capped_power(const Polynomial& a, std::uint64_t e, const Monomial& cap);
/// Keeps only terms inside the box floor <= exponent <= cap (componentwise).
Polynomial box_filter(const Polynomial& a, const Monomial& floor, const Monomial& cap);
Coeff coefficient_of(const Polynomial& a, const Monomial& m);
/// a^(p^k): exponents scale by p^k, coefficients are fixed in F_p.
Polynomial frobenius_power(const Polynomial& a, unsigned k = 1);
/// Partial derivative with respect to variable `index`.
Polynomial derivative(const Polynomial& a, std::size_t index);
/// Value at a point of F_p^N.
Coeff evaluate(const Polynomial& a, std::span<const Coeff> point);
/// Substitutes field values for the variables listed in `indices`.
Polynomial substitute(const Polynomial& a, std::span<const std::size_t> indices, std::span<const Coeff> values);
/// Monomial whose every exponent is `e`.
Monomial uniform_monomial(std::size_t nvars, Monomial::Exponent e);

/// Z^m_{>=0}-grading by a weight matrix (one row per grading component).
class Grading {
 public:
  explicit Grading(std::vector<std::vector<std::int64_t>> rows);
  static Grading standard(std::size_t nvars);

  std::size_t components() const { return rows_.size(); }
  std::size_t nvars() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }

  std::vector<std::int64_t> degree(const Monomial& m) const;
  /// Sum of the variable degrees, i.e. the degree of x_1 ... x_N.
  std::vector<std::int64_t> variable_degree_sum() const;

 private:
  std::vector<std::vector<std::int64_t>> rows_;
};

struct Homogeneity {
  bool homogeneous = true;
  /// Common degree (empty for the zero polynomial).
  std::vector<std::int64_t> degree;
  /// First pair of terms with different degrees when inhomogeneous.
  std::optional<std::pair<Monomial, Monomial>> offending;
};

Homogeneity check_homogeneous(const Polynomial& a, const Grading& g);

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := coefficient | variable ('^' uint)? | '(' expr ')' ('^' uint)?.
/// Whitespace is ignored and a leading sign is accepted.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

std::string monomial_to_string(const Monomial& m, const Ring& ring);

}  // namespace qfsplit
