#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>

namespace qfsplit {

/// Exponent vector x_1^{e_1} ... x_N^{e_N}. The total degree is cached.
/// All arithmetic is overflow-checked against the 32-bit exponent range.
class Monomial {
 public:
  using Exponent = std::int32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps);
  explicit Monomial(std::span<const Exponent> exps);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const { return {exps_.data(), exps_.size()}; }
  std::int64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, Exponent e);

  /// Bit i set iff x_i (i < 64) occurs; cheap divisibility pre-check.
  std::uint64_t support_mask() const;

  bool divides(const Monomial& other) const;
  /// Exact quotient; the caller guarantees divisibility.
  Monomial quotient(const Monomial& divisor) const;
  Monomial pow(std::uint64_t e) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

  std::size_t hash() const;

 private:
  boost::container::small_vector<Exponent, 8> exps_;
  std::int64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Monomial orders used by the Groebner engine. Grevlex is the canonical
/// order for storage and printing; the elimination order compares the last
/// `block` variables first (grevlex on that block) and breaks ties by grevlex
/// on the remaining variables.
class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, EliminateLast };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder eliminate_last(std::size_t block) {
    return MonomialOrder(Kind::EliminateLast, block);
  }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool operator==(const MonomialOrder&) const = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}
  Kind kind_;
  std::size_t block_;
};

int grevlex_compare(const Monomial& a, const Monomial& b);

}  // namespace qfsplit
