#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfsplit {

using Coeff = std::uint32_t;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

/// The prime field F_p with 2 <= p <= 2^31 - 1. Elements are canonical
/// representatives in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Coeff>(s >= p_ ? s - p_ : s);
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + (p_ - b); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((std::uint64_t{a} * b) % p_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  Coeff inv(Coeff a) const;
  /// Reduces an arbitrary signed integer.
  Coeff from_int(std::int64_t v) const;
  /// Symmetric-range integer, e.g. p-1 -> -1. Used for display only.
  std::int64_t to_signed(Coeff a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

}  // namespace qfsplit
