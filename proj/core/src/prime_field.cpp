#include "qfsplit/prime_field.hpp"

namespace qfsplit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 0x7fffffffu || !is_prime(p)) {
    throw InputError("characteristic " + std::to_string(p) +
                     " is not a prime in [2, 2^31-1]");
  }
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const {
  Coeff result = 1 % p_;
  Coeff base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p_ - 2);
}

Coeff PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

std::int64_t PrimeField::to_signed(Coeff a) const {
  return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
}

}  // namespace qfsplit
