#include "qfsplit/monomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qfsplit {
namespace {

constexpr std::int64_t kMaxExponent = std::numeric_limits<Monomial::Exponent>::max();

Monomial::Exponent checked_exponent(std::int64_t v) {
  if (v < 0) throw std::invalid_argument("negative exponent");
  if (v > kMaxExponent) throw std::overflow_error("exponent overflow");
  return static_cast<Monomial::Exponent>(v);
}

// grevlex on the index range [begin, end)
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t begin,
                  std::size_t end) {
  std::int64_t da = 0;
  std::int64_t db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

Monomial::Monomial(std::initializer_list<Exponent> exps) : exps_(exps.begin(), exps.end()) {
  for (Exponent e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += e;
  }
}

Monomial::Monomial(std::span<const Exponent> exps) : exps_(exps.begin(), exps.end()) {
  for (Exponent e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += e;
  }
}

void Monomial::set(std::size_t i, Exponent e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  degree_ += static_cast<std::int64_t>(e) - exps_[i];
  exps_[i] = e;
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  const std::size_t n = std::min<std::size_t>(exps_.size(), 64);
  for (std::size_t i = 0; i < n; ++i) {
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    q.exps_[i] -= divisor.exps_[i];
  }
  q.degree_ -= divisor.degree_;
  return q;
}

Monomial Monomial::pow(std::uint64_t e) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const std::int64_t base = exps_[i];
    if (base != 0 && e > static_cast<std::uint64_t>(kMaxExponent / base)) {
      throw std::overflow_error("exponent overflow in monomial power");
    }
    r.exps_[i] = checked_exponent(base * static_cast<std::int64_t>(e));
    r.degree_ += r.exps_[i];
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    r.exps_[i] = checked_exponent(static_cast<std::int64_t>(a.exps_[i]) + b.exps_[i]);
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  r.degree_ = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
  }
  return true;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Exponent e : exps_) {
    h ^= static_cast<std::uint32_t>(e);
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Grevlex:
      return grevlex_compare(a, b);
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case Kind::EliminateLast: {
      const std::size_t n = a.size();
      const std::size_t split = n - std::min(block_, n);
      if (int c = grevlex_range(a, b, split, n); c != 0) return c;
      return grevlex_range(a, b, 0, split);
    }
  }
  return 0;
}

}  // namespace qfsplit
